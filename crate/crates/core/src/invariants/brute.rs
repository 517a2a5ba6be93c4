//! Direct evaluation of J̄_m over the full (r−1)^l Kirby-color multi-sum.

use super::habiro::habiro_bracket_generic;
use super::{kirby_mu, InvariantSample};
use crate::error::{Error, Result};
use crate::scalar::{pairwise_sum, Precision, Scalar};
use crate::special::QuantumLevel;
use crate::surgery::SurgeryPresentation;
use num_complex::Complex64;
use rayon::prelude::*;

/// Largest number of terms the brute-force sum will attempt.
pub const BRUTE_FORCE_BUDGET: f64 = 1.0e8;

fn check_color(m: u32, level: &QuantumLevel) -> Result<()> {
    if m == 0 || m > level.n {
        return Err(Error::Domain(format!("color m must satisfy 1 <= m <= N = {} (got {m})", level.n)));
    }
    Ok(())
}

pub(crate) fn check_budget(l: usize, level: &QuantumLevel) -> Result<()> {
    let terms = ((level.r - 1) as f64).powi(l as i32);
    if terms > BRUTE_FORCE_BUDGET {
        return Err(Error::Infeasible(format!(
            "brute force needs (r-1)^l = {}^{} = {terms:.3e} terms, budget is {BRUTE_FORCE_BUDGET:.0e}",
            level.r - 1,
            l
        )));
    }
    Ok(())
}

/// J̄_m = μ^l e^{σ(3/r+(r+1)/4)πi} Σ_{n_j=0}^{r−2} (−1)^{n_l+Σb_jn_j} t^{Σb_jn_j(n_j+2)/4}
///       · [n_1+1] Π_j [(n_j+1)(n_{j+1}+1)] · ⟨e_{m−1}, e_{n_l}⟩
pub fn rt_bruteforce_generic<T: Scalar>(pres: &SurgeryPresentation, m: u32, level: &QuantumLevel) -> Result<T> {
    check_color(m, level)?;
    let l = pres.l();
    check_budget(l, level)?;
    let r = level.r as i128;
    let b = &pres.ncf.b;
    let size = (level.r - 1) as usize;

    let inv_s1 = T::sin_pi(2, r).inv();
    // [k] depends on k mod r only
    let qint: Vec<T> = (0..r).map(|k| T::sin_pi(2 * k, r) * inv_s1).collect();
    let qi = |k: usize| qint[k % level.r as usize];
    // per-component phase (−1)^{b n} t^{b n(n+2)/4}
    let phases: Vec<Vec<T>> = b
        .iter()
        .map(|&bj| {
            (0..size as i128)
                .map(|n| T::cis_pi(bj as i128 * n * r + bj as i128 * n * (n + 2), r))
                .collect()
        })
        .collect();
    let hab: Vec<T> = (0..size as u32)
        .map(|n| {
            let h: T = habiro_bracket_generic(m, n, level);
            if n % 2 == 0 { h } else { -h }
        })
        .collect();

    // walk n_2..n_l for a fixed n_1
    fn walk<T: Scalar>(
        j: usize,
        prev: usize,
        acc: T,
        phases: &[Vec<T>],
        qi: &dyn Fn(usize) -> T,
        hab: &[T],
        out: &mut Vec<T>,
    ) {
        let l = phases.len();
        if j == l {
            out.push(acc * hab[prev]);
            return;
        }
        for n in 0..hab.len() {
            let a = acc * phases[j][n] * qi((prev + 1) * (n + 1));
            walk(j + 1, n, a, phases, qi, hab, out);
        }
    }

    let partials: Vec<T> = (0..size)
        .into_par_iter()
        .map(|n1| {
            let start = phases[0][n1] * qi(n1 + 1);
            let mut terms = Vec::new();
            walk(1, n1, start, &phases, &qi, &hab, &mut terms);
            pairwise_sum(&terms)
        })
        .collect();
    let total = pairwise_sum(&partials);

    let mu = kirby_mu::<T>(level.r);
    let mut mul = T::one();
    for _ in 0..l {
        mul = mul * mu;
    }
    let sigma = pres.ncf.sigma as i128;
    // σ(3/r + (r+1)/4) = σ(12 + r(r+1))/(4r)
    let frame = T::cis_pi(sigma * (12 + r * (r + 1)), 4 * r);
    Ok(mul * frame * total)
}

pub fn rt_bruteforce(pres: &SurgeryPresentation, m: u32, level: &QuantumLevel) -> Result<InvariantSample> {
    let jb: Complex64 = rt_bruteforce_generic(pres, m, level)?;
    Ok(InvariantSample::from_bar(m, jb, level, Precision::Double, 1.0))
}
