//! J̄_m after summing out the chain with the Gauss-sum collapse.
//!
//! With the last Kirby color n = n_l + 1 ∈ {1..r−1}, the invariant is
//!
//!   J̄_m = P · Σ_{s<|q|} Σ_n e^{iπ φ(s,n)} sin(−π a(s,n)) · I_m(n),
//!   I_m(n) = Σ_i (−1)^{m+i} t^{i(i+3)/4} Π_{k=m−i}^{m+i}{k} Π_{k=n−i}^{n+i}{k} / Π_{k=i+1}^{2i+1}{k},
//!
//! with i ≤ min(m−1, n−1) and n+i ≤ r−1. In half-integer coordinates
//! n′ = r/2 − n, i′ = r/2 − 1 − i this is the lattice |n′| ≤ i′ ≤ N − ½.
//! The cost is O(r·m + |q|·r).

use super::gauss::{k_shift, mod2, tau_prime};
use super::{EvalOptions, InvariantSample, SumOrder};
use crate::error::{Error, Result};
use crate::scalar::{pairwise_sum, Precision, PrecisionMode, Scalar, Q};
use crate::special::QuantumLevel;
use crate::surgery::SurgeryPresentation;
use crate::xprec::Xc;
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Above this (max term)/(result) ratio a double evaluation is redone in
/// extended precision.
pub const CANCELLATION_LIMIT: f64 = 1.0e6;
/// Levels above this always use extended precision in automatic mode.
pub const AUTO_EXTENDED_LEVEL: u32 = 100;

/// Everything about the collapsed sum that does not depend on the backend.
pub(crate) struct ReducedPlan {
    r: i128,
    /// e^{iπ·phase} / (2 sin(2π/r) √(r|q|)) is the overall prefactor
    pref_phase: Q,
    rq: i128,
    /// (phase/π mod 2, sine argument/π) for every (s, n), s-major
    outer: Vec<(usize, Q, Q)>,
}

impl ReducedPlan {
    pub(crate) fn new(pres: &SurgeryPresentation, level: &QuantumLevel) -> ReducedPlan {
        let ncf = &pres.ncf;
        let r = level.r as i128;
        let l = ncf.len();
        let q = ncf.c[l] as i128;
        let bl = ncf.b[l - 1] as i128;
        let cl1 = ncf.c[l - 1] as i128;
        let kl1 = ncf.k[l - 1];
        let sb = ncf.sum_b() as i128;
        let sigma = ncf.sigma as i128;

        let (tau_ph, _) = tau_prime(level, ncf);
        // μ^l {1}^{−(l+1)} τ′ e^{σ(3/r+(r+1)/4)πi} e^{−iπ(1+Σb)} e^{−iπΣb/r}
        let pref_phase = mod2(
            tau_ph + Q::new(sigma * (12 + r * (r + 1)), 4 * r) - Q::from_integer(1 + sb) - Q::new(sb, r)
                - Q::new(l as i128 + 1, 2),
        );

        let shift = k_shift(ncf);
        let sign_l: i128 = if l.is_multiple_of(2) { 1 } else { -1 };
        let mut outer = Vec::with_capacity((q.abs() * (r - 1)) as usize);
        for s in 0..q.abs() {
            for n in 1..r {
                let x = Q::from_integer(n + s * r) + kl1 * Q::new(r, 2);
                let ph = Q::from_integer(bl * n) + Q::new(bl * n * n, r) - Q::new(cl1, q * r) * x * x;
                let arg = Q::new(sign_l * (2 * n + 2 * s * r), r * q) - shift;
                outer.push((n as usize, mod2(ph), -arg));
            }
        }
        ReducedPlan { r, pref_phase, rq: r * q.abs(), outer }
    }

    fn prefactor<T: Scalar>(&self) -> T {
        let den = T::from_int(2) * T::sin_pi(2, self.r) * T::sqrt_int(self.rq);
        T::cis_pi_q(self.pref_phase) * den.inv()
    }
}

/// I_m(n) for n = 1..r−1 (index 0 unused) and Σ_i |term| for each n.
fn inner_sums<T: Scalar>(m: u32, r: u32, order: SumOrder) -> Vec<(T, f64)> {
    let br: Vec<T> = super::habiro::braces(r, r as usize);
    let inv: Vec<T> = br.iter().map(|&b| if b.magnitude() == 0.0 { T::zero() } else { b.inv() }).collect();
    let (m, r) = (m as i64, r as i64);
    (0..r)
        .into_par_iter()
        .map(|n| {
            if n == 0 {
                return (T::zero(), 0.0);
            }
            let imax = (m - 1).min(n - 1).min(r - 1 - n);
            let mut ratio = br[m as usize] * br[n as usize] * inv[1];
            let mut terms = Vec::with_capacity(imax as usize + 1);
            for i in 0..=imax {
                if i > 0 {
                    let (a, b) = ((m - i) as usize, (m + i) as usize);
                    let (c, d) = ((n - i) as usize, (n + i) as usize);
                    ratio = ratio * br[a] * br[b] * br[c] * br[d] * br[i as usize]
                        * inv[2 * i as usize] * inv[2 * i as usize + 1];
                }
                let sign = if (m + i) % 2 == 0 { T::one() } else { -T::one() };
                terms.push(sign * T::cis_pi((i * (i + 3)) as i128, r as i128) * ratio);
            }
            let bound: f64 = terms.iter().map(|t| t.magnitude()).sum();
            if order != SumOrder::Natural {
                terms.reverse();
            }
            (pairwise_sum(&terms), bound)
        })
        .collect()
}

/// The collapsed sum in backend T; returns (J̄_m, cancellation ratio).
pub fn rt_reduced_generic<T: Scalar>(
    pres: &SurgeryPresentation,
    m: u32,
    level: &QuantumLevel,
    order: SumOrder,
) -> Result<(T, f64)> {
    if m == 0 || m > level.n {
        return Err(Error::Domain(format!("color m must satisfy 1 <= m <= N = {} (got {m})", level.n)));
    }
    let plan = ReducedPlan::new(pres, level);
    Ok(sum_with_plan(&plan, m, level, order))
}

pub(crate) fn sum_with_plan<T: Scalar>(plan: &ReducedPlan, m: u32, level: &QuantumLevel, order: SumOrder) -> (T, f64) {
    let inner = inner_sums::<T>(m, level.r, order);
    let mut idx: Vec<usize> = (0..plan.outer.len()).collect();
    match order {
        SumOrder::Natural => {}
        SumOrder::Reversed => idx.reverse(),
        SumOrder::Shuffled(seed) => idx.shuffle(&mut ChaCha8Rng::seed_from_u64(seed)),
    }
    let terms: Vec<(T, f64)> = idx
        .par_iter()
        .map(|&k| {
            let (n, ph, arg) = &plan.outer[k];
            let sine = T::sin_pi_q(*arg);
            let (val, bound) = inner[*n];
            (T::cis_pi_q(*ph) * sine * val, sine.magnitude() * bound)
        })
        .collect();
    let values: Vec<T> = terms.iter().map(|t| t.0).collect();
    let total = pairwise_sum(&values);
    let largest = terms.iter().map(|t| t.1).fold(0.0, f64::max);
    let mag = total.magnitude();
    let ratio = if mag > 0.0 { largest / mag } else { f64::INFINITY };
    (plan.prefactor::<T>() * total, ratio)
}

/// Precision actually used for a request.
pub fn resolve_precision(mode: PrecisionMode, level: &QuantumLevel) -> Option<Precision> {
    match mode {
        PrecisionMode::Fixed(p) => Some(p),
        PrecisionMode::Auto if level.n > AUTO_EXTENDED_LEVEL => Some(Precision::Extended),
        PrecisionMode::Auto => None,
    }
}

pub(crate) fn eval_with_plan(
    plan: &ReducedPlan,
    m: u32,
    level: &QuantumLevel,
    opts: &EvalOptions,
) -> InvariantSample {
    let run_ext = || {
        let (v, ratio) = sum_with_plan::<Xc>(plan, m, level, opts.order);
        InvariantSample::from_bar(m, v.to_c64(), level, Precision::Extended, ratio)
    };
    match resolve_precision(opts.precision, level) {
        Some(Precision::Extended) => run_ext(),
        Some(Precision::Double) => {
            let (v, ratio) = sum_with_plan::<Complex64>(plan, m, level, opts.order);
            InvariantSample::from_bar(m, v, level, Precision::Double, ratio)
        }
        None => {
            let (v, ratio) = sum_with_plan::<Complex64>(plan, m, level, opts.order);
            if ratio > CANCELLATION_LIMIT {
                run_ext()
            } else {
                InvariantSample::from_bar(m, v, level, Precision::Double, ratio)
            }
        }
    }
}

pub fn rt_reduced(
    pres: &SurgeryPresentation,
    m: u32,
    level: &QuantumLevel,
    opts: &EvalOptions,
) -> Result<InvariantSample> {
    if m == 0 || m > level.n {
        return Err(Error::Domain(format!("color m must satisfy 1 <= m <= N = {} (got {m})", level.n)));
    }
    let plan = ReducedPlan::new(pres, level);
    Ok(eval_with_plan(&plan, m, level, opts))
}

/// J̄_m for every color m = 1..N sharing one plan.
pub fn rt_all_colors(pres: &SurgeryPresentation, level: &QuantumLevel, opts: &EvalOptions) -> Vec<InvariantSample> {
    let plan = ReducedPlan::new(pres, level);
    (1..=level.n).into_par_iter().map(|m| eval_with_plan(&plan, m, level, opts)).collect()
}
