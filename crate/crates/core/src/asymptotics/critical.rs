//! Critical point of V⁺ and the leading-order data of the top-color and
//! Turaev–Viro asymptotics.

use super::potential::{PotentialParams, Sign};
use super::region::{region_membership, RegionMembership};
use crate::error::{Error, Result};
use crate::geometry::{self, check_branch};
use crate::scalar::{Scalar, Q};
use crate::special::QuantumLevel;
use crate::surgery::SurgeryPresentation;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

pub const NEWTON_TOL: f64 = 1e-12;
const NEWTON_MAX_ITER: usize = 60;
const CONTINUATION_STEPS: usize = 64;

#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticProfile {
    pub p: i64,
    pub q: i64,
    pub theta1_0: Complex64,
    pub theta2_0: Complex64,
    pub z1_0: Complex64,
    pub z2_0: Complex64,
    pub zeta: Complex64,
    pub omega: Complex64,
    pub h: Complex64,
    pub hess_v: [[Complex64; 2]; 2],
    /// |∇V⁺| at the returned point
    pub residual: f64,
    pub region: RegionMembership,
    /// J(s⁺) as a real number
    pub j_plus: f64,
}

impl AsymptoticProfile {
    /// 2πζ = Vol + i·CS (imaginary part not reduced)
    pub fn two_pi_zeta(&self) -> Complex64 {
        self.zeta * (2.0 * PI)
    }

    /// |sin²(πθ₁⁰/q − πJ(s⁺)) / (q(1 − z₂²)H)|
    pub fn tv_sine_ratio(&self) -> f64 {
        let s = self.sine_factor();
        let z2 = self.z2_0;
        (s * s / ((1.0 - z2 * z2) * self.h * self.q as f64)).norm()
    }

    /// sin(πθ₁⁰/q − πJ(s⁺))
    pub fn sine_factor(&self) -> Complex64 {
        (self.theta1_0 * PI / self.q as f64 - self.j_plus * PI).sin()
    }

    /// Im(1/(1 − z₂⁰))
    pub fn im_inv_one_minus_z2(&self) -> f64 {
        (1.0 / (1.0 - self.z2_0)).im
    }

    /// Coefficient of (N+½)^{1/2}·e^{(N+½)Vol/π} in the TV asymptotic.
    pub fn tv_coefficient(&self) -> f64 {
        self.tv_sine_ratio() / self.im_inv_one_minus_z2().sqrt()
    }
}

fn q_to_f64(x: Q) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

fn solve2(h: [[Complex64; 2]; 2], g: [Complex64; 2]) -> Option<[Complex64; 2]> {
    let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
    if det.norm() < 1e-300 || !det.is_finite() {
        return None;
    }
    Some([(g[0] * h[1][1] - g[1] * h[0][1]) / det, (h[0][0] * g[1] - h[1][0] * g[0]) / det])
}

fn grad_norm(g: [Complex64; 2]) -> f64 {
    (g[0].norm_sqr() + g[1].norm_sqr()).sqrt()
}

/// Newton on ∇V = 0 with the analytic Hessian, halving the step whenever the
/// residual grows.
pub fn newton_critical(params: &PotentialParams, start: (Complex64, Complex64), tol: f64) -> Result<(Complex64, Complex64, f64)> {
    let (mut t1, mut t2) = start;
    let mut g = params.gradient(t1, t2);
    let mut res = grad_norm(g);
    for _ in 0..NEWTON_MAX_ITER {
        if res < tol {
            return Ok((t1, t2, res));
        }
        let step = solve2(params.hessian(t1, t2), g)
            .ok_or_else(|| Error::Convergence(format!("singular Hessian at θ = ({t1}, {t2})")))?;
        let mut lam = 1.0;
        loop {
            let (c1, c2) = (t1 - step[0] * lam, t2 - step[1] * lam);
            let gc = params.gradient(c1, c2);
            let rc = grad_norm(gc);
            if rc.is_finite() && (rc < res || lam < 1e-4) {
                t1 = c1;
                t2 = c2;
                g = gc;
                res = rc;
                break;
            }
            lam *= 0.5;
        }
    }
    if res < tol * 10.0 {
        Ok((t1, t2, res))
    } else {
        Err(Error::Convergence(format!("critical point Newton stalled at residual {res:e}")))
    }
}

/// Continuation of the V⁺ critical point from the slope (1,1) along the straight
/// path in (p, q, p′).
fn continue_from_figure_eight(pres: &SurgeryPresentation) -> Result<(Complex64, Complex64, f64)> {
    let base = geometry::solve_filling(1, 1)?;
    let (p, q, ps) = (pres.slope.p as f64, pres.slope.q as f64, pres.slope.p_star as f64);
    if q.signum() != 1.0 {
        return Err(Error::Convergence("continuation from (1,1) requires q > 0".into()));
    }
    let mut cur = (base.theta1, base.theta2);
    for k in 1..=CONTINUATION_STEPS {
        let t = k as f64 / CONTINUATION_STEPS as f64;
        let params = PotentialParams::signed_real(1.0 + t * (p - 1.0), 1.0 + t * (q - 1.0), t * ps, Sign::Plus);
        let (a, b, _) = newton_critical(&params, cur, NEWTON_TOL)?;
        cur = (a, b);
    }
    newton_critical(&PotentialParams::signed(pres, Sign::Plus), cur, NEWTON_TOL)
}

pub fn solve_critical(p: i64, q: i64) -> Result<AsymptoticProfile> {
    let pres = SurgeryPresentation::new(p, q)?;
    solve_critical_for(&pres)
}

pub fn solve_critical_for(pres: &SurgeryPresentation) -> Result<AsymptoticProfile> {
    let geo = geometry::solve_filling_for(pres)?;
    let params = PotentialParams::signed(pres, Sign::Plus);
    let (t1, t2, residual) = match newton_critical(&params, (geo.theta1, geo.theta2), NEWTON_TOL) {
        Ok(v) => v,
        Err(_) => continue_from_figure_eight(pres)?,
    };
    check_branch(t1, t2)?;
    profile_at(pres, &params, t1, t2, residual)
}

fn profile_at(
    pres: &SurgeryPresentation,
    params: &PotentialParams,
    t1: Complex64,
    t2: Complex64,
    residual: f64,
) -> Result<AsymptoticProfile> {
    let tpi = Complex64::new(0.0, 2.0 * PI);
    let z1 = (t1 * tpi).exp();
    let z2 = (t2 * tpi).exp();
    let zeta = params.value(t1, t2)?;
    let hess = params.hessian(t1, t2);
    let h = (hess[0][0] * hess[1][1] - hess[0][1] * hess[1][0]) / (tpi * tpi);
    let j_plus = q_to_f64(pres.comb.j(pres.comb.s_plus));
    let q = pres.slope.q as f64;
    let sine = (t1 * PI / q - j_plus * PI).sin();
    let omega = sine / ((1.0 - z2 * z2).sqrt() * h.sqrt());
    Ok(AsymptoticProfile {
        p: pres.slope.p,
        q: pres.slope.q,
        theta1_0: t1,
        theta2_0: t2,
        z1_0: z1,
        z2_0: z2,
        zeta,
        omega,
        h,
        hess_v: hess,
        residual,
        region: region_membership(t1.re, t2.re),
        j_plus,
    })
}

/// Exponent e of the closed-form norm-one constant, C = e^{iπe}, reduced mod 2:
/// e = P(s⁺) + m⁺ + 3l/4 + 3N/2 + Σ_{j<l} b_j + (N+½)(3b_l/2 − K(s⁺)/2 − p′/2q) + σ(3/r + (r+1)/4).
pub fn c_n_exponent(pres: &SurgeryPresentation, level: &QuantumLevel) -> Q {
    let ncf = &pres.ncf;
    let comb = &pres.comb;
    let l = ncf.len();
    let n = level.n as i128;
    let r = level.r as i128;
    let bl = ncf.b[l - 1] as i128;
    let head: i128 = ncf.b[..l - 1].iter().map(|&b| b as i128).sum();
    let nu = Q::new(r, 2);
    let q = pres.slope.q as i128;
    let mut e = Q::from_integer(comb.p_table[comb.s_plus] as i128 + comb.m_plus as i128 + head)
        + Q::new(3 * l as i128, 4)
        + Q::new(3 * n, 2);
    e += nu * (Q::new(3 * bl, 2) - comb.k(comb.s_plus) / Q::from_integer(2) - Q::new(pres.slope.p_star as i128, 2 * q));
    e += Q::from_integer(ncf.sigma as i128) * (Q::new(3, r) + Q::new(r + 1, 4));
    crate::invariants::gauss::mod2(e)
}

/// C_N(p,q) = −sgn(q)·e^{iπe}, the norm-one constant paired with 1/√|q|. The
/// overall sign is fixed against exact values of J_N.
pub fn c_n(pres: &SurgeryPresentation, level: &QuantumLevel) -> Complex64 {
    let e = c_n_exponent(pres, level) + Q::from_integer(if pres.slope.q > 0 { 1 } else { 0 });
    <Complex64 as Scalar>::cis_pi_q(crate::invariants::gauss::mod2(e))
}

/// C_N·√(2N+1)/(sin(π/(2N+1))√|q|)·ω·e^{(N+½)ζ}
pub fn asymptotic_j_for(pres: &SurgeryPresentation, profile: &AsymptoticProfile, level: &QuantumLevel) -> Complex64 {
    let r = level.r as f64;
    let pref = r.sqrt() / ((PI / r).sin() * (pres.slope.q.abs() as f64).sqrt());
    c_n(pres, level) * pref * profile.omega * (profile.zeta * level.nu()).exp()
}

pub fn asymptotic_j(p: i64, q: i64, level: &QuantumLevel) -> Result<Complex64> {
    let pres = SurgeryPresentation::new(p, q)?;
    let prof = solve_critical_for(&pres)?;
    Ok(asymptotic_j_for(&pres, &prof, level))
}

/// log of the leading TV term: log(coef) + ½log(N+½) + (N+½)Vol/π.
pub fn tv_asymptotic_log(profile: &AsymptoticProfile, level: &QuantumLevel) -> f64 {
    let nu = level.nu();
    let vol = profile.two_pi_zeta().re;
    profile.tv_coefficient().ln() + 0.5 * nu.ln() + nu * vol / PI
}

pub fn tv_asymptotic(p: i64, q: i64, level: &QuantumLevel) -> Result<f64> {
    let prof = solve_critical(p, q)?;
    Ok(tv_asymptotic_log(&prof, level).exp())
}

/// (2π/(N+½))·log J − 2πζ with the imaginary part reduced into (−π²/2r, π²/2r].
/// The imaginary part is defined modulo π² (from CS) and modulo 4π²/(N+½)
/// (from the branch of log); for odd r these generate π²/r·ℤ.
pub fn growth_defect(j: Complex64, profile: &AsymptoticProfile, level: &QuantumLevel) -> Complex64 {
    let d = j.ln() * (2.0 * PI / level.nu()) - profile.two_pi_zeta();
    let g = PI * PI / level.r as f64;
    Complex64::new(d.re, d.im - g * (d.im / g).round())
}
