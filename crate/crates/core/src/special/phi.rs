//! The quantum dilogarithm
//!
//! φ_N(θ) = ∫_γ e^{(2θ−1)x} / (4x·sinh x·sinh(x/(N+½))) dx
//!
//! along γ = (−∞,−1] ∪ {|x| = 1, Im x ≥ 0} ∪ [1,∞), evaluated by adaptive
//! Gauss–Kronrod on the real tails and Gauss–Legendre on the half circle.

use super::quadrature::{gauss_legendre, integrate};
use super::quantum::QuantumLevel;
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ContourSpec {
    /// Largest |x| the real tails may be extended to.
    pub tail_cutoff: f64,
    /// Maximum number of Kronrod subintervals per tail.
    pub node_budget: usize,
    pub target_abs_err: f64,
}

impl Default for ContourSpec {
    fn default() -> Self {
        ContourSpec { tail_cutoff: 1.0e5, node_budget: 4000, target_abs_err: 1e-12 }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct PhiValue {
    pub value: Complex64,
    pub err: f64,
    /// where the two real tails were truncated (left, right)
    pub cutoffs: (f64, f64),
}

const ARC_NODES: usize = 64;

/// Integrand on the real line, written to stay finite for large |x|.
fn integrand_real(x: f64, theta: Complex64, nu: f64) -> Complex64 {
    let ax = x.abs();
    let d = x * (-(-2.0 * ax).exp_m1()) * (-(-2.0 * ax / nu).exp_m1());
    let e = (theta * 2.0 - 1.0) * x - ax - ax / nu;
    e.exp() / d
}

fn integrand(z: Complex64, theta: Complex64, nu: f64) -> Complex64 {
    ((theta * 2.0 - 1.0) * z).exp() / (z * 4.0 * z.sinh() * (z / nu).sinh())
}

/// Strip on which the contour integral converges: −1/(2ν) < Re θ < 1 + 1/(2ν).
pub fn in_convergence_strip(theta: Complex64, level: &QuantumLevel) -> bool {
    let h = 0.5 / level.nu();
    theta.re > -h && theta.re < 1.0 + h
}

fn arc(theta: Complex64, nu: f64, n: usize) -> Complex64 {
    // z = e^{iφ}, φ from π down to 0
    let i = Complex64::new(0.0, 1.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for (x, w) in gauss_legendre(n) {
        let phi = 0.5 * PI * (x + 1.0);
        let z = Complex64::from_polar(1.0, phi);
        acc += integrand(z, theta, nu) * i * z * w;
    }
    -acc * (0.5 * PI)
}

fn tail_length(theta: Complex64, nu: f64, sign: f64, tol: f64, cap: f64) -> Option<f64> {
    let rate = if sign > 0.0 { 2.0 + 1.0 / nu - 2.0 * theta.re } else { 2.0 * theta.re + 1.0 / nu };
    let mut l: f64 = 2.0;
    while l <= cap {
        let bound = integrand_real(sign * l, theta, nu).norm() / rate;
        if bound < tol {
            return Some(l);
        }
        l *= 1.25;
    }
    None
}

/// φ_N(θ) with an absolute-error estimate.
pub fn phi_n(theta: Complex64, level: &QuantumLevel, spec: &ContourSpec) -> Result<PhiValue> {
    if !theta.re.is_finite() || !theta.im.is_finite() || !in_convergence_strip(theta, level) {
        return Err(Error::Domain(format!(
            "phi_N needs -1/(2N+1) < Re(theta) < 1 + 1/(2N+1), got {theta}"
        )));
    }
    let nu = level.nu();
    let tol = spec.target_abs_err / 4.0;
    let tail_tol = tol / 4.0;
    let too_long = |side: &str| Error::Accuracy {
        what: format!("phi_N {side} tail does not decay within cutoff {}", spec.tail_cutoff),
        achieved: f64::INFINITY,
        target: spec.target_abs_err,
    };
    let lr = tail_length(theta, nu, 1.0, tail_tol, spec.tail_cutoff).ok_or_else(|| too_long("right"))?;
    let ll = tail_length(theta, nu, -1.0, tail_tol, spec.tail_cutoff).ok_or_else(|| too_long("left"))?;

    let right = integrate(|x| integrand_real(x, theta, nu), 1.0, lr, tol, spec.node_budget);
    let left = integrate(|x| integrand_real(x, theta, nu), -ll, -1.0, tol, spec.node_budget);
    let a1 = arc(theta, nu, ARC_NODES);
    let a2 = arc(theta, nu, ARC_NODES / 2);
    let arc_err = (a1 - a2).norm().max(1e-16 * a1.norm());

    let err = right.err + left.err + arc_err + 2.0 * tail_tol;
    if !(err <= spec.target_abs_err) {
        return Err(Error::Accuracy { what: "phi_N quadrature".into(), achieved: err, target: spec.target_abs_err });
    }
    Ok(PhiValue { value: right.value + left.value + a1, err, cutoffs: (ll, lr) })
}

/// φ_N(θ) with the default contour.
pub fn phi(theta: Complex64, level: &QuantumLevel) -> Result<Complex64> {
    phi_n(theta, level, &ContourSpec::default()).map(|v| v.value)
}
