//! Critical points of the deformed potential V⁺(p,q;x,θ₁,θ₂), where x is the
//! color ratio a/(N+½) of the color N−a.

use super::critical::{newton_critical, solve_critical_for, AsymptoticProfile, NEWTON_TOL};
use super::potential::PotentialParams;
use crate::error::{Error, Result};
use crate::surgery::SurgeryPresentation;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// Largest x-step taken by the continuation.
const X_STEP: f64 = 1e-3;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct XCritical {
    pub x: f64,
    pub theta1: Complex64,
    pub theta2: Complex64,
    /// ζ(p,q;x) = V⁺(p,q;x,θ₁(x),θ₂(x))
    pub zeta: Complex64,
    pub residual: f64,
    /// |p| ≥ 1000 or |q| ≥ 1000 and 0 ≤ x
    pub proven_regime: bool,
}

fn proven(pres: &SurgeryPresentation, x: f64) -> bool {
    (pres.slope.p.abs() >= 1000 || pres.slope.q.abs() >= 1000) && x >= 0.0
}

fn point(pres: &SurgeryPresentation, x: f64, start: (Complex64, Complex64)) -> Result<XCritical> {
    let params = PotentialParams::deformed(pres, x);
    let (t1, t2, residual) = newton_critical(&params, start, NEWTON_TOL)
        .map_err(|e| Error::Convergence(format!("x-continuation lost the critical point at x = {x}: {e}")))?;
    Ok(XCritical { x, theta1: t1, theta2: t2, zeta: params.value(t1, t2)?, residual, proven_regime: proven(pres, x) })
}

/// Critical data along `xs`, continued from x = 0 in steps of at most 10⁻³.
/// Negative x is allowed (for symmetric differences) and is flagged outside the
/// proven regime.
pub fn critical_x_path(pres: &SurgeryPresentation, profile: &AsymptoticProfile, xs: &[f64]) -> Result<Vec<XCritical>> {
    let start = point(pres, 0.0, (profile.theta1_0, profile.theta2_0))?;
    xs.iter()
        .map(|&x| {
            if !(x.abs() < 0.5) {
                return Err(Error::Domain(format!("x = {x} outside (−½, ½)")));
            }
            let steps = (x.abs() / X_STEP).ceil().max(1.0) as usize;
            let mut cur = start;
            for k in 1..=steps {
                let xk = x * k as f64 / steps as f64;
                cur = point(pres, xk, (cur.theta1, cur.theta2))?;
            }
            Ok(cur)
        })
        .collect()
}

pub fn critical_x(pres: &SurgeryPresentation, x: f64) -> Result<XCritical> {
    let prof = solve_critical_for(pres)?;
    Ok(critical_x_path(pres, &prof, &[x])?[0])
}

/// Closed form of d²Re ζ(p,q;x)/dx² at x = 0: −4π·Im(1/(1 − z₂⁰)).
pub fn zeta_second_derivative(profile: &AsymptoticProfile) -> f64 {
    -4.0 * PI * profile.im_inv_one_minus_z2()
}

/// Symmetric differences (d/dx, d²/dx²) of Re ζ(p,q;x) at x = 0.
pub fn zeta_derivatives_fd(pres: &SurgeryPresentation, profile: &AsymptoticProfile, h: f64) -> Result<(f64, f64)> {
    let v = critical_x_path(pres, profile, &[-h, 0.0, h])?;
    let (m, z, p) = (v[0].zeta.re, v[1].zeta.re, v[2].zeta.re);
    Ok(((p - m) / (2.0 * h), (p - 2.0 * z + m) / (h * h)))
}
