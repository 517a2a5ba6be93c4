//! Hyperbolic structure of the filled Whitehead link complement W(p,q).
//!
//! The complete structure has one shape parameter z (Im z < 0). With
//! u = log z + log(z+1) − log(z−1) and v = 4 log z + 2πi the filling
//! equation is p·u + q·v = 2πi.

use crate::asymptotics::potential::{PotentialParams, Sign};
use crate::error::{Error, Result};
use crate::special::{bloch_wigner, whitehead_volume};
use crate::surgery::{SurgeryPresentation, SurgerySlope};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

const TWO_PI_I: Complex64 = Complex64 { re: 0.0, im: 2.0 * PI };

pub const RESIDUAL_TOL: f64 = 1e-12;
const CONTINUATION_STEPS: usize = 32;
const MAX_BISECTIONS: u32 = 12;
const NEAR_POLE: f64 = 1e-3;
const DEGENERATE_IM: f64 = 1e-8;
const DEGENERATE_NORM: f64 = 1e6;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct HyperbolicSolution {
    pub p: i64,
    pub q: i64,
    pub z0: Complex64,
    pub u: Complex64,
    pub v: Complex64,
    pub gamma: Complex64,
    pub z1: Complex64,
    pub z2: Complex64,
    pub theta1: Complex64,
    pub theta2: Complex64,
    pub vol: f64,
    /// Chern–Simons invariant in [0, π²)
    pub cs: f64,
    pub residual: f64,
}

/// (u, v) at shape z.
pub fn holonomies(z: Complex64) -> (Complex64, Complex64) {
    let u = z.ln() + (z + 1.0).ln() - (z - 1.0).ln();
    let v = z.ln() * 4.0 + TWO_PI_I;
    (u, v)
}

fn filling(p: f64, q: f64, z: Complex64) -> Complex64 {
    let (u, v) = holonomies(z);
    u * p + v * q - TWO_PI_I
}

fn filling_deriv(p: f64, q: f64, z: Complex64) -> Complex64 {
    (1.0 / z + 1.0 / (z + 1.0) - 1.0 / (z - 1.0)) * p + 4.0 * q / z
}

/// z1 = z(z+1)/(z−1), z2 = z/(z²+z−1)
pub fn to_critical(z: Complex64) -> (Complex64, Complex64) {
    (z * (z + 1.0) / (z - 1.0), z / (z * z + z - 1.0))
}

/// Inverse of `to_critical`: z = z2(z1+1)/(z1·z2 − 1).
pub fn from_critical(z1: Complex64, z2: Complex64) -> Complex64 {
    z2 * (z1 + 1.0) / (z1 * z2 - 1.0)
}

/// θ = log(z)/(2πi) on the principal branch.
pub fn theta_of(z: Complex64) -> Complex64 {
    z.ln() / TWO_PI_I
}

fn scale(p: f64, q: f64) -> f64 {
    1.0 + p.abs() + q.abs()
}

/// Damped Newton on F(z) = 2πi·τ, keeping Im z < 0.
fn newton(p: f64, q: f64, tau: f64, mut z: Complex64, max_iter: usize) -> Option<Complex64> {
    let target = TWO_PI_I * tau;
    let tol = RESIDUAL_TOL * 1e-2 * scale(p, q);
    let mut f = filling(p, q, z) + TWO_PI_I - target;
    for _ in 0..max_iter {
        if f.norm() < tol {
            return Some(z);
        }
        let d = filling_deriv(p, q, z);
        if !d.is_finite() || d.norm() < 1e-300 {
            return None;
        }
        let dz = f / d;
        let mut lam = 1.0;
        loop {
            let cand = z - dz * lam;
            let near = (cand - 1.0).norm() < NEAR_POLE || (cand + 1.0).norm() < NEAR_POLE || cand.norm() < NEAR_POLE;
            if cand.im < 0.0 && !near {
                let fc = filling(p, q, cand) + TWO_PI_I - target;
                if fc.norm() < f.norm() || lam < 1e-3 {
                    z = cand;
                    f = fc;
                    break;
                }
            }
            lam *= 0.5;
            if lam < 1e-8 {
                return None;
            }
        }
    }
    if f.norm() < tol * 1e2 {
        Some(z)
    } else {
        None
    }
}

/// Continuation in τ from the complete structure z = −i at τ = 0.
fn continuation(p: f64, q: f64) -> Option<Complex64> {
    let mut z = Complex64::new(0.0, -1.0);
    let mut tau = 0.0;
    let mut step = 1.0 / CONTINUATION_STEPS as f64;
    let mut bisections = 0;
    while tau < 1.0 {
        let next = (tau + step).min(1.0);
        match newton(p, q, next, z, 40) {
            Some(zn) => {
                z = zn;
                tau = next;
            }
            None => {
                bisections += 1;
                if bisections > MAX_BISECTIONS {
                    return None;
                }
                step *= 0.5;
            }
        }
    }
    Some(z)
}

/// The shape z⁰ (Im z⁰ < 0) solving the filling equation.
pub fn solve_shape(p: i64, q: i64) -> Result<Complex64> {
    let (pf, qf) = (p as f64, q as f64);
    let z = newton(pf, qf, 1.0, Complex64::new(0.0, -1.0), 60)
        .or_else(|| continuation(pf, qf))
        .ok_or_else(|| Error::Branch(format!("filling equation for ({p},{q}) has no solution with Im z < 0; slope is not hyperbolic")))?;
    let res = filling(pf, qf, z).norm();
    // real or escaping shapes are degenerate (zero-volume) solutions at exceptional slopes
    if !(z.im < -DEGENERATE_IM) || z.norm() > DEGENERATE_NORM {
        return Err(Error::Branch(format!("filling solve for ({p},{q}) degenerated to z = {z}; slope is not hyperbolic")));
    }
    if res > RESIDUAL_TOL * scale(pf, qf) {
        return Err(Error::Branch(format!("filling solve for ({p},{q}) ended at z = {z} with residual {res:e}")));
    }
    Ok(z)
}

pub fn solve_filling(p: i64, q: i64) -> Result<HyperbolicSolution> {
    let pres = SurgeryPresentation::new(p, q)?;
    solve_filling_for(&pres)
}

pub fn solve_filling_for(pres: &SurgeryPresentation) -> Result<HyperbolicSolution> {
    let SurgerySlope { p, q, p_star, q_star } = pres.slope;
    let z0 = solve_shape(p, q)?;
    let (u, v) = holonomies(z0);
    let gamma = -u * q_star as f64 + v * p_star as f64;
    let (z1, z2) = to_critical(z0);
    let (theta1, theta2) = (theta_of(z1), theta_of(z2));
    check_branch(theta1, theta2)?;
    let crit = PotentialParams::signed(pres, Sign::Plus).value(theta1, theta2)? * (2.0 * PI);
    Ok(HyperbolicSolution {
        p,
        q,
        z0,
        u,
        v,
        gamma,
        z1,
        z2,
        theta1,
        theta2,
        vol: crit.re,
        cs: reduce_cs(crit.im),
        residual: filling(p as f64, q as f64, z0).norm(),
    })
}

/// Branch box for the critical point: |Re θ₁| < ½, 0 < Re θ₂ < ½.
pub fn check_branch(theta1: Complex64, theta2: Complex64) -> Result<()> {
    if theta1.re.abs() < 0.5 && theta2.re > 0.0 && theta2.re < 0.5 {
        Ok(())
    } else {
        Err(Error::Branch(format!("critical point θ = ({theta1}, {theta2}) outside |Re θ₁| < ½, 0 < Re θ₂ < ½")))
    }
}

/// Reduce modulo π² into [0, π²).
pub fn reduce_cs(x: f64) -> f64 {
    let m = PI * PI;
    let r = x.rem_euclid(m);
    if r >= m {
        0.0
    } else {
        r
    }
}

/// (Vol, CS) of W(p,q) from 2π·V⁺ at the transformed critical point.
pub fn vol_cs(p: i64, q: i64) -> Result<(f64, f64)> {
    let sol = solve_filling(p, q)?;
    Ok((sol.vol, sol.cs))
}

/// Volume from the shape alone: the four ideal tetrahedra of shapes ±z contribute 2D(−z) − 2D(z).
pub fn shape_volume(z0: Complex64) -> f64 {
    (2.0 * bloch_wigner(-z0) - 2.0 * bloch_wigner(z0)).abs()
}

/// 1/(1 − z₂) = 1 + 1/(z − 1/z) for z₂ = z/(z²+z−1).
pub fn inv_one_minus_z2(z: Complex64) -> Complex64 {
    1.0 + 1.0 / (z - 1.0 / z)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct VolumeBound {
    pub value: f64,
    /// true when (p+2q)² + 4q² ≤ 2π² and the bound says nothing
    pub vacuous: bool,
    /// (p+2q)² + 4q², half the squared normalized slope length
    pub length_sq: f64,
}

/// (1 − 2π²/((p+2q)²+4q²))^{3/2} · Vol(S³∖W)
pub fn vol_lower_bound(p: i64, q: i64) -> VolumeBound {
    let l2 = ((p + 2 * q) as f64).powi(2) + 4.0 * (q as f64).powi(2);
    let x = 1.0 - 2.0 * PI * PI / l2;
    if x <= 0.0 {
        return VolumeBound { value: 0.0, vacuous: true, length_sq: l2 };
    }
    VolumeBound { value: x.powf(1.5) * whitehead_volume(), vacuous: false, length_sq: l2 }
}

/// Slopes excluded from S, normalized to q > 0.
pub const EXCLUDED_SLOPES: [(i64, i64); 28] = [
    (-9, 1),
    (-8, 1),
    (-7, 1),
    (-6, 1),
    (-5, 1),
    (1, 1),
    (2, 1),
    (3, 1),
    (4, 1),
    (5, 1),
    (-11, 2),
    (-9, 2),
    (-7, 2),
    (-5, 2),
    (-3, 2),
    (-1, 2),
    (1, 2),
    (3, 2),
    (-11, 3),
    (-10, 3),
    (-8, 3),
    (-7, 3),
    (-5, 3),
    (-4, 3),
    (-2, 3),
    (-1, 3),
    (-9, 4),
    (-7, 4),
];

/// Whether (p,q) lies in the set S on which Vol(W(p,q)) > 3.374482.
pub fn in_set_s(p: i64, q: i64) -> bool {
    let (p, q) = if q < 0 || (q == 0 && p < 0) { (-p, -q) } else { (p, q) };
    !EXCLUDED_SLOPES.contains(&(p, q))
}

/// Volume threshold on S.
pub const SET_S_VOLUME: f64 = 3.374482;
