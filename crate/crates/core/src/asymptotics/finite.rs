//! The finite-N potential V_N(p,q,s,θ₁,θ₂), built from φ_N so that
//! e^{(N+½)V_N} is exactly the factorial ratio in the lattice sum for J_N.

use crate::error::Result;
use crate::special::{phi, QuantumLevel};
use crate::surgery::SurgeryPresentation;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VnCase {
    /// 0 < θ₂ < ½, 0 < θ₂ ± θ₁ < 1
    One,
    /// ½ ≤ θ₂ < 1, 0 < θ₂ ± θ₁ < 1
    Two,
    /// ½ ≤ θ₂ < 1, 1 < θ₂ + θ₁ < 2
    Three,
    /// ½ ≤ θ₂ < 1, 1 < θ₂ − θ₁ < 2
    Four,
}

/// Picks the region case from the real parts. Ties on θ₂ = ½ go to case (1).
pub fn vn_case(t1: f64, t2: f64) -> VnCase {
    if t2 <= 0.5 {
        VnCase::One
    } else if t2 + t1 > 1.0 {
        VnCase::Three
    } else if t2 - t1 > 1.0 {
        VnCase::Four
    } else {
        VnCase::Two
    }
}

/// V_N(p,q,s,θ₁,θ₂) + 2πi(m₁θ₁ + m₂θ₂), region case chosen from Re θ.
pub fn potential_v_n(
    pres: &SurgeryPresentation,
    level: &QuantumLevel,
    s: usize,
    m: (i64, i64),
    t1: Complex64,
    t2: Complex64,
) -> Result<Complex64> {
    potential_v_n_case(pres, level, s, m, t1, t2, vn_case(t1.re, t2.re))
}

pub fn potential_v_n_case(
    pres: &SurgeryPresentation,
    level: &QuantumLevel,
    s: usize,
    m: (i64, i64),
    t1: Complex64,
    t2: Complex64,
    case: VnCase,
) -> Result<Complex64> {
    let nu = level.nu();
    let h = 0.5 / nu;
    let (p, q) = (pres.slope.p as f64, pres.slope.q as f64);
    let is = pres.comb.i_table[s] as f64;
    let ks = pres.comb.k(s);
    let ks = *ks.numer() as f64 / *ks.denom() as f64;
    let poly = 0.5 - t2 * 2.0 + t2 * t2 * 2.0 - t1 * is / q - t1 * t2 * 2.0 + t1 * t1 * (p / (2.0 * q)) - ks / 2.0 - h
        - t1 / nu
        - t2 / nu
        - 1.5 / (nu * nu)
        + t1 * 2.0 * m.0 as f64
        + t2 * 2.0 * m.1 as f64;
    let one = Complex64::new(1.0, 0.0);
    let (c, a3, b1, b3): (f64, _, _, _) = match case {
        VnCase::One => (2.0, one - t1 - t2 - h, t2 - t1 + h, one - t2 * 2.0 - h),
        VnCase::Two => (4.0, one - t1 - t2 - h, t2 - t1 + h, 2.0 * one - t2 * 2.0 - h),
        VnCase::Three => (2.0, 2.0 * one - t1 - t2 - h, t2 - t1 + h, 2.0 * one - t2 * 2.0 - h),
        VnCase::Four => (2.0, one - t1 - t2 - h, t2 - t1 + h - 1.0, 2.0 * one - t2 * 2.0 - h),
    };
    let a1 = one - t2 - 1.0 / nu;
    let a2 = one - t2 - h;
    let phis = -phi(a1, level)? - phi(a2, level)? - phi(a3, level)? + phi(b1, level)? + phi(t2, level)? + phi(b3, level)?;
    Ok(Complex64::new(0.0, PI) * poly + (phis + c.ln()) / nu)
}
