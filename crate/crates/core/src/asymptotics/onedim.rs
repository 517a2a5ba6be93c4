//! The one-dimensional critical family θ₂(c) obtained by freezing θ₁ = c.
//! Re V⁺(p,q;c,θ₂) does not depend on the slope, so nothing here takes (p,q).

use crate::special::dilog;
use num_complex::Complex64;
use std::f64::consts::PI;

fn e(t: Complex64) -> Complex64 {
    (t * Complex64::new(0.0, 2.0 * PI)).exp()
}

/// θ₂(c) = log((1 − 2s² + 2i√(1 − s⁴))/(5 − 4s²))/(2πi), s = sin(πc)
pub fn theta2_of_c(c: f64) -> Complex64 {
    let s = (PI * c).sin();
    let s2 = s * s;
    let w = Complex64::new(1.0 - 2.0 * s2, 2.0 * (1.0 - s2 * s2).sqrt()) / (5.0 - 4.0 * s2);
    w.ln() / Complex64::new(0.0, 2.0 * PI)
}

/// Re V⁺(p,q;c,θ₂) for real c.
pub fn re_potential_onedim(c: f64, t2: Complex64) -> f64 {
    let ci = Complex64::new(c, 0.0);
    let poly = Complex64::new(0.0, PI) * (t2 * t2 - t2);
    let li = dilog(e(ci + t2)) + dilog(e(t2 - ci)) + dilog(e(t2)) * 3.0 - dilog(e(t2 * 2.0));
    (poly + li / Complex64::new(0.0, 2.0 * PI)).re
}

/// The θ₂-derivative of V⁺ at θ₁ = c; vanishes at θ₂(c).
pub fn onedim_equation(c: f64, t2: Complex64) -> Complex64 {
    let ci = Complex64::new(c, 0.0);
    let one = Complex64::new(1.0, 0.0);
    Complex64::new(0.0, PI) * (t2 * 2.0 - 1.0) - (one - e(ci + t2)).ln() - (one - e(t2 - ci)).ln() - (one - e(t2)).ln() * 3.0
        + (one - e(t2 * 2.0)).ln() * 2.0
}

/// Re V⁺(p,q;c,θ₂(c))
pub fn re_v_of_c(c: f64) -> f64 {
    re_potential_onedim(c, theta2_of_c(c))
}

/// Closed form 2·log(√(sin²πc + 1) − sin πc) of d Re V⁺(c,θ₂(c))/dc.
pub fn dv_dc_closed(c: f64) -> f64 {
    let s = (PI * c).sin();
    2.0 * ((s * s + 1.0).sqrt() - s).ln()
}

/// Central difference of `re_v_of_c`.
pub fn dv_dc_numeric(c: f64, h: f64) -> f64 {
    (re_v_of_c(c + h) - re_v_of_c(c - h)) / (2.0 * h)
}
