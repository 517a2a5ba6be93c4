//! The real-part function v(θ₁,θ₂), the integration regions D ⊃ D₀ = D′₀ ∪ D″₀,
//! and the real Hessians of f = Re V in the imaginary directions.

use crate::error::{Error, Result};
use crate::special::lobachevsky;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub const C0: f64 = 0.122532;
pub const VOLUME_THRESHOLD: f64 = 3.374482;
pub const X0: f64 = 0.01;
const POLE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionSpec {
    pub c0: f64,
    pub threshold: f64,
    pub epsilon: f64,
    pub x0: f64,
}

impl Default for RegionSpec {
    fn default() -> Self {
        RegionSpec { c0: C0, threshold: VOLUME_THRESHOLD, epsilon: 1e-5, x0: X0 }
    }
}

/// v(θ₁,θ₂) = 3Λ(θ₂) + Λ(θ₂+θ₁) + Λ(θ₂−θ₁) − Λ(2θ₂)
pub fn region_v(t1: f64, t2: f64) -> f64 {
    3.0 * lobachevsky(t2) + lobachevsky(t2 + t1) + lobachevsky(t2 - t1) - lobachevsky(2.0 * t2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RegionMembership {
    pub d: bool,
    pub d0_prime: bool,
    pub d0_double_prime: bool,
}

impl RegionMembership {
    pub fn d0(&self) -> bool {
        self.d0_prime || self.d0_double_prime
    }

    pub fn label(&self) -> &'static str {
        match (self.d, self.d0_prime, self.d0_double_prime) {
            (_, true, _) => "D'0",
            (_, _, true) => "D''0",
            (true, _, _) => "D",
            _ => "outside",
        }
    }
}

pub fn region_membership(t1: f64, t2: f64) -> RegionMembership {
    region_membership_with(t1, t2, C0)
}

pub fn region_membership_with(t1: f64, t2: f64, c0: f64) -> RegionMembership {
    let a = t1.abs();
    let d = t2 + t1 > 0.0 && t2 - t1 > 0.0 && t2 > 0.0 && t2 < 0.5;
    RegionMembership {
        d,
        d0_prime: d && a <= c0 && t2 <= 0.5 - a,
        d0_double_prime: d && a >= c0 && a <= 0.25,
    }
}

fn im_inv_one_minus(w: Complex64) -> Result<f64> {
    let den = 1.0 - w;
    if den.norm() < POLE_TOL {
        return Err(Error::Domain(format!("Hessian entry at a pole (1 − w = {den})")));
    }
    Ok((1.0 / den).im)
}

fn e(t: f64, x: f64) -> Complex64 {
    // e^{2πi(t + iX)}
    Complex64::from_polar((-2.0 * PI * x).exp(), 2.0 * PI * t)
}

/// 2π·[[a+b, b−a], [b−a, a+b+c+2d]] for f = Re V at θ_j = θ_jR + iX_j.
pub fn hessian_f(t1: f64, x1: f64, t2: f64, x2: f64) -> Result<[[f64; 2]; 2]> {
    let a = im_inv_one_minus(e(t2 - t1, x2 - x1))?;
    let b = im_inv_one_minus(e(t2 + t1, x2 + x1))?;
    let z2 = e(t2, x2);
    let c = im_inv_one_minus(z2)?;
    let d = -im_inv_one_minus(-z2)?;
    let tp = 2.0 * PI;
    Ok([[tp * (a + b), tp * (b - a)], [tp * (b - a), tp * (a + b + c + 2.0 * d)]])
}

/// 2π·[[b+c, b−c], [b−c, b+c+d]] for f = Re V⁺(x, ·).
pub fn hessian_f_x(x: f64, t1: f64, x1: f64, t2: f64, x2: f64) -> Result<[[f64; 2]; 2]> {
    let b = im_inv_one_minus(e(t1 + t2, x1 + x2))?;
    let c = -im_inv_one_minus(e(t1 - t2, x1 - x2))?;
    let z2 = e(t2, x2);
    // the deformation enters through e^{−2πix}·z₂^{±1}
    let ex = Complex64::from_polar(1.0, -2.0 * PI * x);
    let d = im_inv_one_minus(ex * z2)? - im_inv_one_minus(ex / z2)? + im_inv_one_minus(z2)?
        - 4.0 * im_inv_one_minus(z2 * z2)?;
    let tp = 2.0 * PI;
    Ok([[tp * (b + c), tp * (b - c)], [tp * (b - c), tp * (b + c + d)]])
}

/// Largest x for which the deformed Hessian is proven positive, given θ₂ ≥ ε.
pub fn x_positivity_bound(eps: f64) -> f64 {
    let c = (2.0 * PI * eps).cos();
    let inner = ((3.0 + (9.0 + 16.0 * c * c).sqrt()) / 8.0).sqrt();
    (inner.acos() / PI).min(1.0 / 6.0)
}

fn positive_definite(h: [[f64; 2]; 2]) -> bool {
    h[0][0] > 0.0 && h[0][0] * h[1][1] - h[0][1] * h[1][0] > 0.0
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct GridReport {
    pub points: usize,
    pub violations: usize,
    /// smallest leading minor / determinant, or smallest margin, seen on the grid
    pub min_margin: f64,
}

fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step).round() as i64;
    (0..=n).map(|k| lo + k as f64 * step).collect()
}

/// Inclusion scan: checks that every point of D with v > threshold/(2π) + ε lies in D₀.
pub fn region_inclusion_scan(spec: &RegionSpec, step: f64) -> GridReport {
    let cut = spec.threshold / (2.0 * PI) + spec.epsilon;
    let t2s = grid(0.0, 0.5, step);
    let rows: Vec<GridReport> = t2s
        .par_iter()
        .map(|&t2| {
            let mut rep = GridReport { min_margin: f64::INFINITY, ..Default::default() };
            for t1 in grid(-0.5, 0.5, step) {
                let m = region_membership_with(t1, t2, spec.c0);
                if !m.d {
                    continue;
                }
                rep.points += 1;
                if m.d0() {
                    continue;
                }
                let v = region_v(t1, t2);
                rep.min_margin = rep.min_margin.min(cut - v);
                if v > cut {
                    rep.violations += 1;
                }
            }
            rep
        })
        .collect();
    merge(&rows)
}

fn merge(rows: &[GridReport]) -> GridReport {
    let mut out = GridReport { min_margin: f64::INFINITY, ..Default::default() };
    for r in rows {
        out.points += r.points;
        out.violations += r.violations;
        out.min_margin = out.min_margin.min(r.min_margin);
    }
    out
}

/// Positivity of `hessian_f` on the interior of D_H = {0 < θ₂ ± θ₁ < ½}.
pub fn hessian_scan(step: f64, x_max: f64, x_step: f64) -> GridReport {
    let xs = grid(-x_max, x_max, x_step);
    let t2s: Vec<f64> = grid(0.0, 0.5, step).into_iter().filter(|&t| t > 0.0 && t < 0.5).collect();
    let rows: Vec<GridReport> = t2s
        .par_iter()
        .map(|&t2| {
            let mut rep = GridReport { min_margin: f64::INFINITY, ..Default::default() };
            for t1 in grid(-0.25, 0.25, step) {
                let (s, d) = (t2 + t1, t2 - t1);
                if !(s > 1e-9 && s < 0.5 - 1e-9 && d > 1e-9 && d < 0.5 - 1e-9) {
                    continue;
                }
                for &x1 in &xs {
                    for &x2 in &xs {
                        rep.points += 1;
                        match hessian_f(t1, x1, t2, x2) {
                            Ok(h) => {
                                let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
                                rep.min_margin = rep.min_margin.min(h[0][0].min(det));
                                if !positive_definite(h) {
                                    rep.violations += 1;
                                }
                            }
                            Err(_) => rep.violations += 1,
                        }
                    }
                }
            }
            rep
        })
        .collect();
    merge(&rows)
}

/// Positivity of `hessian_f_x` on {0 ≤ θ₂ ± θ₁ ≤ ½, ε ≤ θ₂ ≤ ½} for the given x.
pub fn hessian_x_scan(x: f64, eps: f64, step: f64, x_max: f64, x_step: f64) -> GridReport {
    let xs = grid(-x_max, x_max, x_step);
    let t2s: Vec<f64> = grid(0.0, 0.5, step).into_iter().filter(|&t| t >= eps && t < 0.5).collect();
    let rows: Vec<GridReport> = t2s
        .par_iter()
        .map(|&t2| {
            let mut rep = GridReport { min_margin: f64::INFINITY, ..Default::default() };
            for t1 in grid(-0.25, 0.25, step) {
                let (s, d) = (t2 + t1, t2 - t1);
                if !(s > 1e-9 && s < 0.5 - 1e-9 && d > 1e-9 && d < 0.5 - 1e-9) {
                    continue;
                }
                for &x1 in &xs {
                    for &x2 in &xs {
                        rep.points += 1;
                        match hessian_f_x(x, t1, x1, t2, x2) {
                            Ok(h) => {
                                let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
                                rep.min_margin = rep.min_margin.min(h[0][0].min(det));
                                if !positive_definite(h) {
                                    rep.violations += 1;
                                }
                            }
                            Err(_) => rep.violations += 1,
                        }
                    }
                }
            }
            rep
        })
        .collect();
    merge(&rows)
}
