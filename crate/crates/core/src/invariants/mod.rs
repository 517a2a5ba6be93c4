//! Relative Reshetikhin–Turaev invariants J̄_m(W(p,q); t) at t = e^{4πi/r}
//! and the Turaev–Viro invariant assembled from them.

pub mod brute;
pub mod gauss;
pub mod habiro;
pub mod reduced;
pub mod top;
pub mod tv;

pub use brute::{rt_bruteforce, rt_bruteforce_generic, BRUTE_FORCE_BUDGET};
pub use gauss::{gauss_sum_direct, gauss_sum_s, tau_prime};
pub use habiro::{habiro_bracket, habiro_bracket_generic};
pub use reduced::{rt_all_colors, rt_reduced, rt_reduced_generic};
pub use top::{kappa_n, rt_top_color};
pub use tv::{turaev_viro, MuNormalization, TvSeries};

use crate::scalar::{Precision, PrecisionMode, Scalar};
use crate::special::QuantumLevel;
use num_complex::Complex64;
use serde::Serialize;

/// Order in which the terms of the collapsed sum are added.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumOrder {
    Natural,
    Reversed,
    Shuffled(u64),
}

#[derive(Clone, Copy, Debug)]
pub struct EvalOptions {
    pub precision: PrecisionMode,
    pub order: SumOrder,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { precision: PrecisionMode::Auto, order: SumOrder::Natural }
    }
}

impl EvalOptions {
    pub fn with_precision(precision: PrecisionMode) -> EvalOptions {
        EvalOptions { precision, ..Default::default() }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct InvariantSample {
    pub m: u32,
    pub j_bar: Complex64,
    pub j_norm: Complex64,
    pub precision: Precision,
    /// largest term over result, before the prefactor
    pub cancellation: f64,
}

impl InvariantSample {
    pub fn from_bar(m: u32, j_bar: Complex64, level: &QuantumLevel, precision: Precision, cancellation: f64) -> Self {
        InvariantSample { m, j_bar, j_norm: normalize(m, j_bar, level), precision, cancellation }
    }
}

/// J_m = (−1)^{m−1} ({1}/{m}) J̄_m
pub fn normalize(m: u32, j_bar: Complex64, level: &QuantumLevel) -> Complex64 {
    let r = level.r as f64;
    let f = (2.0 * std::f64::consts::PI / r).sin() / (2.0 * std::f64::consts::PI * m as f64 / r).sin();
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    j_bar * (sign * f)
}

/// μ = sin(2π/r)/√r, the Kirby-color normalization of a surgery component.
pub fn kirby_mu<T: Scalar>(r: u32) -> T {
    T::sin_pi(2, r as i128) * T::sqrt_int(r as i128).inv()
}
