//! Arithmetic backends for the invariant sums.

use crate::xprec::{Xc, Xf};
use num_complex::Complex64;
use num_rational::Ratio;
use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

pub type Q = Ratio<i128>;

/// Working precision of an invariant evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    Double,
    Extended,
}

/// How the precision is picked for a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrecisionMode {
    /// Double, escalating to extended for N > 100 or heavy cancellation.
    Auto,
    Fixed(Precision),
}

pub const PRECISION_ENV: &str = "WHITEHEAD_PRECISION";

impl PrecisionMode {
    pub fn from_env() -> PrecisionMode {
        match std::env::var(PRECISION_ENV).ok().as_deref().map(str::trim) {
            Some("double") => PrecisionMode::Fixed(Precision::Double),
            Some("extended") => PrecisionMode::Fixed(Precision::Extended),
            _ => PrecisionMode::Auto,
        }
    }
}

impl std::str::FromStr for PrecisionMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(PrecisionMode::Auto),
            "double" => Ok(PrecisionMode::Fixed(Precision::Double)),
            "extended" => Ok(PrecisionMode::Fixed(Precision::Extended)),
            other => Err(format!("unknown precision mode '{other}'")),
        }
    }
}

/// Complex field used by the exact sums. Phases are always e^{iπx} with x
/// rational, so the backend only needs trigonometry at rational multiples of π.
pub trait Scalar:
    Copy + Send + Sync + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_c64(z: Complex64) -> Self;
    fn from_int(k: i128) -> Self;
    /// e^{iπ num/den}
    fn cis_pi(num: i128, den: i128) -> Self;
    /// the real number sin(π num/den)
    fn sin_pi(num: i128, den: i128) -> Self;
    /// the real number √k, k ≥ 0
    fn sqrt_int(k: i128) -> Self;
    fn inv(self) -> Self;
    fn to_c64(self) -> Complex64;
    fn magnitude(self) -> f64 {
        self.to_c64().norm()
    }

    fn cis_pi_q(x: Q) -> Self {
        Self::cis_pi(*x.numer(), *x.denom())
    }

    fn sin_pi_q(x: Q) -> Self {
        Self::sin_pi(*x.numer(), *x.denom())
    }

    /// i^k
    fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::from_c64(Complex64::new(0.0, 1.0)),
            2 => -Self::one(),
            _ => Self::from_c64(Complex64::new(0.0, -1.0)),
        }
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_c64(z: Complex64) -> Self {
        z
    }
    fn from_int(k: i128) -> Self {
        Complex64::new(k as f64, 0.0)
    }
    fn cis_pi(num: i128, den: i128) -> Self {
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let x = num.rem_euclid(2 * den);
        // fold to [-1, 1] before converting so the angle stays small
        let x = if x > den { x - 2 * den } else { x };
        let a = PI * (x as f64 / den as f64);
        Complex64::new(a.cos(), a.sin())
    }
    fn sin_pi(num: i128, den: i128) -> Self {
        Complex64::new(Self::cis_pi(num, den).im, 0.0)
    }
    fn sqrt_int(k: i128) -> Self {
        Complex64::new((k as f64).sqrt(), 0.0)
    }
    fn inv(self) -> Self {
        1.0 / self
    }
    fn to_c64(self) -> Complex64 {
        self
    }
}

impl Scalar for Xc {
    fn zero() -> Self {
        Xc::ZERO
    }
    fn one() -> Self {
        Xc::ONE
    }
    fn from_c64(z: Complex64) -> Self {
        Xc::from_c64(z)
    }
    fn from_int(k: i128) -> Self {
        Xc::new(Xf::from_i128(k), Xf::ZERO)
    }
    fn cis_pi(num: i128, den: i128) -> Self {
        Xc::cis_pi(num, den)
    }
    fn sin_pi(num: i128, den: i128) -> Self {
        Xc::new(Xf::sin_cos_pi(num, den).0, Xf::ZERO)
    }
    fn sqrt_int(k: i128) -> Self {
        Xc::new(Xf::from_i128(k).sqrt(), Xf::ZERO)
    }
    fn inv(self) -> Self {
        Xc::inv(self)
    }
    fn to_c64(self) -> Complex64 {
        Xc::to_c64(&self)
    }
}

/// Sum with a fixed pairwise tree: the result depends only on the order of
/// `terms`, never on how the terms were produced.
pub fn pairwise_sum<T: Scalar>(terms: &[T]) -> T {
    match terms.len() {
        0 => T::zero(),
        1 => terms[0],
        n => {
            let (a, b) = terms.split_at(n / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}
