//! Quantum integers and factorials at t = e^{4πi/r}.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuantumLevel {
    pub n: u32,
    pub r: u32,
}

impl QuantumLevel {
    pub fn new(n: u32) -> Result<QuantumLevel> {
        if n == 0 {
            return Err(Error::Domain("level N must be positive".into()));
        }
        Ok(QuantumLevel { n, r: 2 * n + 1 })
    }

    /// N + ½
    pub fn nu(&self) -> f64 {
        self.n as f64 + 0.5
    }

    pub fn t(&self) -> Complex64 {
        Complex64::from_polar(1.0, 4.0 * PI / self.r as f64)
    }

    /// t^x = e^{4πix/r}
    pub fn t_pow(&self, x: f64) -> Complex64 {
        Complex64::from_polar(1.0, 4.0 * PI * x / self.r as f64)
    }
}

/// [n] = sin(2πn/r)/sin(2π/r); n may be a half-integer.
pub fn quantum_integer(n: f64, level: &QuantumLevel) -> f64 {
    let r = level.r as f64;
    (2.0 * PI * n / r).sin() / (2.0 * PI / r).sin()
}

/// {n} = t^{n/2} − t^{−n/2} = 2i sin(2πn/r)
pub fn brace(n: f64, level: &QuantumLevel) -> Complex64 {
    Complex64::new(0.0, 2.0 * (2.0 * PI * n / level.r as f64).sin())
}

/// {n}! for 0 ≤ n ≤ r−1
pub fn brace_factorial(n: u32, level: &QuantumLevel) -> Result<Complex64> {
    if n >= level.r {
        return Err(Error::Domain(format!("{{n}}! needs 0 <= n <= r-1 (n={n}, r={})", level.r)));
    }
    Ok((1..=n).map(|k| brace(k as f64, level)).product())
}

/// (t)_n = Π_{k=1..n} (1 − t^k) for 0 ≤ n ≤ r−1
pub fn pochhammer_t(n: u32, level: &QuantumLevel) -> Result<Complex64> {
    if n >= level.r {
        return Err(Error::Domain(format!("(t)_n needs 0 <= n <= r-1 (n={n}, r={})", level.r)));
    }
    let one = Complex64::new(1.0, 0.0);
    Ok((1..=n).map(|k| one - level.t_pow(k as f64)).product())
}

/// Table of {k} = 2i·sin(2πk/r) for k = 0..r in the chosen backend.
pub fn brace_table<T: Scalar>(r: u32) -> Vec<T> {
    let i = T::i_pow(1);
    (0..=r as i128)
        .map(|k| i * T::from_int(2) * T::sin_pi(2 * k, r as i128))
        .collect()
}
