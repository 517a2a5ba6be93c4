//! The top color J_N written as κ_N·(…)·Σ_{s,n′,i′} g_N(s,n′,i′) over the
//! half-integer lattice, with g_N built from exact (t)_k products. This is the
//! form whose exponent defines the finite-N potential V_N.

use super::gauss::{a0_correction, mod2};
use crate::scalar::{Scalar, Q};
use crate::special::QuantumLevel;
use crate::surgery::SurgeryPresentation;
use num_complex::Complex64;
use std::f64::consts::PI;

fn cis(x: Q) -> Complex64 {
    <Complex64 as Scalar>::cis_pi_q(mod2(x))
}

/// κ_N = e^{iπ(b_l(3N/2+3/4) + Σb + 3(l+1)/4)} / (2r√q)
///       · e^{−(πi/r)(Σb + Σ_{i<l} 1/(C_iC_{i+1}))} e^{σ(3/r+(r+1)/4)πi}
pub fn kappa_n(pres: &SurgeryPresentation, level: &QuantumLevel) -> Complex64 {
    let ncf = &pres.ncf;
    let r = level.r as i128;
    let n = level.n as i128;
    let l = ncf.len();
    let bl = ncf.b[l - 1] as i128;
    let sb = ncf.sum_b() as i128;
    let q = ncf.c[l] as i128;
    let mut ph = Q::from_integer(bl) * Q::new(6 * n + 3, 4) + Q::from_integer(sb) + Q::new(3 * (l as i128 + 1), 4);
    ph -= Q::new(sb, r);
    for i in 1..l {
        ph -= Q::new(1, ncf.c[i] as i128 * ncf.c[i + 1] as i128 * r);
    }
    ph += Q::new(ncf.sigma as i128 * (12 + r * (r + 1)), 4 * r);
    if q < 0 {
        ph -= Q::new(1, 2);
    }
    cis(ph) / (2.0 * r as f64 * (q.abs() as f64).sqrt())
}

/// (t)_k for k = 0..r−1
pub fn pochhammer_table(level: &QuantumLevel) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(1.0, 0.0)];
    for k in 1..level.r {
        let last = out[k as usize - 1];
        out.push(last * (1.0 - level.t_pow(k as f64)));
    }
    out
}

/// Lattice point n′ = n2/2, i′ = i2/2 with n2, i2 odd and |n2| ≤ i2 ≤ 2N−1.
#[derive(Clone, Copy, Debug)]
pub struct LatticePoint {
    pub n2: i64,
    pub i2: i64,
}

impl LatticePoint {
    pub fn theta(&self, level: &QuantumLevel) -> (f64, f64) {
        let r = level.r as f64;
        (self.n2 as f64 / r, self.i2 as f64 / r)
    }
}

/// The exponential part e^{(N+½)V_N(θ₁,θ₂)} of g_N, from exact (t)_k products.
pub fn exp_potential_exact(
    pres: &SurgeryPresentation,
    level: &QuantumLevel,
    s: usize,
    pt: LatticePoint,
    poch: &[Complex64],
) -> Complex64 {
    let r = level.r as i128;
    let n = level.n as i128;
    let q = pres.slope.q as i128;
    let p = pres.slope.p as i128;
    let (n2, i2) = (pt.n2 as i128, pt.i2 as i128);
    let th1 = Q::new(n2, r);
    let th2 = Q::new(i2, r);
    let nu = Q::new(r, 2);
    let is = Q::from_integer(pres.comb.i_table[s] as i128);
    let ks = pres.comb.k(s);
    let y = Q::from_integer(2) * th2 / nu + Q::from_integer(4) * th1 * th2 - Q::from_integer(4) * th2 * th2
        - Q::new(p, q) * th1 * th1
        + Q::from_integer(2) * is * th1 / Q::from_integer(q)
        + ks;
    // e^{(ν/2πi)(π²·y)} = e^{−iπ ν y/2}
    let ph1 = -nu * y / Q::from_integer(2);
    let ph2 = Q::new(n, 2) - Q::new(i2, 1) - Q::new(1, 4) - Q::new(1, r) - Q::new(n2, r) - Q::new(2, r);
    let k = |x2: i128| -> usize {
        debug_assert!(x2 % 2 == 0);
        (x2 / 2) as usize
    };
    // (t)_{2N−½−i′}(t)_{2N−n′−i′}(t)_{N−i′−½} / ((t)_{i′−½}(t)_{i′−n′}(t)_{2N−2i′})
    let num = poch[k(4 * n - 1 - i2)] * poch[k(4 * n - n2 - i2)] * poch[k(2 * n - i2 - 1)];
    let den = poch[k(i2 - 1)] * poch[k(i2 - n2)] * poch[k(4 * n - 2 * i2)];
    cis(ph1 + ph2) * num / den
}

/// sin(π(θ₁/q − J(s)))
pub fn sine_factor(pres: &SurgeryPresentation, level: &QuantumLevel, s: usize, pt: LatticePoint) -> f64 {
    let r = level.r as i128;
    let q = pres.slope.q as i128;
    let x = Q::new(pt.n2 as i128, r * q) - pres.comb.j(s);
    <Complex64 as Scalar>::sin_pi_q(x).re
}

pub fn g_n(pres: &SurgeryPresentation, level: &QuantumLevel, s: usize, pt: LatticePoint, poch: &[Complex64]) -> Complex64 {
    let sign = if pres.comb.p_table[s] % 2 == 0 { 1.0 } else { -1.0 };
    exp_potential_exact(pres, level, s, pt, poch) * sine_factor(pres, level, s, pt) * sign
}

/// The lattice |n′| ≤ i′ ≤ N − ½.
pub fn lattice(level: &QuantumLevel) -> impl Iterator<Item = LatticePoint> {
    let n = level.n as i64;
    (-(2 * n - 1)..=(2 * n - 1)).step_by(2).flat_map(move |n2| {
        (n2.abs()..=(2 * n - 1)).step_by(2).map(move |i2| LatticePoint { n2, i2 })
    })
}

/// Normalized J_N from the lattice sum (double precision).
pub fn rt_top_color(pres: &SurgeryPresentation, level: &QuantumLevel) -> Complex64 {
    let r = level.r as i128;
    let n = level.n as i128;
    let bl = pres.ncf.b[pres.l() - 1] as i128;
    let poch = pochhammer_table(level);
    let mut total = Complex64::new(0.0, 0.0);
    for s in 0..pres.slope.q.unsigned_abs() as usize {
        for pt in lattice(level) {
            total += g_n(pres, level, s, pt, &poch);
        }
    }
    let front = cis(Q::new(6 * n + 1, 4) + Q::from_integer(bl) + a0_correction(&pres.ncf)) * (r as f64).sqrt() / (PI / r as f64).sin();
    kappa_n(pres, level) * front * total
}
