//! The quadratic Gauss sum S(n) produced by summing out the first l−1 chain
//! components, in direct and collapsed form.

use crate::scalar::{Scalar, Q};
use crate::special::QuantumLevel;
use crate::surgery::NegContinuedFraction;
use num_complex::Complex64;
use num_traits::Zero;

/// x reduced into [0, 2)
pub(crate) fn mod2(x: Q) -> Q {
    let two = Q::from_integer(2);
    x - two * (x / two).floor()
}

/// Σ_{n_1..n_{l−1}=1}^{r−1} e^{iπΣb_jn_j} e^{iπΣb_jn_j²/r} {n_1} Π_{j<l} {n_j n_{j+1}}, with n_l = n.
pub fn gauss_sum_direct(n: u32, level: &QuantumLevel, ncf: &NegContinuedFraction) -> Complex64 {
    let r = level.r as i128;
    let l = ncf.len();
    let brace = |k: i128| Complex64::new(0.0, 2.0 * <Complex64 as Scalar>::sin_pi(2 * k, r).re);
    if l == 1 {
        return brace(n as i128);
    }
    let mut idx = vec![1i128; l - 1];
    let mut total = Complex64::new(0.0, 0.0);
    loop {
        let mut ph = Q::zero();
        let mut term = brace(idx[0]);
        for j in 0..l - 1 {
            let (bj, nj) = (ncf.b[j] as i128, idx[j]);
            ph += Q::new(bj * nj * r + bj * nj * nj, r);
            let next = if j + 2 == l { n as i128 } else { idx[j + 1] };
            term *= brace(nj * next);
        }
        total += term * <Complex64 as Scalar>::cis_pi_q(mod2(ph));
        // odometer
        let mut k = 0;
        loop {
            if k == l - 1 {
                return total;
            }
            idx[k] += 1;
            if idx[k] < r {
                break;
            }
            idx[k] = 1;
            k += 1;
        }
    }
}

/// Phase and modulus of τ′ = e^{iπ(l+1)/4} 2^l r^{(l−1)/2}/√q
///   · exp(−(πi/r)Σ_{i<l} 1/(C_iC_{i+1}) − (πi r/4)Σ_{i<l−1} C_iK_i²/C_{i+1}),
/// returned as (phase/π mod 2, modulus). √q is the principal root. For a chain
/// with A₀ = −1 the collapse holds only after the extra factor i·sgn(q),
/// which is folded into the phase here.
pub fn tau_prime(level: &QuantumLevel, ncf: &NegContinuedFraction) -> (Q, f64) {
    let r = level.r as i128;
    let l = ncf.len();
    let q = ncf.c[l] as i128;
    let c = |i: usize| ncf.c[i] as i128;
    let mut ph = Q::new(l as i128 + 1, 4);
    for i in 1..l {
        ph -= Q::new(1, c(i) * c(i + 1) * r);
    }
    for i in 1..l.saturating_sub(1) {
        ph -= Q::new(r, 4) * Q::from_integer(c(i)) * ncf.k[i] * ncf.k[i] / Q::from_integer(c(i + 1));
    }
    if q < 0 {
        ph -= Q::new(1, 2);
    }
    ph += a0_correction(ncf);
    let modulus = 2f64.powi(l as i32) * (r as f64).powf((l as f64 - 1.0) / 2.0) / (q.abs() as f64).sqrt();
    (mod2(ph), modulus)
}

/// Phase/π of the factor i·sgn(q) needed when A₀ = −1.
pub fn a0_correction(ncf: &NegContinuedFraction) -> Q {
    if ncf.a0_sign > 0 {
        Q::zero()
    } else if ncf.c[ncf.len()] > 0 {
        Q::new(1, 2)
    } else {
        Q::new(-1, 2)
    }
}

/// Σ_{i=1}^{l−1} (−1)^i K_i / C_{i+1}
pub(crate) fn k_shift(ncf: &NegContinuedFraction) -> Q {
    let l = ncf.len();
    let mut acc = Q::zero();
    for i in 1..l {
        let t = ncf.k[i] / Q::from_integer(ncf.c[i + 1] as i128);
        if i % 2 == 0 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    acc
}

/// Collapsed form: τ′ Σ_{s=0}^{|q|−1} e^{−(πi/r)(C_{l−1}/q)(n+sr+K_{l−1}r/2)²}
///   · sin(−π[(−1)^l(2n+2sr)/(rq) − Σ_{i<l}(−1)^iK_i/C_{i+1}]).
pub fn gauss_sum_s(n: u32, level: &QuantumLevel, ncf: &NegContinuedFraction) -> Complex64 {
    let r = level.r as i128;
    let l = ncf.len();
    let q = ncf.c[l] as i128;
    let cl1 = ncf.c[l - 1] as i128;
    let kl1 = ncf.k[l - 1];
    let shift = k_shift(ncf);
    let sign_l: i128 = if l.is_multiple_of(2) { 1 } else { -1 };
    let (tau_ph, tau_mod) = tau_prime(level, ncf);
    let mut acc = Complex64::new(0.0, 0.0);
    for s in 0..q.abs() {
        let x = Q::from_integer(n as i128 + s * r) + kl1 * Q::new(r, 2);
        let ph = -Q::new(cl1, q * r) * x * x;
        let arg = Q::new(sign_l * (2 * n as i128 + 2 * s * r), r * q) - shift;
        acc += <Complex64 as Scalar>::cis_pi_q(mod2(ph)) * <Complex64 as Scalar>::sin_pi_q(-arg).re;
    }
    acc * <Complex64 as Scalar>::cis_pi_q(tau_ph) * tau_mod
}
