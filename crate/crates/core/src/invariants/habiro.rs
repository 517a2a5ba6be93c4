//! The Whitehead-link bracket ⟨e_{m−1}, e_n⟩ from Habiro's cyclotomic formula.

use crate::scalar::Scalar;
use crate::special::QuantumLevel;
use num_complex::Complex64;

/// {k} = 2i·sin(2πk/r) for k = 0..=len.
pub(crate) fn braces<T: Scalar>(r: u32, len: usize) -> Vec<T> {
    let two_i = T::i_pow(1) * T::from_int(2);
    (0..=len as i128).map(|k| two_i * T::sin_pi(2 * k, r as i128)).collect()
}

/// Π_{k=a..=b} {k}
fn brace_prod<T: Scalar>(br: &[T], a: i64, b: i64) -> T {
    let mut p = T::one();
    for k in a..=b {
        p = p * br[k as usize];
    }
    p
}

/// ⟨e_{m−1}, e_n⟩ for 1 ≤ m, 0 ≤ n ≤ r−2, as a sum over i ≤ min(m−1, n) of
/// (−1)^{m−1+n+i} t^{i(i+3)/4}/{1} · {m+i}!{n+i+1}!{i}! / ({m−1−i}!{n−i}!{2i+1}!).
pub fn habiro_bracket_generic<T: Scalar>(m: u32, n: u32, level: &QuantumLevel) -> T {
    let r = level.r;
    let br: Vec<T> = braces(r, 2 * r as usize + 2);
    let inv1 = br[1].inv();
    let (m, n) = (m as i64, n as i64);
    let mut acc = T::zero();
    for i in 0..=(m - 1).min(n) {
        let sign = if (m - 1 + n + i) % 2 == 0 { T::one() } else { -T::one() };
        // t^{i(i+3)/4} = e^{iπ i(i+3)/r}
        let ph = T::cis_pi((i * (i + 3)) as i128, r as i128);
        let num = brace_prod(&br, m - i, m + i) * brace_prod(&br, n - i + 1, n + i + 1);
        let den = brace_prod(&br, i + 1, 2 * i + 1);
        acc = acc + sign * ph * inv1 * num * den.inv();
    }
    acc
}

pub fn habiro_bracket(m: u32, n: u32, level: &QuantumLevel) -> Complex64 {
    habiro_bracket_generic(m, n, level)
}
