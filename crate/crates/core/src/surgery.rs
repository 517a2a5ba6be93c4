//! Integer and rational combinatorics of the surgery presentation: Bézout
//! data, negative continued fractions, the linking-matrix signature and the
//! index maps I, J, K, P over s ∈ {0, …, |q|−1}.

use crate::error::{Error, Result};
use crate::scalar::Q;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SurgerySlope {
    pub p: i64,
    pub q: i64,
    pub p_star: i64,
    pub q_star: i64,
}

impl SurgerySlope {
    pub fn new(p: i64, q: i64) -> Result<SurgerySlope> {
        let (p_star, q_star) = bezout(p, q)?;
        Ok(SurgerySlope { p, q, p_star, q_star })
    }

    /// The same slope written as (−p, −q).
    pub fn negated(&self) -> Result<SurgerySlope> {
        SurgerySlope::new(-self.p, -self.q)
    }
}

/// p*·p + q*·q = 1 with 0 ≤ p* < |q| when |q| > 1.
pub fn bezout(p: i64, q: i64) -> Result<(i64, i64)> {
    if q == 0 || p.gcd(&q) != 1 {
        return Err(Error::NotCoprime { p, q });
    }
    let aq = q.abs();
    if aq == 1 {
        // p* = p works when p = ±1; otherwise take p* = 0
        return Ok(if p.abs() == 1 { (p, 0) } else { (0, q) });
    }
    let e = p.extended_gcd(&aq);
    let p_star = (e.x * e.gcd).rem_euclid(aq);
    let q_star = (1 - p_star as i128 * p as i128) / q as i128;
    Ok((p_star, q_star as i64))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NegContinuedFraction {
    /// b₁..b_l
    pub b: Vec<i64>,
    pub a0_sign: i64,
    /// A₀..A_l
    pub a: Vec<i64>,
    /// C₀..C_l
    pub c: Vec<i64>,
    /// K₀..K_l with K₀ = 0
    #[serde(skip)]
    pub k: Vec<Q>,
    pub sigma: i64,
    /// nullity of the linking matrix
    pub nullity: usize,
}

impl NegContinuedFraction {
    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    /// Build from explicit terms, choosing A₀ = ±1 so that A_l = p, C_l = q.
    pub fn from_terms(b: &[i64], slope: &SurgerySlope) -> Result<NegContinuedFraction> {
        if b.is_empty() {
            return Err(Error::Domain("continued fraction needs at least one term".into()));
        }
        for a0 in [1i64, -1] {
            let (a, c) = recursion(b, a0);
            let l = b.len();
            if a[l] == slope.p && c[l] == slope.q {
                if c[1..].contains(&0) {
                    return Err(Error::Domain(format!(
                        "continued fraction {b:?} has a vanishing C_i; K_i undefined"
                    )));
                }
                let mut k = vec![Q::zero()];
                let mut acc: i128 = 0;
                for i in 1..=l {
                    acc += b[i - 1] as i128 * c[i] as i128;
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    k.push(Q::new(sign * acc, c[i] as i128));
                }
                let (sigma, nullity) = linking_signature(b);
                return Ok(NegContinuedFraction { b: b.to_vec(), a0_sign: a0, a, c, k, sigma, nullity });
            }
        }
        Err(Error::Domain(format!(
            "{b:?} is not a negative continued fraction of {}/{}",
            slope.p, slope.q
        )))
    }

    /// Σ_{j≤i} b_j C_j
    pub fn partial_bc(&self, i: usize) -> i128 {
        (1..=i).map(|j| self.b[j - 1] as i128 * self.c[j] as i128).sum()
    }

    pub fn sum_b(&self) -> i64 {
        self.b.iter().sum()
    }

    /// Value b_l − 1/(b_{l−1} − …) as an exact rational, or None if a
    /// partial denominator vanishes.
    pub fn value(&self) -> Option<Q> {
        let mut v = Q::from_integer(self.b[0] as i128);
        for &bi in &self.b[1..] {
            if v.is_zero() {
                return None;
            }
            v = Q::from_integer(bi as i128) - v.recip();
        }
        Some(v)
    }
}

fn recursion(b: &[i64], a0: i64) -> (Vec<i64>, Vec<i64>) {
    let mut a = vec![a0];
    let mut c = vec![0];
    for (i, &bi) in b.iter().enumerate() {
        let ai = bi * a[i] - c[i];
        c.push(a[i]);
        a.push(ai);
    }
    (a, c)
}

/// Greedy ceiling expansion p/q = b_l − 1/(b_{l−1} − … − 1/b₁).
pub fn expand_ncf(slope: &SurgerySlope) -> NegContinuedFraction {
    let (mut num, mut den) = (slope.p as i128, slope.q as i128);
    if den < 0 {
        num = -num;
        den = -den;
    }
    // terms come out as b_l, b_{l-1}, ...
    let mut rev = Vec::new();
    loop {
        let b = Integer::div_ceil(&num, &den);
        rev.push(b as i64);
        let rem = b * den - num;
        if rem == 0 {
            break;
        }
        let next = (den, rem);
        num = next.0;
        den = next.1;
    }
    rev.reverse();
    NegContinuedFraction::from_terms(&rev, slope).expect("ceiling expansion is always valid")
}

/// Signature of the tridiagonal matrix with diagonal b and unit off-diagonals,
/// by exact LDLᵀ (2×2 pivots on zero diagonal). Returns (signature, nullity).
pub fn linking_signature(b: &[i64]) -> (i64, usize) {
    let mut sig = 0i64;
    let mut nullity = 0usize;
    let mut i = 0;
    let mut d = Q::from_integer(b[0] as i128);
    loop {
        let last = i + 1 == b.len();
        if d.is_zero() {
            if last {
                nullity += 1;
                break;
            }
            // block [[0,1],[1,b_{i+1}]] has one positive and one negative eigenvalue;
            // the next Schur complement restarts at b_{i+2}
            i += 2;
            if i >= b.len() {
                break;
            }
            d = Q::from_integer(b[i] as i128);
            continue;
        }
        sig += if d.is_positive() { 1 } else { -1 };
        if last {
            break;
        }
        i += 1;
        d = Q::from_integer(b[i] as i128) - d.recip();
    }
    (sig, nullity)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurgeryCombinatorics {
    pub s_plus: usize,
    pub s_minus: usize,
    pub m_plus: i64,
    pub m_minus: i64,
    /// I(s) reduced into {0, …, 2|q|−1}
    pub i_table: Vec<i64>,
    #[serde(skip)]
    pub j_table: Vec<Q>,
    #[serde(skip)]
    pub k_table: Vec<Q>,
    pub p_table: Vec<i64>,
}

impl SurgeryCombinatorics {
    pub fn j(&self, s: usize) -> Q {
        self.j_table[s]
    }
    pub fn k(&self, s: usize) -> Q {
        self.k_table[s]
    }
}

/// −C_{l−1}(2s+1+K_{l−1}) as an exact integer.
pub fn i_unreduced(ncf: &NegContinuedFraction, s: i64) -> i128 {
    let l = ncf.len();
    let c = ncf.c[l - 1] as i128;
    let sign: i128 = if l.is_multiple_of(2) { 1 } else { -1 };
    -c * (2 * s as i128 + 1) + sign * ncf.partial_bc(l - 1)
}

pub fn j_of(ncf: &NegContinuedFraction, s: i64) -> Q {
    let l = ncf.len();
    let q = ncf.c[l] as i128;
    let mut tail = Q::zero();
    for i in 1..l {
        let t = ncf.k[i] / Q::from_integer(ncf.c[i + 1] as i128);
        if i % 2 == 1 {
            tail += t;
        } else {
            tail -= t;
        }
    }
    if l % 2 == 1 {
        tail = -tail;
    }
    Q::new(2 * s as i128 + 1, q) + tail
}

pub fn k_of(ncf: &NegContinuedFraction, s: i64) -> Q {
    let l = ncf.len();
    let q = ncf.c[l] as i128;
    let cl1 = ncf.c[l - 1] as i128;
    let x = Q::from_integer(2 * s as i128 + 1) + ncf.k[l - 1];
    let mut out = Q::from_integer(cl1) * x * x / Q::from_integer(q);
    for i in 1..l.saturating_sub(1) {
        out += Q::from_integer(ncf.c[i] as i128) * ncf.k[i] * ncf.k[i]
            / Q::from_integer(ncf.c[i + 1] as i128);
    }
    out
}

pub fn build_combinatorics(ncf: &NegContinuedFraction, slope: &SurgerySlope) -> Result<SurgeryCombinatorics> {
    let q = slope.q;
    let aq = q.abs();
    let two_q = 2 * aq as i128;
    let mut i_table = Vec::with_capacity(aq as usize);
    let mut p_table = Vec::with_capacity(aq as usize);
    let mut j_table = Vec::with_capacity(aq as usize);
    let mut k_table = Vec::with_capacity(aq as usize);
    for s in 0..aq {
        let raw = i_unreduced(ncf, s);
        let red = raw.rem_euclid(two_q);
        i_table.push(red as i64);
        p_table.push(((raw - red) / two_q) as i64);
        j_table.push(j_of(ncf, s));
        k_table.push(k_of(ncf, s));
    }
    let find = |target: i64| -> Result<(usize, i64)> {
        let t = (target as i128).rem_euclid(two_q) as i64;
        let s = i_table
            .iter()
            .position(|&v| v == t)
            .ok_or_else(|| Error::Internal(format!("no s with I(s) ≡ {target} mod {}", 2 * aq)))?;
        let m = (i_table[s] - target) as i128;
        debug_assert!(m % (2 * q as i128) == 0);
        Ok((s, (m / (2 * q as i128)) as i64))
    };
    let (s_plus, m_plus) = find(1 - q)?;
    let (s_minus, m_minus) = find(-1 - q)?;
    Ok(SurgeryCombinatorics { s_plus, s_minus, m_plus, m_minus, i_table, j_table, k_table, p_table })
}

/// Everything about a slope that the invariant and asymptotic code needs.
#[derive(Clone, Debug, Serialize)]
pub struct SurgeryPresentation {
    pub slope: SurgerySlope,
    pub ncf: NegContinuedFraction,
    pub comb: SurgeryCombinatorics,
}

impl SurgeryPresentation {
    pub fn new(p: i64, q: i64) -> Result<SurgeryPresentation> {
        let slope = SurgerySlope::new(p, q)?;
        let ncf = expand_ncf(&slope);
        let comb = build_combinatorics(&ncf, &slope)?;
        Ok(SurgeryPresentation { slope, ncf, comb })
    }

    pub fn with_terms(p: i64, q: i64, b: &[i64]) -> Result<SurgeryPresentation> {
        let slope = SurgerySlope::new(p, q)?;
        let ncf = NegContinuedFraction::from_terms(b, &slope)?;
        let comb = build_combinatorics(&ncf, &slope)?;
        Ok(SurgeryPresentation { slope, ncf, comb })
    }

    pub fn l(&self) -> usize {
        self.ncf.len()
    }
}

/// x mod 1 in [0, 1)
pub fn frac(x: Q) -> Q {
    x - Q::from_integer(x.floor().to_integer())
}

pub fn is_integer(x: Q) -> bool {
    x.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bezout_examples() {
        assert_eq!(bezout(1, 1).unwrap(), (1, 0));
        assert_eq!(bezout(1, -2).unwrap(), (1, 0));
        assert_eq!(bezout(3, 5).unwrap(), (2, -1));
        assert!(matches!(bezout(2, 4), Err(Error::NotCoprime { .. })));
        assert!(bezout(1, 0).is_err());
    }

    #[test]
    fn expansion_examples() {
        let s = SurgerySlope::new(1, 1).unwrap();
        let n = expand_ncf(&s);
        assert_eq!(n.b, vec![1]);
        assert_eq!(n.a, vec![1, 1]);
        assert_eq!(n.c, vec![0, 1]);

        let s = SurgerySlope::new(5, 2).unwrap();
        let n = expand_ncf(&s);
        assert_eq!(n.b, vec![2, 3]);
        assert_eq!(n.value(), Some(Q::new(5, 2)));

        let s = SurgerySlope::new(1, -2).unwrap();
        let n = NegContinuedFraction::from_terms(&[-2, -1], &s).unwrap();
        assert_eq!(n.value(), Some(Q::new(-1, 2)));
        assert_eq!((n.a[2], n.c[2]), (1, -2));
        let g = expand_ncf(&s);
        assert_eq!((g.a[g.len()], g.c[g.len()]), (1, -2));
    }

    #[test]
    fn signature_examples() {
        assert_eq!(linking_signature(&[1]), (1, 0));
        assert_eq!(linking_signature(&[3, 2]), (2, 0));
        assert_eq!(linking_signature(&[-2, -1]), (-2, 0));
        assert_eq!(linking_signature(&[0]), (0, 1));
        // [[0,1],[1,0]] is hyperbolic
        assert_eq!(linking_signature(&[0, 0]), (0, 0));
        assert_eq!(linking_signature(&[2, 0]), (0, 0));
    }

    #[test]
    fn k_times_c_is_integral() {
        let p = SurgeryPresentation::new(13, 8).unwrap();
        for i in 1..=p.l() {
            assert!(is_integer(p.ncf.k[i] * Q::from_integer(p.ncf.c[i] as i128)));
        }
    }

    #[test]
    fn unit_denominator_has_single_index() {
        let p = SurgeryPresentation::new(7, 1).unwrap();
        assert_eq!((p.comb.s_plus, p.comb.s_minus), (0, 0));
    }

    #[test]
    fn minus_two_indices_by_enumeration() {
        let p = SurgeryPresentation::with_terms(1, -2, &[-2, -1]).unwrap();
        let q = -2i64;
        for (s, m, target) in [(p.comb.s_plus, p.comb.m_plus, 1 - q), (p.comb.s_minus, p.comb.m_minus, -1 - q)] {
            assert!(s < 2);
            assert_eq!(p.comb.i_table[s], target + 2 * m * q);
        }
    }
}
