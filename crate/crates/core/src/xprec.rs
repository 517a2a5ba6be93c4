//! Software floating point with a 128-bit significand.
//!
//! Only what the invariant sums need: ring operations, division, square
//! roots and sine/cosine of rational multiples of π. Values are stored as
//! `man · 2^exp` with a normalized mantissa (top bit set) or zero.

use num_complex::Complex64;
use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

const TOP: u128 = 1 << 127;
const LO64: u128 = u64::MAX as u128;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Xf {
    neg: bool,
    exp: i64,
    man: u128,
}

fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    let (a1, a0) = (a >> 64, a & LO64);
    let (b1, b0) = (b >> 64, b & LO64);
    let p00 = a0 * b0;
    let p01 = a0 * b1;
    let p10 = a1 * b0;
    let p11 = a1 * b1;
    let mid = (p00 >> 64) + (p01 & LO64) + (p10 & LO64);
    let lo = (p00 & LO64) | (mid << 64);
    let hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    (hi, lo)
}

fn shr_wide(m: u128, d: u64) -> (u128, u128) {
    match d {
        0 => (m, 0),
        1..=127 => (m >> d, m << (128 - d)),
        128 => (0, m),
        129..=255 => (0, m >> (d - 128)),
        _ => (0, 0),
    }
}

fn ldexp_f64(mut v: f64, mut k: i64) -> f64 {
    while k > 1000 {
        v *= 2f64.powi(1000);
        k -= 1000;
        if v.is_infinite() {
            return v;
        }
    }
    while k < -1000 {
        v *= 2f64.powi(-1000);
        k += 1000;
        if v == 0.0 {
            return v;
        }
    }
    v * 2f64.powi(k as i32)
}

impl Xf {
    pub const ZERO: Xf = Xf { neg: false, exp: 0, man: 0 };
    pub const ONE: Xf = Xf { neg: false, exp: -127, man: TOP };
    /// π rounded to 128 bits.
    pub const PI: Xf = Xf {
        neg: false,
        exp: -126,
        man: 0xC90F_DAA2_2168_C234_C4C6_628B_80DC_1CD1,
    };

    fn round_pack(neg: bool, exp: i64, hi: u128, lo: u128) -> Xf {
        let mut m = hi;
        let mut e = exp;
        if lo >> 127 == 1 {
            let (s, c) = m.overflowing_add(1);
            if c {
                m = TOP;
                e += 1;
            } else {
                m = s;
            }
        }
        Xf { neg, exp: e, man: m }
    }

    pub fn is_zero(&self) -> bool {
        self.man == 0
    }

    pub fn is_negative(&self) -> bool {
        self.neg && self.man != 0
    }

    pub fn from_f64(x: f64) -> Xf {
        assert!(x.is_finite(), "non-finite value in extended arithmetic");
        if x == 0.0 {
            return Xf::ZERO;
        }
        let bits = x.to_bits();
        let neg = bits >> 63 == 1;
        let e_bits = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if e_bits == 0 {
            (frac as u128, -1074i64)
        } else {
            ((frac | (1u64 << 52)) as u128, e_bits - 1075)
        };
        let lz = m.leading_zeros() as i64;
        Xf { neg, exp: e - lz, man: m << lz }
    }

    pub fn from_i128(v: i128) -> Xf {
        if v == 0 {
            return Xf::ZERO;
        }
        let m = v.unsigned_abs();
        let lz = m.leading_zeros() as i64;
        Xf { neg: v < 0, exp: -lz, man: m << lz }
    }

    pub fn to_f64(&self) -> f64 {
        if self.man == 0 {
            return 0.0;
        }
        let mut hi = (self.man >> 64) as u64;
        if self.man & LO64 != 0 {
            hi |= 1;
        }
        let v = ldexp_f64(hi as f64, self.exp + 64);
        if self.neg {
            -v
        } else {
            v
        }
    }

    /// Binary exponent of the leading bit (value in [2^e, 2^{e+1})).
    pub fn ilog2(&self) -> Option<i64> {
        if self.man == 0 {
            None
        } else {
            Some(self.exp + 127)
        }
    }

    pub fn ldexp(self, k: i64) -> Xf {
        if self.man == 0 {
            self
        } else {
            Xf { exp: self.exp + k, ..self }
        }
    }

    pub fn abs(self) -> Xf {
        Xf { neg: false, ..self }
    }

    fn cmp_mag(&self, other: &Xf) -> Ordering {
        match (self.man == 0, other.man == 0) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => self.exp.cmp(&other.exp).then(self.man.cmp(&other.man)),
        }
    }

    fn add_impl(a: Xf, b: Xf) -> Xf {
        if a.man == 0 {
            return b;
        }
        if b.man == 0 {
            return a;
        }
        let (x, y) = if a.cmp_mag(&b) != Ordering::Less { (a, b) } else { (b, a) };
        let d = (x.exp - y.exp) as u64;
        if d >= 256 {
            return x;
        }
        let (yh, yl) = shr_wide(y.man, d);
        if x.neg == y.neg {
            let (hi, carry) = x.man.overflowing_add(yh);
            if carry {
                let lo = (yl >> 1) | (hi << 127);
                let hi = (hi >> 1) | TOP;
                Xf::round_pack(x.neg, x.exp + 1, hi, lo)
            } else {
                Xf::round_pack(x.neg, x.exp, hi, yl)
            }
        } else {
            let (lo, borrow) = 0u128.overflowing_sub(yl);
            let hi = x.man - yh - borrow as u128;
            if hi == 0 && lo == 0 {
                return Xf::ZERO;
            }
            let lz = if hi != 0 { hi.leading_zeros() } else { 128 + lo.leading_zeros() } as u64;
            let (nh, nl) = match lz {
                0 => (hi, lo),
                1..=127 => ((hi << lz) | (lo >> (128 - lz)), lo << lz),
                128 => (lo, 0),
                _ => (lo << (lz - 128), 0),
            };
            Xf::round_pack(x.neg, x.exp - lz as i64, nh, nl)
        }
    }

    fn mul_impl(a: Xf, b: Xf) -> Xf {
        if a.man == 0 || b.man == 0 {
            return Xf::ZERO;
        }
        let (hi, lo) = mul_wide(a.man, b.man);
        let neg = a.neg != b.neg;
        if hi >> 127 == 1 {
            Xf::round_pack(neg, a.exp + b.exp + 128, hi, lo)
        } else {
            let h = (hi << 1) | (lo >> 127);
            Xf::round_pack(neg, a.exp + b.exp + 127, h, lo << 1)
        }
    }

    pub fn recip(self) -> Xf {
        assert!(self.man != 0, "division by zero in extended arithmetic");
        let bm = ((self.man >> 64) as u64) as f64 * 2f64.powi(-63);
        let mut y = Xf::from_f64(1.0 / bm).ldexp(-(self.exp + 127));
        if self.neg {
            y = -y;
        }
        for _ in 0..2 {
            let e = Xf::ONE - self * y;
            y = y + y * e;
        }
        y
    }

    fn div_impl(self, b: Xf) -> Xf {
        let y = b.recip();
        let q = self * y;
        let r = self - b * q;
        q + r * y
    }

    pub fn sqrt(self) -> Xf {
        assert!(!self.is_negative(), "square root of a negative number");
        if self.man == 0 {
            return self;
        }
        // scale to an even exponent so the f64 seed is exact in range
        let e = self.exp + 127;
        let shift = e - e.rem_euclid(2);
        let m = self.ldexp(-shift);
        let seed = 1.0 / m.to_f64().sqrt();
        let mut y = Xf::from_f64(seed);
        let half = Xf::from_f64(0.5);
        for _ in 0..2 {
            let e = Xf::ONE - m * y * y;
            y = y + y * e * half;
        }
        let mut s = m * y;
        s = s + y * (m - s * s) * half;
        s.ldexp(shift / 2)
    }

    /// sin(πx), cos(πx) for x = num/den, with exact argument reduction.
    pub fn sin_cos_pi(num: i128, den: i128) -> (Xf, Xf) {
        assert!(den != 0);
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let x = num.rem_euclid(2 * den);
        // nearest quarter turn
        let j = (4 * x + den).div_euclid(2 * den);
        let rho = 2 * x - j * den;
        let phi = Xf::PI * (Xf::from_i128(rho) / Xf::from_i128(2 * den));
        let (s, c) = taylor_sin_cos(phi);
        match j.rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }
}

fn taylor_sin_cos(phi: Xf) -> (Xf, Xf) {
    if phi.is_zero() {
        return (Xf::ZERO, Xf::ONE);
    }
    let p2 = -(phi * phi);
    let mut s = phi;
    let mut ts = phi;
    let mut c = Xf::ONE;
    let mut tc = Xf::ONE;
    let mut k: i128 = 1;
    loop {
        ts = ts * p2 / Xf::from_i128((2 * k) * (2 * k + 1));
        tc = tc * p2 / Xf::from_i128((2 * k - 1) * (2 * k));
        s = s + ts;
        c = c + tc;
        k += 1;
        let small = |t: &Xf| t.is_zero() || t.ilog2().unwrap() < -140;
        if small(&ts) && small(&tc) {
            break;
        }
    }
    (s, c)
}

impl Add for Xf {
    type Output = Xf;
    fn add(self, rhs: Xf) -> Xf {
        Xf::add_impl(self, rhs)
    }
}

impl Sub for Xf {
    type Output = Xf;
    fn sub(self, rhs: Xf) -> Xf {
        Xf::add_impl(self, -rhs)
    }
}

impl Mul for Xf {
    type Output = Xf;
    fn mul(self, rhs: Xf) -> Xf {
        Xf::mul_impl(self, rhs)
    }
}

impl Div for Xf {
    type Output = Xf;
    fn div(self, rhs: Xf) -> Xf {
        Xf::div_impl(self, rhs)
    }
}

impl Neg for Xf {
    type Output = Xf;
    fn neg(self) -> Xf {
        if self.man == 0 {
            self
        } else {
            Xf { neg: !self.neg, ..self }
        }
    }
}

/// Complex number over [`Xf`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Xc {
    pub re: Xf,
    pub im: Xf,
}

impl Xc {
    pub const ZERO: Xc = Xc { re: Xf::ZERO, im: Xf::ZERO };
    pub const ONE: Xc = Xc { re: Xf::ONE, im: Xf::ZERO };

    pub fn new(re: Xf, im: Xf) -> Xc {
        Xc { re, im }
    }

    pub fn from_c64(z: Complex64) -> Xc {
        Xc { re: Xf::from_f64(z.re), im: Xf::from_f64(z.im) }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn scale(self, k: Xf) -> Xc {
        Xc { re: self.re * k, im: self.im * k }
    }

    pub fn conj(self) -> Xc {
        Xc { re: self.re, im: -self.im }
    }

    pub fn norm_sqr(self) -> Xf {
        self.re * self.re + self.im * self.im
    }

    pub fn inv(self) -> Xc {
        let d = self.norm_sqr().recip();
        Xc { re: self.re * d, im: -(self.im * d) }
    }

    /// e^{iπ num/den}
    pub fn cis_pi(num: i128, den: i128) -> Xc {
        let (s, c) = Xf::sin_cos_pi(num, den);
        Xc { re: c, im: s }
    }
}

impl Add for Xc {
    type Output = Xc;
    fn add(self, o: Xc) -> Xc {
        Xc { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for Xc {
    type Output = Xc;
    fn sub(self, o: Xc) -> Xc {
        Xc { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for Xc {
    type Output = Xc;
    fn mul(self, o: Xc) -> Xc {
        Xc {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}

impl Neg for Xc {
    type Output = Xc;
    fn neg(self) -> Xc {
        Xc { re: -self.re, im: -self.im }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: Xf, b: Xf) -> f64 {
        ((a - b).abs().to_f64() / b.abs().to_f64()).abs()
    }

    #[test]
    fn roundtrip_f64() {
        for &x in &[1.0, -2.5, 1e-300, 3.7e250, std::f64::consts::PI, -0.1] {
            assert_eq!(Xf::from_f64(x).to_f64(), x);
        }
    }

    #[test]
    fn pi_matches_f64() {
        assert_eq!(Xf::PI.to_f64(), std::f64::consts::PI);
    }

    #[test]
    fn exact_small_integers() {
        let a = Xf::from_i128(123456789);
        let b = Xf::from_i128(987654321);
        assert_eq!((a * b).to_f64(), 121932631112635269.0);
        assert_eq!((a - a).to_f64(), 0.0);
        assert_eq!((b - a).to_f64(), 864197532.0);
    }

    #[test]
    fn division_and_sqrt_hold_beyond_double() {
        let three = Xf::from_i128(3);
        let third = Xf::ONE / three;
        let back = third * three - Xf::ONE;
        assert!(back.is_zero() || back.ilog2().unwrap() < -125);
        let s = Xf::from_i128(2).sqrt();
        let err = s * s - Xf::from_i128(2);
        assert!(err.is_zero() || err.ilog2().unwrap() < -124);
    }

    #[test]
    fn cancellation_keeps_low_bits() {
        // (1 + 2^-100) - 1 = 2^-100 exactly
        let tiny = Xf::ONE.ldexp(-100);
        let d = (Xf::ONE + tiny) - Xf::ONE;
        assert_eq!(d, tiny);
    }

    #[test]
    fn sine_of_pi_is_tiny() {
        let (s, c) = Xf::sin_cos_pi(1, 1);
        assert!(s.is_zero() || s.ilog2().unwrap() < -120);
        assert_eq!(c.to_f64(), -1.0);
        // sin(π/6) = 1/2 to full precision
        let (s, _) = Xf::sin_cos_pi(1, 6);
        let e = s - Xf::from_f64(0.5);
        assert!(e.is_zero() || e.ilog2().unwrap() < -125);
    }

    #[test]
    fn pythagoras_over_many_angles() {
        for den in [7i128, 13, 101, 403] {
            for num in -2 * den..2 * den {
                let (s, c) = Xf::sin_cos_pi(num, den);
                let e = s * s + c * c - Xf::ONE;
                assert!(e.is_zero() || e.ilog2().unwrap() < -122, "{num}/{den}");
                let f = (std::f64::consts::PI * num as f64 / den as f64).sin();
                assert!((s.to_f64() - f).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn sqrt_three_digits() {
        // sqrt(3) to 36 significant digits
        let s = Xf::from_i128(3).sqrt();
        let reference = Xf::from_i128(1_732_050_807_568_877_293_527_446_341_505_872_366) / Xf::from_i128(10).powi(36);
        assert!(rel(s, reference) < 1e-35);
    }

    impl Xf {
        fn powi(self, n: u32) -> Xf {
            (0..n).fold(Xf::ONE, |acc, _| acc * self)
        }
    }
}
