//! Complex dilogarithm (principal branch) and the Lobachevsky function.

#![allow(clippy::excessive_precision)]

use num_complex::Complex64;
use std::f64::consts::PI;

const ZETA2: f64 = PI * PI / 6.0;

/// Whether an argument sat on the branch cut (1, ∞).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutFlag {
    Regular,
    /// evaluated as the limit from the lower half-plane
    OnCut,
}

// B_n/(n+1)! for the series in u = −log(1−z)
const BF: [f64; 10] = [
    -1.0 / 4.0,
    1.0 / 36.0,
    -1.0 / 3600.0,
    1.0 / 211680.0,
    -1.0 / 10886400.0,
    1.0 / 526901760.0,
    -4.064_761_645_144_225_5e-11,
    8.921_691_020_456_452_6e-13,
    -1.993_929_586_072_107_6e-14,
    4.518_980_029_619_918_2e-16,
];

fn bernoulli_series(u: Complex64) -> Complex64 {
    let u2 = u * u;
    let mut acc = Complex64::new(BF[9], 0.0);
    for &c in BF[1..9].iter().rev() {
        acc = acc * u2 + c;
    }
    u + u2 * (BF[0] + u * acc)
}

fn real_dilog_above_one(x: f64) -> f64 {
    // Re Li₂(x) = π²/3 − ½ log²x − Li₂(1/x) for x > 1
    let l = x.ln();
    2.0 * ZETA2 - 0.5 * l * l - dilog(Complex64::new(1.0 / x, 0.0)).re
}

/// Li₂(z) on the principal branch, holomorphic off [1, ∞).
pub fn dilog(z: Complex64) -> Complex64 {
    dilog_flagged(z).0
}

/// Li₂(z) plus a flag telling whether z lay on the cut (1, ∞).
pub fn dilog_flagged(z: Complex64) -> (Complex64, CutFlag) {
    if z.im == 0.0 && z.re > 1.0 {
        let x = z.re;
        return (Complex64::new(real_dilog_above_one(x), -PI * x.ln()), CutFlag::OnCut);
    }
    (dilog_off_cut(z), CutFlag::Regular)
}

fn dilog_off_cut(z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    if z.im == 0.0 {
        if z.re == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if z.re == 1.0 {
            return Complex64::new(ZETA2, 0.0);
        }
    }
    let nz = z.norm_sqr();
    if nz < 1e-18 {
        return z * (one + z * 0.25);
    }
    let (u, rest, sgn) = if z.re <= 0.5 {
        if nz > 1.0 {
            let l = (-z).ln();
            (-(one - one / z).ln(), -0.5 * l * l - ZETA2, -1.0)
        } else {
            (-(one - z).ln(), Complex64::new(0.0, 0.0), 1.0)
        }
    } else if nz <= 2.0 * z.re {
        let l = z.ln();
        (-l, -l * (one - z).ln() + ZETA2, -1.0)
    } else {
        let l = (-z).ln();
        (-(one - one / z).ln(), -0.5 * l * l - ZETA2, -1.0)
    };
    rest + bernoulli_series(u) * sgn
}

/// Clausen function Cl₂(x) = Σ sin(nx)/n².
pub fn clausen2(x: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut y = x.rem_euclid(two_pi);
    let mut sign = 1.0;
    if y > PI {
        y = two_pi - y;
        sign = -1.0;
    }
    if y == 0.0 || y == PI {
        return 0.0;
    }
    // Cl₂(y) = y − y log y + Σ_k 2ζ(2k) y (y/2π)^{2k} / (2k(2k+1)), |y| ≤ π
    let w = (y / two_pi) * (y / two_pi);
    let mut pw = 1.0;
    let mut sum = 0.0;
    for k in 1..=60 {
        pw *= w;
        let kk = k as f64;
        let term = 2.0 * zeta_even(k) * pw / (2.0 * kk * (2.0 * kk + 1.0));
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
    }
    sign * (y - y * y.ln() + y * sum)
}

fn zeta_even(k: u32) -> f64 {
    match k {
        1 => ZETA2,
        2 => PI.powi(4) / 90.0,
        _ => {
            let s = 2.0 * k as f64;
            let mut acc = 0.0;
            for n in (1..=40).rev() {
                acc += (n as f64).powf(-s);
            }
            // midpoint estimate of the remaining tail
            acc + 40.5f64.powf(1.0 - s) / (s - 1.0)
        }
    }
}

/// Λ(θ) = Σ sin(2πnθ)/(2πn²) = Cl₂(2πθ)/(2π); odd and 1-periodic.
pub fn lobachevsky(theta: f64) -> f64 {
    clausen2(2.0 * PI * theta) / (2.0 * PI)
}

/// Bloch–Wigner D(z) = Im Li₂(z) + arg(1−z)·log|z|, the volume of the ideal tetrahedron of shape z.
pub fn bloch_wigner(z: Complex64) -> f64 {
    dilog(z).im + (1.0 - z).arg() * z.norm().ln()
}

/// Vol(S³∖W) = 8π·Λ(1/4), the volume of the regular ideal octahedron.
pub fn whitehead_volume() -> f64 {
    8.0 * PI * lobachevsky(0.25)
}
