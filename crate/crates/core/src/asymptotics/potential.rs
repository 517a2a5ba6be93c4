//! Limit potentials written as πi·(quadratic polynomial) + Σ c·Li₂(e^{2πi(a₁θ₁+a₂θ₂+h)})/(2πi).
//!
//! Every potential used here has that shape, so value, gradient and Hessian
//! all come from one routine.

use crate::error::{Error, Result};
use crate::special::{dilog_flagged, CutFlag};
use crate::surgery::SurgeryPresentation;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Li2Term {
    pub coef: f64,
    pub a1: f64,
    pub a2: f64,
    pub shift: f64,
}

impl Li2Term {
    fn new(coef: f64, a1: f64, a2: f64) -> Li2Term {
        Li2Term { coef, a1, a2, shift: 0.0 }
    }

    fn arg(&self, t1: Complex64, t2: Complex64) -> Complex64 {
        (t1 * self.a1 + t2 * self.a2 + self.shift) * (2.0 * PI) * I
    }
}

/// Coefficients of c11θ₁² + c12θ₁θ₂ + c22θ₂² + c1θ₁ + c2θ₂ + c0.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Quadratic {
    pub c11: f64,
    pub c12: f64,
    pub c22: f64,
    pub c1: f64,
    pub c2: f64,
    pub c0: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// Which potential to build.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum PotentialKind {
    /// V^± in the symmetric Li₂ form
    Signed(Sign),
    /// V(p,q,s,θ₁,θ₂;m₁,m₂)
    General { s: usize, m1: i64, m2: i64 },
    /// V⁺(p,q;x,θ₁,θ₂), the color-ratio deformation
    Deformed { x: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PotentialParams {
    pub p: i64,
    pub q: i64,
    pub p_star: i64,
    pub kind: PotentialKind,
    pub poly: Quadratic,
    pub terms: Vec<Li2Term>,
}

#[derive(Clone, Copy, Debug)]
pub struct PotentialEval {
    pub value: Complex64,
    pub grad: [Complex64; 2],
    pub hess: [[Complex64; 2]; 2],
}

impl PotentialParams {
    pub fn signed(pres: &SurgeryPresentation, sign: Sign) -> PotentialParams {
        let mut v = PotentialParams::signed_real(pres.slope.p as f64, pres.slope.q as f64, pres.slope.p_star as f64, sign);
        v.p = pres.slope.p;
        v.q = pres.slope.q;
        v.p_star = pres.slope.p_star;
        v
    }

    /// V^± with real (p, q, p′), used for continuation between slopes. The
    /// integer fields are left at zero.
    pub fn signed_real(p: f64, q: f64, p_star: f64, sign: Sign) -> PotentialParams {
        let lin = match sign {
            Sign::Plus => -1.0 / q,
            Sign::Minus => 1.0 / q,
        };
        PotentialParams {
            p: 0,
            q: 0,
            p_star: 0,
            kind: PotentialKind::Signed(sign),
            poly: Quadratic { c11: p / (2.0 * q) + 1.0, c12: 0.0, c22: 1.0, c1: lin, c2: -1.0, c0: 5.0 / 6.0 + p_star / (2.0 * q) },
            terms: vec![
                Li2Term::new(1.0, 1.0, 1.0),
                Li2Term::new(1.0, -1.0, 1.0),
                Li2Term::new(3.0, 0.0, 1.0),
                Li2Term::new(-1.0, 0.0, 2.0),
            ],
        }
    }

    pub fn general(pres: &SurgeryPresentation, s: usize, m1: i64, m2: i64) -> PotentialParams {
        let (p, q) = (pres.slope.p as f64, pres.slope.q as f64);
        let is = pres.comb.i_table[s] as f64;
        let ks = pres.comb.k(s);
        let ks = *ks.numer() as f64 / *ks.denom() as f64;
        PotentialParams {
            p: pres.slope.p,
            q: pres.slope.q,
            p_star: pres.slope.p_star,
            kind: PotentialKind::General { s, m1, m2 },
            poly: Quadratic {
                c11: p / (2.0 * q),
                c12: -2.0,
                c22: 2.0,
                c1: -is / q + 2.0 * m1 as f64,
                c2: -2.0 + 2.0 * m2 as f64,
                c0: 0.5 - ks / 2.0,
            },
            terms: vec![
                Li2Term::new(1.0, -1.0, 1.0),
                Li2Term::new(-1.0, -1.0, -1.0),
                Li2Term::new(-2.0, 0.0, -1.0),
                Li2Term::new(1.0, 0.0, 1.0),
                Li2Term::new(1.0, 0.0, -2.0),
            ],
        }
    }

    pub fn deformed(pres: &SurgeryPresentation, x: f64) -> PotentialParams {
        let (p, q) = (pres.slope.p as f64, pres.slope.q as f64);
        let ps = pres.slope.p_star as f64;
        PotentialParams {
            p: pres.slope.p,
            q: pres.slope.q,
            p_star: pres.slope.p_star,
            kind: PotentialKind::Deformed { x },
            poly: Quadratic {
                c11: p / (2.0 * q),
                c12: -2.0,
                c22: 2.0,
                c1: 1.0 - 1.0 / q,
                c2: -2.0 * x,
                c0: 0.5 + ps / (2.0 * q),
            },
            terms: vec![
                Li2Term { coef: -1.0, a1: 0.0, a2: -1.0, shift: -x },
                Li2Term { coef: 1.0, a1: 0.0, a2: 1.0, shift: -x },
                Li2Term::new(-1.0, -1.0, -1.0),
                Li2Term::new(1.0, -1.0, 1.0),
                Li2Term::new(-1.0, 0.0, -1.0),
                Li2Term::new(1.0, 0.0, -2.0),
            ],
        }
    }

    /// Value only; errors if a dilogarithm argument lands on the cut (1, ∞).
    pub fn value(&self, t1: Complex64, t2: Complex64) -> Result<Complex64> {
        let mut acc = self.poly_value(t1, t2) * PI * I;
        for term in &self.terms {
            let (li, flag) = dilog_flagged(term.arg(t1, t2).exp());
            if flag == CutFlag::OnCut {
                return Err(Error::Branch(format!(
                    "dilogarithm argument on the cut at θ = ({t1}, {t2}) for term {term:?}"
                )));
            }
            acc += li * term.coef / (2.0 * PI * I);
        }
        Ok(acc)
    }

    fn poly_value(&self, t1: Complex64, t2: Complex64) -> Complex64 {
        let c = &self.poly;
        t1 * t1 * c.c11 + t1 * t2 * c.c12 + t2 * t2 * c.c22 + t1 * c.c1 + t2 * c.c2 + c.c0
    }

    /// Gradient from d/dθ Li₂(e^{2πiaθ})/(2πi) = −a·log(1 − e^{2πiaθ}).
    pub fn gradient(&self, t1: Complex64, t2: Complex64) -> [Complex64; 2] {
        let c = &self.poly;
        let mut g1 = (t1 * 2.0 * c.c11 + t2 * c.c12 + c.c1) * PI * I;
        let mut g2 = (t2 * 2.0 * c.c22 + t1 * c.c12 + c.c2) * PI * I;
        for term in &self.terms {
            let l = (1.0 - term.arg(t1, t2).exp()).ln() * term.coef;
            g1 -= l * term.a1;
            g2 -= l * term.a2;
        }
        [g1, g2]
    }

    pub fn hessian(&self, t1: Complex64, t2: Complex64) -> [[Complex64; 2]; 2] {
        let c = &self.poly;
        let tpi = 2.0 * PI * I;
        let mut h11 = tpi * c.c11;
        let mut h12 = PI * I * c.c12;
        let mut h22 = tpi * c.c22;
        for term in &self.terms {
            let w = term.arg(t1, t2).exp();
            let f = tpi * term.coef * w / (1.0 - w);
            h11 += f * term.a1 * term.a1;
            h12 += f * term.a1 * term.a2;
            h22 += f * term.a2 * term.a2;
        }
        [[h11, h12], [h12, h22]]
    }

    pub fn eval(&self, t1: Complex64, t2: Complex64) -> Result<PotentialEval> {
        Ok(PotentialEval { value: self.value(t1, t2)?, grad: self.gradient(t1, t2), hess: self.hessian(t1, t2) })
    }
}

/// Convenience wrapper selecting the potential by kind.
pub fn potential_v(pres: &SurgeryPresentation, kind: PotentialKind, t1: Complex64, t2: Complex64) -> Result<Complex64> {
    let params = match kind {
        PotentialKind::Signed(sign) => PotentialParams::signed(pres, sign),
        PotentialKind::General { s, m1, m2 } => PotentialParams::general(pres, s, m1, m2),
        PotentialKind::Deformed { x } => PotentialParams::deformed(pres, x),
    };
    params.value(t1, t2)
}
