use num_complex::Complex64;
use std::f64::consts::PI;
use whitehead::invariants::*;
use whitehead::scalar::{Precision, PrecisionMode};
use whitehead::special::QuantumLevel;
use whitehead::surgery::SurgeryPresentation;
use whitehead::xprec::Xc;

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

/// Relative agreement, or both values at rounding level (J̄_m can vanish
/// exactly, e.g. when r divides p).
fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a.norm() < 1e-12 && b.norm() < 1e-12) || rel(a, b) < tol
}

fn double() -> EvalOptions {
    EvalOptions::with_precision(PrecisionMode::Fixed(Precision::Double))
}

/// Independent multi-sum at an arbitrary primitive root t = e^{4πi·dir/r},
/// with the bracket written through factorials.
fn oracle_sum(b: &[i64], sigma: i64, n: u32, m: u32, dir: f64) -> Complex64 {
    let r = (2 * n + 1) as f64;
    let tp = |x: f64| Complex64::from_polar(1.0, dir * 4.0 * PI * x / r);
    let brace = |k: f64| tp(k / 2.0) - tp(-k / 2.0);
    let qint = |k: f64| brace(k) / brace(1.0);
    let fact = |k: i64| (1..=k).fold(Complex64::new(1.0, 0.0), |a, j| a * brace(j as f64));
    let hab = |n: i64| {
        let m = m as i64;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..=(m - 1).min(n) {
            let sign = if (m - 1 + n + i) % 2 == 0 { 1.0 } else { -1.0 };
            // {n+i+1}! may reach {r}! = 0 only through the explicit factor
            let num = fact(m + i) * fact(n + i + 1) * fact(i);
            let den = fact(m - 1 - i) * fact(n - i) * fact(2 * i + 1);
            acc += tp((i * (i + 3)) as f64 / 4.0) / brace(1.0) * num / den * sign;
        }
        acc
    };
    let size = 2 * n as usize;
    let l = b.len();
    let mut idx = vec![0usize; l];
    let mut total = Complex64::new(0.0, 0.0);
    'outer: loop {
        let mut e = idx[l - 1] as i64;
        let mut tw = 0.0;
        for j in 0..l {
            e += b[j] * idx[j] as i64;
            tw += (b[j] * (idx[j] * (idx[j] + 2)) as i64) as f64 / 4.0;
        }
        let mut term = tp(tw) * qint(idx[0] as f64 + 1.0) * if e % 2 == 0 { 1.0 } else { -1.0 };
        for j in 0..l - 1 {
            term *= qint(((idx[j] + 1) * (idx[j + 1] + 1)) as f64);
        }
        total += term * hab(idx[l - 1] as i64);
        let mut k = 0;
        loop {
            if k == l {
                break 'outer;
            }
            idx[k] += 1;
            if idx[k] < size {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
    let mu = (2.0 * PI / r).sin() / r.sqrt();
    let frame = Complex64::from_polar(1.0, dir * sigma as f64 * (3.0 / r + (r + 1.0) / 4.0) * PI);
    total * mu.powi(l as i32) * frame
}

#[test]
fn figure_eight_cyclotomic_expansion() {
    // J̄_m(W(1,1)) = (−1)^{m−1}[m] Σ_{k<m} Π_{j≤k} {m+j}{m−j}
    let pres = SurgeryPresentation::new(1, 1).unwrap();
    for n in 3..=7 {
        let lv = QuantumLevel::new(n).unwrap();
        let r = lv.r as f64;
        let brace = |k: f64| Complex64::new(0.0, 2.0 * (2.0 * PI * k / r).sin());
        for m in 1..=n {
            let mf = m as f64;
            let mut s = Complex64::new(0.0, 0.0);
            for k in 0..m {
                s += (1..=k).fold(Complex64::new(1.0, 0.0), |a, j| a * brace(mf + j as f64) * brace(mf - j as f64));
            }
            let qm = (2.0 * PI * mf / r).sin() / (2.0 * PI / r).sin();
            let expect = s * qm * if m % 2 == 1 { 1.0 } else { -1.0 };
            let brute = rt_bruteforce(&pres, m, &lv).unwrap().j_bar;
            let red = rt_reduced(&pres, m, &lv, &double()).unwrap().j_bar;
            assert!(rel(brute, expect) < 1e-10, "N={n} m={m}");
            assert!(rel(red, expect) < 1e-10, "N={n} m={m}");
        }
    }
}

#[test]
fn bracket_small_case_value() {
    // exact cyclotomic evaluation at r = 7
    let lv = QuantumLevel::new(3).unwrap();
    let v = habiro_bracket(2, 1, &lv);
    let expect = Complex64::new(-1.024_458_669_761_152_7, -0.588_735_052_754_236);
    assert!((v - expect).norm() < 1e-13);
}

#[test]
fn library_brute_force_matches_independent_sum() {
    for &(p, q) in &[(5, 2), (1, -2), (3, 5)] {
        let pres = SurgeryPresentation::new(p, q).unwrap();
        for n in [3u32, 4] {
            let lv = QuantumLevel::new(n).unwrap();
            for m in 1..=n {
                let lib = rt_bruteforce(&pres, m, &lv).unwrap().j_bar;
                let ind = oracle_sum(&pres.ncf.b, pres.ncf.sigma, n, m, 1.0);
                assert!(rel(lib, ind) < 1e-10, "({p},{q}) N={n} m={m}");
            }
        }
    }
}

#[test]
fn conjugate_root_gives_conjugate_value() {
    let pres = SurgeryPresentation::new(5, 2).unwrap();
    for m in 1..=4 {
        let a = oracle_sum(&pres.ncf.b, pres.ncf.sigma, 4, m, 1.0);
        let b = oracle_sum(&pres.ncf.b, pres.ncf.sigma, 4, m, -1.0);
        assert!(rel(b, a.conj()) < 1e-11);
        let lib = rt_bruteforce(&pres, m, &QuantumLevel::new(4).unwrap()).unwrap().j_bar;
        assert!(rel(lib.conj(), b) < 1e-10);
    }
}

#[test]
fn reduced_matches_brute_force() {
    for &(p, q) in &[(1, 1), (5, 2), (1, -2), (3, 5), (-3, 7), (7, -3)] {
        let pres = SurgeryPresentation::new(p, q).unwrap();
        for n in 3..=6 {
            let lv = QuantumLevel::new(n).unwrap();
            for m in 1..=n {
                let a = rt_bruteforce(&pres, m, &lv).unwrap();
                let b = rt_reduced(&pres, m, &lv, &double()).unwrap();
                assert!(close(b.j_bar, a.j_bar, 1e-9), "({p},{q}) N={n} m={m}");
                assert!(close(b.j_norm, a.j_norm, 1e-9));
            }
        }
    }
}

#[test]
fn extended_precision_agreement() {
    let pres = SurgeryPresentation::new(5, 2).unwrap();
    let lv = QuantumLevel::new(4).unwrap();
    for m in 1..=4 {
        let a: Xc = rt_bruteforce_generic(&pres, m, &lv).unwrap();
        let (b, _): (Xc, f64) = rt_reduced_generic(&pres, m, &lv, SumOrder::Natural).unwrap();
        let d = (a - b).to_c64().norm() / a.to_c64().norm();
        assert!(d < 1e-20, "m={m}: {d:e}");
    }
}

#[test]
fn different_expansions_agree() {
    // greedy [2,0] and the hand expansion [−2,−1] of −1/2
    let a = SurgeryPresentation::new(1, -2).unwrap();
    let b = SurgeryPresentation::with_terms(1, -2, &[-2, -1]).unwrap();
    assert_ne!(a.ncf.b, b.ncf.b);
    let lv = QuantumLevel::new(5).unwrap();
    for m in 1..=5 {
        let x = rt_reduced(&a, m, &lv, &double()).unwrap().j_bar;
        let y = rt_reduced(&b, m, &lv, &double()).unwrap().j_bar;
        assert!(rel(x, y) < 1e-10, "m={m}: {x} vs {y}");
    }
}

#[test]
fn top_color_lattice_form() {
    for &(p, q) in &[(1, 1), (5, 2), (1, -2), (3, 5)] {
        let pres = SurgeryPresentation::new(p, q).unwrap();
        for n in [3u32, 5, 8] {
            let lv = QuantumLevel::new(n).unwrap();
            let a = rt_reduced(&pres, n, &lv, &double()).unwrap().j_norm;
            let b = rt_top_color(&pres, &lv);
            assert!(rel(b, a) < 1e-9, "({p},{q}) N={n}");
            let k = kappa_n(&pres, &lv).norm();
            assert!((k - 1.0 / (2.0 * lv.r as f64 * (q.abs() as f64).sqrt())).abs() < 1e-15);
        }
    }
}

#[test]
fn summation_order_does_not_matter() {
    let pres = SurgeryPresentation::new(5, 2).unwrap();
    for n in [11u32, 51] {
        let lv = QuantumLevel::new(n).unwrap();
        let base = rt_reduced(&pres, n, &lv, &EvalOptions::default()).unwrap();
        for order in [SumOrder::Reversed, SumOrder::Shuffled(7), SumOrder::Shuffled(99)] {
            let opts = EvalOptions { order, ..Default::default() };
            let v = rt_reduced(&pres, n, &lv, &opts).unwrap();
            assert!(rel(v.j_bar, base.j_bar) < 1e-12, "N={n} {order:?}");
        }
    }
}

#[test]
fn infeasible_brute_force_names_budget() {
    let pres = SurgeryPresentation::new(3, 5).unwrap();
    let lv = QuantumLevel::new(300).unwrap();
    let err = rt_bruteforce(&pres, 1, &lv).unwrap_err();
    assert_eq!(err.exit_code(), 4);
    assert!(err.to_string().contains("budget"));
}

#[test]
fn color_range_is_checked() {
    let pres = SurgeryPresentation::new(1, 1).unwrap();
    let lv = QuantumLevel::new(3).unwrap();
    assert!(rt_reduced(&pres, 0, &lv, &double()).is_err());
    assert!(rt_reduced(&pres, 4, &lv, &double()).is_err());
}

#[test]
fn tv_series_invariants() {
    let pres = SurgeryPresentation::new(5, 2).unwrap();
    let lv = QuantumLevel::new(12).unwrap();
    let tv = turaev_viro(&pres, &lv, &EvalOptions::default(), MuNormalization::default());
    assert_eq!(tv.per_color.len(), 12);
    assert!(tv.per_color.iter().all(|&x| x >= 0.0));
    let s: f64 = tv.per_color.iter().sum();
    assert!((tv.total - tv.mu_r_sq * s).abs() < 1e-12 * tv.total);
    assert!(tv.total >= tv.mu_r_sq * tv.per_color[11]);
}

#[test]
fn gauss_sum_identity_small_levels() {
    for (b, a0) in [(vec![3, 2], 1), (vec![2, 3], 1), (vec![-2, -1], 1), (vec![2, 3, 1], 1), (vec![3, -2, 4], 1), (vec![2, 0], -1), (vec![2, 3], -1), (vec![2, 3, 1], -1)] {
        let (p, q) = {
            let (mut a, mut c) = (a0, 0i64);
            for &bi in &b {
                let na = bi * a - c;
                c = a;
                a = na;
            }
            (a, c)
        };
        let pres = SurgeryPresentation::with_terms(p, q, &b).unwrap();
        for n in 2..=6 {
            let lv = QuantumLevel::new(n).unwrap();
            for k in 1..lv.r {
                let d = gauss_sum_direct(k, &lv, &pres.ncf);
                let c = gauss_sum_s(k, &lv, &pres.ncf);
                assert!((d - c).norm() < 1e-10, "{b:?} r={} n={k}", lv.r);
            }
        }
    }
}
