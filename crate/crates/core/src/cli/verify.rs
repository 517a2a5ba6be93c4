//! Verification suites run by `whitehead verify`.

use super::output::{Cell, Report};
use super::Suite;
use crate::asymptotics::onedim::{re_v_of_c, theta2_of_c};
use crate::asymptotics::region::{
    hessian_scan, hessian_x_scan, region_inclusion_scan, region_v, x_positivity_bound, RegionSpec, C0, VOLUME_THRESHOLD,
};
use crate::asymptotics::{growth_defect, solve_critical_for};
use crate::asymptotics::critical::tv_asymptotic_log;
use crate::geometry::{in_set_s, shape_volume, solve_filling_for, vol_lower_bound, SET_S_VOLUME};
use crate::invariants::{gauss_sum_direct, gauss_sum_s, rt_bruteforce, rt_reduced, turaev_viro, EvalOptions, MuNormalization};
use crate::scalar::{Precision, PrecisionMode};
use crate::special::{dilog, phi, pochhammer_t, QuantumLevel};
use crate::surgery::SurgeryPresentation;
use num_complex::Complex64;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub threshold: f64,
    pub detail: String,
}

impl Check {
    /// Passes when measured < threshold.
    fn below(name: impl Into<String>, measured: f64, threshold: f64) -> Check {
        Check { name: name.into(), passed: measured < threshold, measured, threshold, detail: String::new() }
    }

    fn flag(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed,
            measured: if passed { 1.0 } else { 0.0 },
            threshold: 1.0,
            detail: detail.into(),
        }
    }

    fn with(mut self, detail: impl Into<String>) -> Check {
        self.detail = detail.into();
        self
    }
}

pub fn report(checks: &[Check]) -> Report {
    let mut rep = Report::new(None);
    rep.columns(&["check", "passed", "measured", "threshold", "detail"]);
    for c in checks {
        rep.row(vec![
            Cell::from(c.name.as_str()),
            c.passed.into(),
            c.measured.into(),
            c.threshold.into(),
            c.detail.as_str().into(),
        ]);
    }
    rep.field("passed", checks.iter().filter(|c| c.passed).count() as i64);
    rep.field("failed", checks.iter().filter(|c| !c.passed).count() as i64);
    rep
}

fn err_check(name: &str, e: crate::Error) -> Check {
    Check::flag(name, false, e.to_string())
}

pub fn run_suite(suite: Suite, seed: u64) -> Vec<Check> {
    match suite {
        Suite::Oracle => oracle(),
        Suite::Identities => identities(seed),
        Suite::Regions => regions(),
        Suite::Hessian => hessian(),
        Suite::Volume => volume(seed),
        Suite::Convergence => convergence(),
    }
}

pub const ORACLE_SLOPES: [(i64, i64); 4] = [(1, 1), (5, 2), (1, -2), (3, 5)];

fn oracle() -> Vec<Check> {
    let mut out = vec![];
    let opts = EvalOptions::with_precision(PrecisionMode::Fixed(Precision::Double));
    for (p, q) in ORACLE_SLOPES {
        let pres = SurgeryPresentation::new(p, q).expect("valid slope");
        let mut worst: f64 = 0.0;
        let mut vanishing = 0;
        for n in 3..=12 {
            let lv = QuantumLevel::new(n).expect("valid level");
            for m in 1..=n {
                let (a, b) = match (rt_reduced(&pres, m, &lv, &opts), rt_bruteforce(&pres, m, &lv)) {
                    (Ok(a), Ok(b)) => (a.j_bar, b.j_bar),
                    (Err(e), _) | (_, Err(e)) => {
                        out.push(err_check(&format!("oracle ({p},{q})"), e));
                        continue;
                    }
                };
                // J̄_m vanishes exactly for some (p, r); both sides are then rounding noise
                if a.norm() < 1e-12 && b.norm() < 1e-12 {
                    vanishing += 1;
                    continue;
                }
                worst = worst.max((a - b).norm() / b.norm());
            }
        }
        out.push(
            Check::below(format!("reduced = brute force ({p},{q}), N = 3..12"), worst, 1e-9)
                .with(format!("{vanishing} vanishing colors")),
        );
    }
    let mut worst: f64 = 0.0;
    for (p, q) in gauss_slopes() {
        let pres = SurgeryPresentation::new(p, q).expect("valid slope");
        for n in 2..=6 {
            let lv = QuantumLevel::new(n).expect("valid level");
            for nl in 1..lv.r {
                let d = gauss_sum_direct(nl, &lv, &pres.ncf) - gauss_sum_s(nl, &lv, &pres.ncf);
                worst = worst.max(d.norm());
            }
        }
    }
    out.push(Check::below("Gauss sum collapse, r = 5..13, l <= 3", worst, 1e-10));
    out
}

/// Slopes with |p|, |q| <= 12 whose expansion has at most three terms.
pub fn gauss_slopes() -> Vec<(i64, i64)> {
    let mut v = vec![];
    for q in 1..=12i64 {
        for p in -12..=12i64 {
            if p.gcd(&q) != 1 {
                continue;
            }
            if let Ok(pr) = SurgeryPresentation::new(p, q) {
                if pr.l() <= 3 {
                    v.push((p, q));
                }
            }
        }
    }
    v
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn identities(seed: u64) -> Vec<Check> {
    let mut out = vec![];
    for n in [5u32, 10, 20] {
        let lv = QuantumLevel::new(n).expect("valid level");
        let nu = lv.nu();
        let mut worst: f64 = 0.0;
        let base = phi(c(0.5 / nu, 0.0), &lv);
        for k in 0..=n {
            let v = match (&base, phi(c((k as f64 + 0.5) / nu, 0.0), &lv), pochhammer_t(k, &lv)) {
                (Ok(b), Ok(x), Ok(e)) => ((b - x).exp() - e).norm() / e.norm().max(1.0),
                _ => f64::INFINITY,
            };
            worst = worst.max(v);
        }
        out.push(Check::below(format!("(t)_n from phi_N, N = {n}"), worst, 1e-9));
        let i = c(0.0, 1.0);
        let closed = nu / (2.0 * PI * i) * (PI * PI / 6.0) + 0.5 * nu.ln() + PI * i / 4.0 - PI * i / (12.0 * nu);
        let d = base.map(|b| (b - closed).norm()).unwrap_or(f64::INFINITY);
        out.push(Check::below(format!("phi_N(1/(2N+1)) closed form, N = {n}"), d, 1e-10));
        let mut worst: f64 = 0.0;
        for th in [c(0.3, 0.0), c(0.2, 0.3), c(0.65, -0.45)] {
            let rhs = 2.0 * PI * i * (-(nu / 2.0) * (th * th - th + 1.0 / 6.0) + 1.0 / (24.0 * nu));
            let v = match (phi(th, &lv), phi(1.0 - th, &lv)) {
                (Ok(a), Ok(b)) => (a + b - rhs).norm(),
                _ => f64::INFINITY,
            };
            worst = worst.max(v);
        }
        out.push(Check::below(format!("phi_N reflection, N = {n}"), worst, 1e-10));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let (theta, x) = (rng.gen_range(0.01..0.99), rng.gen_range(-3.0..3.0));
        let w = (c(theta, x) * c(0.0, 2.0 * PI)).exp();
        let lhs = ((dilog(w) + dilog(1.0 / w)) / c(0.0, 2.0 * PI)).re;
        worst = worst.max((lhs - 2.0 * PI * (theta - 0.5) * x).abs());
    }
    out.push(Check::below("Re[(Li2(w) + Li2(1/w))/(2 pi i)] = 2 pi (theta - 1/2) X", worst, 1e-10));
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let z = c(rng.gen_range(-20.0..20.0), rng.gen_range(-20.0..20.0));
        if z.im.abs() < 1e-6 || z.norm() < 1e-3 {
            continue;
        }
        let rhs = -dilog(z) - PI * PI / 6.0 - (-z).ln().powi(2) * 0.5;
        worst = worst.max((dilog(1.0 / z) - rhs).norm() / (1.0 + rhs.norm()));
    }
    out.push(Check::below("dilog inversion, 1000 random points", worst, 1e-12));
    out
}

/// Reference digits of θ₂(c₀).
pub const THETA2_C0: Complex64 = Complex64 { re: 0.1946407106, im: 0.1185471546 };

fn regions() -> Vec<Check> {
    let mut out = vec![];
    let v = 2.0 * PI * region_v(C0, 0.5 - C0);
    out.push(Check::below("2 pi v(c0, 1/2 - c0) = 3.3744816", (v - 3.3744816).abs(), 1e-6).with(format!("{v:.10}")));
    let rv = 2.0 * PI * re_v_of_c(C0);
    out.push(Check::below("2 pi Re V+(c0, theta2(c0)) = 3.3744812", (rv - 3.3744812).abs(), 1e-6).with(format!("{rv:.10}")));
    let t = theta2_of_c(C0);
    out.push(Check::below("theta2(c0) reference digits", (t - THETA2_C0).norm(), 1e-8).with(format!("{t:.10}")));
    let rep = region_inclusion_scan(&RegionSpec::default(), 1e-3);
    out.push(
        Check::below("region inclusion, step 1e-3", rep.violations as f64, 0.5)
            .with(format!("{} points, margin {:.3e}, threshold {VOLUME_THRESHOLD}", rep.points, rep.min_margin)),
    );
    out
}

fn hessian() -> Vec<Check> {
    let rep = hessian_scan(0.01, 1.0, 0.1);
    let xb = x_positivity_bound(0.05);
    let rx = hessian_x_scan(xb, 0.05, 0.01, 1.0, 0.1);
    vec![
        Check::below("real Hessian positive on D_H, step 0.01, |X| <= 1", rep.violations as f64, 0.5)
            .with(format!("{} points, min minor {:.3e}", rep.points, rep.min_margin)),
        Check::below("deformed Hessian positive, x at the proven bound", rx.violations as f64, 0.5)
            .with(format!("x = {xb:.6}, {} points, min minor {:.3e}", rx.points, rx.min_margin)),
    ]
}

/// `count` random coprime slopes with (p+2q)² + 4q² ≥ 370 that fill hyperbolically.
pub fn random_long_slopes(seed: u64, count: usize) -> Vec<(i64, i64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = vec![];
    while v.len() < count {
        let p: i64 = rng.gen_range(-80..=80);
        let q: i64 = rng.gen_range(-25..=25);
        if q == 0 || p.gcd(&q) != 1 || vol_lower_bound(p, q).length_sq < 370.0 || v.contains(&(p, q)) {
            continue;
        }
        v.push((p, q));
    }
    v
}

fn volume(seed: u64) -> Vec<Check> {
    let mut out = vec![];
    let (mut worst, mut worst_shape, mut bound_ok, mut s_ok) = (0f64, 0f64, true, true);
    let slopes = random_long_slopes(seed, 30);
    for &(p, q) in &slopes {
        let pres = match SurgeryPresentation::new(p, q) {
            Ok(x) => x,
            Err(e) => {
                out.push(err_check(&format!("volume ({p},{q})"), e));
                continue;
            }
        };
        match (solve_filling_for(&pres), solve_critical_for(&pres)) {
            (Ok(g), Ok(a)) => {
                worst = worst.max((g.vol - a.two_pi_zeta().re).abs());
                worst_shape = worst_shape.max((g.vol - shape_volume(g.z0)).abs());
                bound_ok &= g.vol >= vol_lower_bound(p, q).value;
                if in_set_s(p, q) {
                    s_ok &= g.vol > SET_S_VOLUME;
                }
            }
            (Err(e), _) | (_, Err(e)) => out.push(err_check(&format!("volume ({p},{q})"), e)),
        }
    }
    out.push(Check::below("vol = 2 pi Re zeta over 30 slopes", worst, 1e-9));
    out.push(Check::below("vol = Bloch-Wigner volume of the shape", worst_shape, 1e-9));
    out.push(Check::flag("vol >= lower bound", bound_ok, ""));
    out.push(Check::flag("vol > 3.374482 on S", s_ok, ""));
    out
}

/// E(N) for (5,2) at N = 51, 101, 201 in extended precision.
pub fn growth_defects() -> crate::Result<Vec<(u32, f64)>> {
    let pres = SurgeryPresentation::new(5, 2)?;
    let prof = solve_critical_for(&pres)?;
    let opts = EvalOptions::with_precision(PrecisionMode::Fixed(Precision::Extended));
    [51u32, 101, 201]
        .iter()
        .map(|&n| {
            let lv = QuantumLevel::new(n)?;
            let s = rt_reduced(&pres, n, &lv, &opts)?;
            Ok((n, growth_defect(s.j_norm, &prof, &lv).norm()))
        })
        .collect()
}

/// (N, |growth − Vol|, TV/TV_asym) for (1,1) at N = 25, 51, 101.
pub fn tv_trend() -> crate::Result<Vec<(u32, f64, f64)>> {
    let pres = SurgeryPresentation::new(1, 1)?;
    let prof = solve_critical_for(&pres)?;
    let vol = prof.two_pi_zeta().re;
    [25u32, 51, 101]
        .iter()
        .map(|&n| {
            let lv = QuantumLevel::new(n)?;
            let tv = turaev_viro(&pres, &lv, &EvalOptions::default(), MuNormalization::Rescaled);
            let ratio = (tv.total.ln() - tv_asymptotic_log(&prof, &lv)).exp();
            Ok((n, (tv.growth() - vol).abs(), ratio))
        })
        .collect()
}

fn convergence() -> Vec<Check> {
    let mut out = vec![];
    match growth_defects() {
        Ok(e) => {
            let dec = e[0].1 > e[1].1 && e[1].1 > e[2].1;
            let detail = e.iter().map(|(n, v)| format!("E({n}) = {v:.6}")).collect::<Vec<_>>().join(", ");
            out.push(Check::flag("E(N) decreasing at (5,2)", dec, detail));
            let cap = 2.0 * PI * ((201f64).ln() + 5.0) / 201.0;
            out.push(Check::below("E(201) < 2 pi (log 201 + 5)/201", e[2].1, cap));
        }
        Err(e) => out.push(err_check("E(N) at (5,2)", e)),
    }
    match tv_trend() {
        Ok(t) => {
            let dec = t[0].1 > t[1].1 && t[1].1 > t[2].1;
            let detail = t.iter().map(|(n, d, r)| format!("N = {n}: {d:.5}, ratio {r:.5}")).collect::<Vec<_>>().join("; ");
            out.push(Check::flag("TV growth error decreasing at (1,1)", dec, detail));
            out.push(Check::below("TV growth error at N = 101", t[2].1, 0.2));
            let r = t[2].2;
            out.push(Check::flag("TV ratio in (0.5, 2) at N = 101", r > 0.5 && r < 2.0, format!("{r:.6}")));
            out.push(Check::flag(
                "TV ratio closer to 1 at N = 101 than at N = 51",
                (t[2].2 - 1.0).abs() < (t[1].2 - 1.0).abs(),
                "",
            ));
        }
        Err(e) => out.push(err_check("TV trend at (1,1)", e)),
    }
    out
}
