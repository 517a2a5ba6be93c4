//! The `whitehead` command-line tool.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 domain/branch error,
//! 3 accuracy/convergence error, 4 infeasible request.

pub mod manifest;
pub mod output;
pub mod verify;

use crate::asymptotics::critical::{c_n, c_n_exponent};
use crate::asymptotics::xfamily::critical_x_path;
use crate::asymptotics::{solve_critical_for, tv_asymptotic};
use crate::error::Result;
use crate::geometry::{in_set_s, solve_filling_for, vol_lower_bound};
use crate::invariants::{rt_all_colors, rt_bruteforce, rt_reduced, turaev_viro, EvalOptions, InvariantSample, MuNormalization};
use crate::scalar::PrecisionMode;
use crate::special::QuantumLevel;
use crate::surgery::SurgeryPresentation;
use clap::{Parser, Subcommand, ValueEnum};
pub use manifest::RunManifest;
pub use output::{Cell, Envelope, Report};
use std::f64::consts::PI;
use std::io::Write;

#[derive(Parser, Debug)]
#[command(name = "whitehead", version, about = "Invariants, geometry and asymptotics of surgeries on the Whitehead link")]
pub struct Cli {
    /// auto, double or extended (default from WHITEHEAD_PRECISION, else auto)
    #[arg(long, global = true)]
    pub precision: Option<PrecisionMode>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Also write the run manifest as JSON to this path.
    #[arg(long, global = true)]
    pub manifest: Option<std::path::PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Brute,
    Reduced,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Oracle,
    Identities,
    Regions,
    Hessian,
    Volume,
    Convergence,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Relative RT invariants J̄_m, J_m for one or all colors.
    Invariant {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
        #[arg(long = "N")]
        n: u32,
        #[arg(long)]
        color: Option<u32>,
        #[arg(long, value_enum, default_value_t = Method::Reduced)]
        method: Method,
    },
    /// Turaev–Viro invariant and its per-color contributions.
    Tv {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
        #[arg(long = "N")]
        n: u32,
        /// rescaled or kirby
        #[arg(long, default_value = "rescaled")]
        normalization: MuNormalization,
    },
    /// Shape, holonomies, volume and Chern–Simons invariant.
    Geometry {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
    },
    /// Saddle-point data and leading-order asymptotics.
    Asymptotics {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
        #[arg(long = "N", default_value_t = 51)]
        n: u32,
        /// number of ζ(x) samples on [0, 0.01]
        #[arg(long = "x-grid", default_value_t = 0)]
        x_grid: usize,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// Parse arguments, run, print, and return the process exit code.
pub fn main() -> i32 {
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .try_init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, manifest, ok)) => {
            if let Err(e) = emit(&cli, &report, &manifest) {
                if e.kind() == std::io::ErrorKind::BrokenPipe {
                    return if ok { 0 } else { 1 };
                }
                eprintln!("error: failed to write output: {e}");
                return 3;
            }
            if ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn emit(cli: &Cli, report: &Report, manifest: &RunManifest) -> std::io::Result<()> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.format {
        Format::Csv => {
            report.write_csv(&mut out)?;
            // a CSV stream carries one table; scalar fields of a tabular report go to stderr
            if !report.rows.is_empty() {
                for (k, v) in &report.fields {
                    eprintln!("{k} = {}", v.render());
                }
            }
        }
        Format::Json => {
            let env = Envelope { report: report.clone(), manifest: manifest.clone() };
            serde_json::to_writer_pretty(&mut out, &env)?;
            writeln!(out)?;
        }
    }
    if let Some(path) = &cli.manifest {
        std::fs::write(path, serde_json::to_string_pretty(manifest)?)?;
    }
    Ok(())
}

fn level(n: u32) -> Result<QuantumLevel> {
    QuantumLevel::new(n)
}

/// Execute a parsed command. The bool is false when a verification check failed.
pub fn run(cli: &Cli) -> Result<(Report, RunManifest, bool)> {
    let precision = cli.precision.unwrap_or_else(PrecisionMode::from_env);
    let opts = EvalOptions::with_precision(precision);
    match &cli.command {
        Command::Invariant { p, q, n, color, method } => {
            let mut man = RunManifest::new("invariant", precision);
            man.param("p", p);
            man.param("q", q);
            man.param("N", n);
            man.param("method", format!("{method:?}").to_lowercase());
            if let Some(m) = color {
                man.param("color", m);
            }
            let rep = cmd_invariant(*p, *q, *n, *color, *method, &opts, &mut man)?;
            Ok((rep, man, true))
        }
        Command::Tv { p, q, n, normalization } => {
            let mut man = RunManifest::new("tv", precision);
            man.param("p", p);
            man.param("q", q);
            man.param("N", n);
            man.param("normalization", format!("{normalization:?}").to_lowercase());
            let rep = cmd_tv(*p, *q, *n, *normalization, &opts, &mut man)?;
            Ok((rep, man, true))
        }
        Command::Geometry { p, q } => {
            let mut man = RunManifest::new("geometry", precision);
            man.param("p", p);
            man.param("q", q);
            let rep = cmd_geometry(*p, *q, &mut man)?;
            Ok((rep, man, true))
        }
        Command::Asymptotics { p, q, n, x_grid } => {
            let mut man = RunManifest::new("asymptotics", precision);
            man.param("p", p);
            man.param("q", q);
            man.param("N", n);
            man.param("x_grid", x_grid);
            let rep = cmd_asymptotics(*p, *q, *n, *x_grid, &mut man)?;
            Ok((rep, man, true))
        }
        Command::Verify { suite, seed } => {
            let mut man = RunManifest::new("verify", precision);
            man.param("suite", format!("{suite:?}").to_lowercase());
            man.param("seed", seed);
            let checks = man.time("verify", || verify::run_suite(*suite, *seed));
            let ok = checks.iter().all(|c| c.passed);
            Ok((verify::report(&checks), man, ok))
        }
    }
}

fn growth(j: num_complex::Complex64, level: &QuantumLevel) -> f64 {
    2.0 * PI / level.nu() * j.norm().ln()
}

pub fn cmd_invariant(
    p: i64,
    q: i64,
    n: u32,
    color: Option<u32>,
    method: Method,
    opts: &EvalOptions,
    man: &mut RunManifest,
) -> Result<Report> {
    let pres = SurgeryPresentation::new(p, q)?;
    let lv = level(n)?;
    let colors: Vec<u32> = match color {
        Some(m) => vec![m],
        None => (1..=n).collect(),
    };
    let reduced: Option<Vec<InvariantSample>> = match method {
        Method::Brute => None,
        _ => Some(man.time("reduced", || -> Result<Vec<InvariantSample>> {
            match color {
                Some(m) => Ok(vec![rt_reduced(&pres, m, &lv, opts)?]),
                None => Ok(rt_all_colors(&pres, &lv, opts)),
            }
        })?),
    };
    let brute: Option<Vec<InvariantSample>> = match method {
        Method::Reduced => None,
        _ => Some(man.time("brute", || colors.iter().map(|&m| rt_bruteforce(&pres, m, &lv)).collect::<Result<Vec<_>>>())?),
    };
    let mut rep = Report::new(Some((p, q)));
    let mut cols = vec!["m", "re_jbar", "im_jbar", "re_j", "im_j", "abs_j", "growth", "precision"];
    if method == Method::Both {
        cols.push("residual");
    }
    rep.columns(&cols);
    for (k, &m) in colors.iter().enumerate() {
        let main = reduced.as_ref().map(|v| v[k]).unwrap_or_else(|| brute.as_ref().unwrap()[k]);
        let mut row: Vec<Cell> = vec![
            m.into(),
            main.j_bar.re.into(),
            main.j_bar.im.into(),
            main.j_norm.re.into(),
            main.j_norm.im.into(),
            main.j_norm.norm().into(),
            growth(main.j_norm, &lv).into(),
            format!("{:?}", main.precision).to_lowercase().into(),
        ];
        if let (Some(r), Some(b)) = (&reduced, &brute) {
            let res = (r[k].j_bar - b[k].j_bar).norm() / b[k].j_bar.norm().max(f64::MIN_POSITIVE);
            row.push(res.into());
        }
        rep.row(row);
    }
    Ok(rep)
}

pub fn cmd_tv(p: i64, q: i64, n: u32, norm: MuNormalization, opts: &EvalOptions, man: &mut RunManifest) -> Result<Report> {
    let pres = SurgeryPresentation::new(p, q)?;
    let lv = level(n)?;
    let tv = man.time("tv", || turaev_viro(&pres, &lv, opts, norm));
    let mut rep = Report::new(Some((p, q)));
    rep.columns(&["m", "abs_jbar_sq", "contribution", "tail_total", "tail_growth"]);
    // tail_total: μ²·Σ_{k ≥ m} |J̄_k|², built from the top color down
    let mut tails = vec![0.0; tv.per_color.len()];
    let mut acc = 0.0;
    for i in (0..tv.per_color.len()).rev() {
        acc += tv.mu_r_sq * tv.per_color[i];
        tails[i] = acc;
    }
    for (i, v) in tv.per_color.iter().enumerate() {
        rep.row(vec![
            (i as u32 + 1).into(),
            (*v).into(),
            (tv.mu_r_sq * v).into(),
            tails[i].into(),
            (PI / lv.nu() * tails[i].ln()).into(),
        ]);
    }
    rep.field("total", tv.total);
    rep.field("growth", tv.growth());
    rep.field("mu_r_sq", tv.mu_r_sq);
    rep.field("argmax_color", tv.argmax_color());
    if let Ok(a) = tv_asymptotic(p, q, &lv) {
        rep.field("asymptotic", a);
        rep.field("ratio", tv.total / a);
    }
    Ok(rep)
}

pub fn cmd_geometry(p: i64, q: i64, man: &mut RunManifest) -> Result<Report> {
    let pres = SurgeryPresentation::new(p, q)?;
    let sol = man.time("filling", || solve_filling_for(&pres))?;
    let b = vol_lower_bound(p, q);
    let mut rep = Report::new(Some((p, q)));
    rep.complex("z0", sol.z0);
    rep.complex("u", sol.u);
    rep.complex("v", sol.v);
    rep.complex("gamma", sol.gamma);
    rep.complex("z1", sol.z1);
    rep.complex("z2", sol.z2);
    rep.complex("theta1", sol.theta1);
    rep.complex("theta2", sol.theta2);
    rep.field("vol", sol.vol);
    rep.field("cs", sol.cs);
    rep.field("lower_bound", b.value);
    rep.field("lower_bound_vacuous", b.vacuous);
    rep.field("in_set_s", in_set_s(p, q));
    rep.field("residual", sol.residual);
    Ok(rep)
}

pub fn cmd_asymptotics(p: i64, q: i64, n: u32, x_grid: usize, man: &mut RunManifest) -> Result<Report> {
    let pres = SurgeryPresentation::new(p, q)?;
    let lv = level(n)?;
    let prof = man.time("critical", || solve_critical_for(&pres))?;
    let mut rep = Report::new(Some((p, q)));
    rep.complex("theta1", prof.theta1_0);
    rep.complex("theta2", prof.theta2_0);
    rep.complex("zeta", prof.zeta);
    rep.complex("two_pi_zeta", prof.two_pi_zeta());
    rep.complex("omega", prof.omega);
    rep.complex("h", prof.h);
    let e = c_n_exponent(&pres, &lv);
    rep.field("c_n_exponent", format!("{}/{}", e.numer(), e.denom()));
    rep.field("c_n_phase_over_pi", c_n(&pres, &lv).arg() / PI);
    rep.field("tv_sine_ratio", prof.tv_sine_ratio());
    rep.field("tv_coefficient", prof.tv_coefficient());
    rep.field("im_inv_one_minus_z2", prof.im_inv_one_minus_z2());
    rep.field("region", prof.region.label());
    rep.field("residual", prof.residual);
    if x_grid > 0 {
        let xs: Vec<f64> = (0..x_grid).map(|k| 0.01 * k as f64 / (x_grid.max(2) - 1) as f64).collect();
        let path = man.time("x_family", || critical_x_path(&pres, &prof, &xs))?;
        rep.columns(&["x", "re_zeta", "im_zeta", "proven_regime"]);
        for pt in path {
            rep.row(vec![pt.x.into(), pt.zeta.re.into(), pt.zeta.im.into(), pt.proven_regime.into()]);
        }
    }
    Ok(rep)
}
