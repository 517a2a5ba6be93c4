use clap::Parser;
use std::process::{Command, Output};
use whitehead::cli::{run, Cell, Cli, Envelope, Report, RunManifest};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_whitehead"))
        .args(args)
        .env_remove("WHITEHEAD_PRECISION")
        .output()
        .expect("spawn whitehead")
}

fn parse(args: &[&str]) -> Report {
    let mut full = vec!["whitehead"];
    full.extend_from_slice(args);
    let cli = Cli::try_parse_from(full).unwrap();
    let (rep, _, ok) = run(&cli).unwrap();
    assert!(ok);
    rep
}

fn float(rep: &Report, key: &str) -> f64 {
    match rep.get(key) {
        Some(Cell::Float(x)) => *x,
        other => panic!("{key}: {other:?}"),
    }
}

fn col(rep: &Report, name: &str) -> usize {
    rep.columns.iter().position(|c| c == name).unwrap()
}

fn cell_f64(c: &Cell) -> f64 {
    match c {
        Cell::Float(x) => *x,
        Cell::Int(i) => *i as f64,
        _ => panic!("{c:?}"),
    }
}

#[test]
fn geometry_digits() {
    let rep = parse(&["geometry", "--p", "1", "--q", "-2"]);
    assert!((float(&rep, "z0_re") + 0.66235897862).abs() < 1e-10);
    assert!((float(&rep, "z0_im") + 0.56227951206).abs() < 1e-10);
    assert!(float(&rep, "residual") < 1e-12);
    assert_eq!(rep.get("in_set_s"), Some(&Cell::Bool(false)));
}

#[test]
fn geometry_csv_from_binary() {
    let out = bin(&["geometry", "--p", "1", "--q", "-2", "--precision", "double"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("key,value\r\n"));
    let line = text.lines().find(|l| l.starts_with("z0_re,")).unwrap();
    let v: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
    assert!((v + 0.66235897862).abs() < 1e-10);
}

#[test]
fn invariant_both_methods_agree() {
    let rep = parse(&["invariant", "--p", "1", "--q", "1", "--N", "8", "--method", "both", "--precision", "double"]);
    assert_eq!(rep.rows.len(), 8);
    let k = col(&rep, "residual");
    for row in &rep.rows {
        assert!(cell_f64(&row[k]) < 1e-9, "{row:?}");
    }
}

#[test]
fn json_round_trip() {
    let out = bin(&["--format", "json", "asymptotics", "--p", "5", "--q", "2", "--x-grid", "3"]);
    assert!(out.status.success());
    let env: Envelope<RunManifest> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(env.manifest.command, "asymptotics");
    assert_eq!(env.manifest.parameters["p"], "5");
    assert_eq!(env.report.schema, 1);
    assert_eq!(env.report.rows.len(), 3);
    let direct = parse(&["asymptotics", "--p", "5", "--q", "2", "--x-grid", "3"]);
    for key in ["zeta_re", "zeta_im", "theta2_re", "tv_coefficient"] {
        assert_eq!(float(&env.report, key), float(&direct, key), "{key}");
    }
    assert_eq!(env.report.rows, direct.rows);
}

#[test]
fn csv_is_deterministic() {
    let args = ["--precision", "double", "invariant", "--p", "3", "--q", "5", "--N", "15"];
    let a = bin(&args);
    let b = bin(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(String::from_utf8_lossy(&a.stdout).lines().count(), 16);
}

#[test]
fn manifest_written() {
    let path = std::env::temp_dir().join(format!("whitehead-manifest-{}.json", std::process::id()));
    let out = bin(&["geometry", "--p", "3", "--q", "5", "--manifest", path.to_str().unwrap()]);
    assert!(out.status.success());
    let man: RunManifest = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(man.command, "geometry");
    assert_eq!(man.precision_mode, "auto");
    assert!(man.timings.iter().any(|(s, t)| s == "filling" && *t >= 0.0));
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["geometry", "--p", "2", "--q", "4"]).status.code(), Some(2));
    assert_eq!(bin(&["geometry", "--p", "-2", "--q", "1"]).status.code(), Some(2));
    assert_eq!(bin(&["invariant", "--p", "1", "--q", "1", "--N", "5", "--color", "9"]).status.code(), Some(2));
    let out = bin(&["invariant", "--p", "89", "--q", "55", "--N", "40", "--method", "brute"]);
    assert_eq!(out.status.code(), Some(4), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(bin(&["verify", "--suite", "oracle"]).status.code(), Some(0));
    assert_ne!(bin(&["geometry", "--p", "1"]).status.code(), Some(0));
}

#[test]
fn tv_figure_eight_sister() {
    let rep = parse(&["tv", "--p", "1", "--q", "1", "--N", "25"]);
    let total = float(&rep, "total");
    assert!(total > 0.0);
    assert_eq!(rep.rows.len(), 25);
    let k = col(&rep, "tail_total");
    assert!((cell_f64(&rep.rows[0][k]) - total).abs() < 1e-9 * total);
    let ratio = float(&rep, "ratio");
    assert!((ratio - 1.0).abs() < 0.1, "{ratio}");
}

#[test]
fn asymptotics_tv_coefficient() {
    let rep = parse(&["asymptotics", "--p", "1", "--q", "1"]);
    let coef = 1.0 / (2f64.sqrt() * 3f64.powf(0.75));
    assert!((float(&rep, "tv_coefficient") - coef).abs() < 1e-8);
    assert!(rep.rows.is_empty());
}
