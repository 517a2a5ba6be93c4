use std::ffi::{c_char, CStr};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;
use whitehead_ffi::*;

fn handle(p: i64, q: i64) -> *mut WhSurgery {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { wh_surgery_new(p, q, &mut h) }, WhStatus::Ok);
    assert!(!h.is_null());
    h
}

fn last_error() -> String {
    let mut buf = [0 as c_char; 256];
    let n = unsafe { wh_last_error_message(buf.as_mut_ptr(), buf.len()) };
    let s = unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned();
    assert_eq!(s.len(), n.min(buf.len() - 1));
    s
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(wh_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn geometry_of_one_minus_two() {
    let h = handle(1, -2);
    let mut g = WhGeometry::default();
    assert_eq!(unsafe { wh_geometry(h, &mut g) }, WhStatus::Ok);
    assert!((g.z0.re + 0.66235897862).abs() < 1e-10);
    assert!((g.z0.im + 0.56227951206).abs() < 1e-10);
    assert!(g.vol > 2.8 && g.vol < 2.9);
    assert!(!g.lower_bound_vacuous && g.lower_bound < g.vol);
    assert_eq!(last_error(), "");
    unsafe { wh_surgery_free(h) };
}

#[test]
fn asymptotics_and_phase() {
    let h = handle(1, 1);
    let mut a = WhAsymptotics::default();
    assert_eq!(unsafe { wh_asymptotics(h, &mut a) }, WhStatus::Ok);
    let coef = 1.0 / (2f64.sqrt() * 3f64.powf(0.75));
    assert!((a.tv_coefficient - coef).abs() < 1e-8);
    let mut c = WhComplex::default();
    assert_eq!(unsafe { wh_phase_constant(h, 20, &mut c) }, WhStatus::Ok);
    assert!(((c.re * c.re + c.im * c.im).sqrt() - 1.0).abs() < 1e-14);
    unsafe { wh_surgery_free(h) };
}

#[test]
fn invariant_matches_bruteforce() {
    let h = handle(3, 5);
    assert_eq!(unsafe { wh_surgery_length(h) }, 3);
    for m in 1..=6 {
        let (mut a, mut b) = (WhInvariant::default(), WhInvariant::default());
        assert_eq!(unsafe { wh_invariant(h, 6, m, WhPrecision::Double, &mut a) }, WhStatus::Ok);
        assert_eq!(unsafe { wh_invariant_bruteforce(h, 6, m, &mut b) }, WhStatus::Ok);
        assert_eq!(a.m, m);
        let d = ((a.j_bar.re - b.j_bar.re).powi(2) + (a.j_bar.im - b.j_bar.im).powi(2)).sqrt();
        let s = (b.j_bar.re.powi(2) + b.j_bar.im.powi(2)).sqrt();
        assert!(d < 1e-9 * s.max(1e-3), "m={m}");
        assert!(!a.extended);
    }
    unsafe { wh_surgery_free(h) };
}

#[test]
fn turaev_viro_buffers() {
    let h = handle(1, 1);
    let mut per = vec![0.0; 15];
    let mut total = 0.0;
    let st = unsafe {
        wh_turaev_viro(h, 15, WhNormalization::Rescaled, WhPrecision::Auto, per.as_mut_ptr(), per.len(), &mut total)
    };
    assert_eq!(st, WhStatus::Ok);
    assert!(total > 0.0);
    assert!((per.iter().sum::<f64>() - total).abs() < 1e-9 * total);
    let mut only = 0.0;
    let st = unsafe { wh_turaev_viro(h, 15, WhNormalization::Rescaled, WhPrecision::Auto, ptr::null_mut(), 0, &mut only) };
    assert_eq!(st, WhStatus::Ok);
    assert_eq!(only, total);
    let st = unsafe { wh_turaev_viro(h, 15, WhNormalization::Kirby, WhPrecision::Auto, per.as_mut_ptr(), 3, &mut total) };
    assert_eq!(st, WhStatus::BufferTooSmall);
    assert!(last_error().contains("15"));
    unsafe { wh_surgery_free(h) };
}

#[test]
fn error_codes() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { wh_surgery_new(4, 2, &mut h) }, WhStatus::NotCoprime);
    assert!(h.is_null());
    assert!(last_error().contains("coprime"));
    assert_eq!(unsafe { wh_surgery_new(1, 2, ptr::null_mut()) }, WhStatus::NullPointer);

    let mut g = WhGeometry::default();
    assert_eq!(unsafe { wh_geometry(ptr::null(), &mut g) }, WhStatus::NullPointer);

    let h = handle(-2, 1);
    assert_eq!(unsafe { wh_geometry(h, &mut g) }, WhStatus::Branch);
    let mut j = WhInvariant::default();
    assert_eq!(unsafe { wh_invariant(h, 5, 9, WhPrecision::Double, &mut j) }, WhStatus::Domain);
    unsafe { wh_surgery_free(h) };

    let h = handle(89, 55);
    assert_eq!(unsafe { wh_invariant_bruteforce(h, 40, 1, &mut j) }, WhStatus::Infeasible);
    assert_eq!(unsafe { wh_surgery_length(ptr::null()) }, 0);
    unsafe { wh_surgery_free(h) };
    unsafe { wh_surgery_free(ptr::null_mut()) };
}

#[test]
fn errors_are_per_thread() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { wh_surgery_new(0, 0, &mut h) }, WhStatus::NotCoprime);
    let other = std::thread::spawn(last_error).join().unwrap();
    assert_eq!(other, "");
    assert!(!last_error().is_empty());
}

#[test]
fn header_is_current() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/whitehead.h")).unwrap();
    for name in [
        "wh_surgery_new",
        "wh_surgery_free",
        "wh_geometry",
        "wh_asymptotics",
        "wh_phase_constant",
        "wh_invariant",
        "wh_invariant_bruteforce",
        "wh_turaev_viro",
        "wh_last_error_message",
        "WH_STATUS_INFEASIBLE = 7",
    ] {
        assert!(header.contains(name), "{name}");
    }
}

const C_PROGRAM: &str = r#"
#include "whitehead.h"
#include <math.h>
#include <stdio.h>

int main(void) {
    WhSurgery *h = NULL;
    if (wh_surgery_new(1, -2, &h) != WH_STATUS_OK) return 1;
    WhGeometry g;
    if (wh_geometry(h, &g) != WH_STATUS_OK) return 2;
    if (fabs(g.z0.re + 0.66235897862) > 1e-10) return 3;
    wh_surgery_free(h);
    if (wh_surgery_new(2, 4, &h) != WH_STATUS_NOT_COPRIME) return 4;
    char buf[128];
    if (wh_last_error_message(buf, sizeof buf) == 0) return 5;
    printf("%.6f\n", g.vol);
    return 0;
}
"#;

/// Compile and run a C program against the header and static library, when a C compiler exists.
#[test]
fn c_program_links() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".to_string());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler");
        return;
    }
    let exe = std::env::current_exe().unwrap();
    let profile = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = profile.join("libwhitehead_ffi.a");
    if !lib.exists() {
        eprintln!("skipping: {} not built", lib.display());
        return;
    }
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = tmp.join("ffi_smoke.c");
    let bin = tmp.join("ffi_smoke");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let out = Command::new(&cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    let vol: f64 = String::from_utf8_lossy(&run.stdout).trim().parse().unwrap();
    assert!((vol - 2.828122).abs() < 1e-6);
}
