//! C ABI for the `whitehead` library.
//!
//! Every fallible function returns a `WhStatus`; on failure a message is
//! kept per thread and can be read with `wh_last_error_message`.
//! Surgery presentations are opaque `WhSurgery` handles owned by the caller.

use num_complex::Complex64;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use whitehead::asymptotics::critical::c_n;
use whitehead::asymptotics::solve_critical_for;
use whitehead::error::Error;
use whitehead::geometry::{in_set_s, solve_filling_for, vol_lower_bound};
use whitehead::invariants::{rt_bruteforce, rt_reduced, turaev_viro, EvalOptions, InvariantSample, MuNormalization};
use whitehead::scalar::{Precision, PrecisionMode};
use whitehead::special::QuantumLevel;
use whitehead::surgery::SurgeryPresentation;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WhStatus {
    Ok = 0,
    NullPointer = 1,
    NotCoprime = 2,
    Domain = 3,
    Branch = 4,
    Accuracy = 5,
    Convergence = 6,
    Infeasible = 7,
    Internal = 8,
    BufferTooSmall = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WhPrecision {
    Auto = 0,
    Double = 1,
    Extended = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WhNormalization {
    Rescaled = 0,
    Kirby = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct WhComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for WhComplex {
    fn from(z: Complex64) -> Self {
        WhComplex { re: z.re, im: z.im }
    }
}

/// Opaque surgery presentation of the slope p/q.
pub struct WhSurgery {
    inner: SurgeryPresentation,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct WhGeometry {
    pub z0: WhComplex,
    pub u: WhComplex,
    pub v: WhComplex,
    pub gamma: WhComplex,
    pub z1: WhComplex,
    pub z2: WhComplex,
    pub theta1: WhComplex,
    pub theta2: WhComplex,
    pub vol: f64,
    /// Chern–Simons invariant in [0, π²)
    pub cs: f64,
    pub residual: f64,
    pub lower_bound: f64,
    pub lower_bound_vacuous: bool,
    pub in_set_s: bool,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct WhAsymptotics {
    pub theta1: WhComplex,
    pub theta2: WhComplex,
    pub zeta: WhComplex,
    pub omega: WhComplex,
    pub h: WhComplex,
    pub tv_sine_ratio: f64,
    pub tv_coefficient: f64,
    pub residual: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct WhInvariant {
    pub m: u32,
    pub j_bar: WhComplex,
    pub j_norm: WhComplex,
    /// true when the value was computed in extended precision
    pub extended: bool,
}

impl From<InvariantSample> for WhInvariant {
    fn from(s: InvariantSample) -> Self {
        WhInvariant {
            m: s.m,
            j_bar: s.j_bar.into(),
            j_norm: s.j_norm.into(),
            extended: s.precision == Precision::Extended,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> WhStatus {
    match e {
        Error::NotCoprime { .. } => WhStatus::NotCoprime,
        Error::Domain(_) => WhStatus::Domain,
        Error::Branch(_) => WhStatus::Branch,
        Error::Accuracy { .. } => WhStatus::Accuracy,
        Error::Convergence(_) => WhStatus::Convergence,
        Error::Infeasible(_) => WhStatus::Infeasible,
        Error::Internal(_) => WhStatus::Internal,
    }
}

/// Run `f`, translating errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), (WhStatus, String)>) -> WhStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => WhStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(format!("panic: {msg}"));
            WhStatus::Panic
        }
    }
}

fn lib<T>(r: whitehead::error::Result<T>) -> Result<T, (WhStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (WhStatus, String) {
    (WhStatus::NullPointer, format!("{what} is null"))
}

unsafe fn surgery<'a>(h: *const WhSurgery) -> Result<&'a SurgeryPresentation, (WhStatus, String)> {
    h.as_ref().map(|s| &s.inner).ok_or_else(|| null("surgery handle"))
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), (WhStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(())
}

fn options(p: WhPrecision) -> EvalOptions {
    EvalOptions::with_precision(match p {
        WhPrecision::Auto => PrecisionMode::Auto,
        WhPrecision::Double => PrecisionMode::Fixed(Precision::Double),
        WhPrecision::Extended => PrecisionMode::Fixed(Precision::Extended),
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn wh_version() -> *const c_char {
    static V: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(s) => s,
        Err(_) => panic!("version string"),
    };
    V.as_ptr()
}

/// Copy the calling thread's last error message into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length without the NUL,
/// or 0 if the last call succeeded.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn wh_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| match e.borrow().as_ref() {
        None => {
            if !buf.is_null() && len > 0 {
                *buf = 0;
            }
            0
        }
        Some(msg) => {
            let bytes = msg.as_bytes();
            if !buf.is_null() && len > 0 {
                let n = bytes.len().min(len - 1);
                std::ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
                *buf.add(n) = 0;
            }
            bytes.len()
        }
    })
}

/// Create the presentation of p/q surgery. Free it with `wh_surgery_free`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wh_surgery_new(p: i64, q: i64, out: *mut *mut WhSurgery) -> WhStatus {
    guard(|| {
        let inner = lib(SurgeryPresentation::new(p, q))?;
        write(out, Box::into_raw(Box::new(WhSurgery { inner })))
    })
}

/// # Safety
/// `h` must be null or a handle from `wh_surgery_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wh_surgery_free(h: *mut WhSurgery) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Number of surgery components l of the chain-link presentation, 0 on a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wh_surgery_length(h: *const WhSurgery) -> usize {
    h.as_ref().map(|s| s.inner.l()).unwrap_or(0)
}

/// Complete hyperbolic structure, volume and Chern–Simons invariant.
///
/// # Safety
/// `h` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn wh_geometry(h: *const WhSurgery, out: *mut WhGeometry) -> WhStatus {
    guard(|| {
        let pres = surgery(h)?;
        let s = lib(solve_filling_for(pres))?;
        let (p, q) = (pres.slope.p, pres.slope.q);
        let b = vol_lower_bound(p, q);
        write(
            out,
            WhGeometry {
                z0: s.z0.into(),
                u: s.u.into(),
                v: s.v.into(),
                gamma: s.gamma.into(),
                z1: s.z1.into(),
                z2: s.z2.into(),
                theta1: s.theta1.into(),
                theta2: s.theta2.into(),
                vol: s.vol,
                cs: s.cs,
                residual: s.residual,
                lower_bound: b.value,
                lower_bound_vacuous: b.vacuous,
                in_set_s: in_set_s(p, q),
            },
        )
    })
}

/// Critical point of the potential and the leading-order constants.
///
/// # Safety
/// `h` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn wh_asymptotics(h: *const WhSurgery, out: *mut WhAsymptotics) -> WhStatus {
    guard(|| {
        let prof = lib(solve_critical_for(surgery(h)?))?;
        write(
            out,
            WhAsymptotics {
                theta1: prof.theta1_0.into(),
                theta2: prof.theta2_0.into(),
                zeta: prof.zeta.into(),
                omega: prof.omega.into(),
                h: prof.h.into(),
                tv_sine_ratio: prof.tv_sine_ratio(),
                tv_coefficient: prof.tv_coefficient(),
                residual: prof.residual,
            },
        )
    })
}

/// The unit-modulus phase constant C_N of the leading-order formula.
///
/// # Safety
/// `h` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn wh_phase_constant(h: *const WhSurgery, n: u32, out: *mut WhComplex) -> WhStatus {
    guard(|| {
        let lv = lib(QuantumLevel::new(n))?;
        write(out, c_n(surgery(h)?, &lv).into())
    })
}

/// Relative invariant J̄_m at level N (r = 2N+1) through the reduced sum.
///
/// # Safety
/// `h` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn wh_invariant(
    h: *const WhSurgery,
    n: u32,
    m: u32,
    precision: WhPrecision,
    out: *mut WhInvariant,
) -> WhStatus {
    guard(|| {
        let lv = lib(QuantumLevel::new(n))?;
        let s = lib(rt_reduced(surgery(h)?, m, &lv, &options(precision)))?;
        write(out, s.into())
    })
}

/// J̄_m by the direct multi-sum; fails with `Infeasible` beyond the term budget.
///
/// # Safety
/// `h` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn wh_invariant_bruteforce(h: *const WhSurgery, n: u32, m: u32, out: *mut WhInvariant) -> WhStatus {
    guard(|| {
        let lv = lib(QuantumLevel::new(n))?;
        let s = lib(rt_bruteforce(surgery(h)?, m, &lv))?;
        write(out, s.into())
    })
}

/// Turaev–Viro invariant at level N. When `per_color` is non-null it receives
/// μ²|J̄_m|² for m = 1..N and `len` must be at least N.
///
/// # Safety
/// `h` must be a live handle, `total` valid, and `per_color` null or valid for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn wh_turaev_viro(
    h: *const WhSurgery,
    n: u32,
    normalization: WhNormalization,
    precision: WhPrecision,
    per_color: *mut f64,
    len: usize,
    total: *mut f64,
) -> WhStatus {
    guard(|| {
        let pres = surgery(h)?;
        let lv = lib(QuantumLevel::new(n))?;
        if total.is_null() {
            return Err(null("total"));
        }
        if !per_color.is_null() && len < n as usize {
            return Err((WhStatus::BufferTooSmall, format!("per_color needs {n} entries, got {len}")));
        }
        let norm = match normalization {
            WhNormalization::Rescaled => MuNormalization::Rescaled,
            WhNormalization::Kirby => MuNormalization::Kirby,
        };
        let tv = turaev_viro(pres, &lv, &options(precision), norm);
        if !per_color.is_null() {
            let dst = std::slice::from_raw_parts_mut(per_color, n as usize);
            for (d, v) in dst.iter_mut().zip(&tv.per_color) {
                *d = tv.mu_r_sq * v;
            }
        }
        write(total, tv.total)
    })
}
