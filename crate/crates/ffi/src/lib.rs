//! C ABI over `shrinker-spectra`.
//!
//! Every function returns a [`ShsStatus`] and writes results through out
//! pointers. Spectra are opaque [`ShsSpectrum`] handles owned by the caller
//! and released with [`shs_spectrum_free`]. On failure a message is kept per
//! thread and can be read with [`shs_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use shrinker_spectra::chengyang::{a_coeff, table1, thm12_bound};
use shrinker_spectra::dirichlet::{solve_1d, DirichletProblem};
use shrinker_spectra::inequalities::yang_check;
use shrinker_spectra::model::{cylinder_spectrum, ou_spectrum, sphere_spectrum};
use shrinker_spectra::{EigenvalueSequence, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InsufficientData = 3,
    Parse = 4,
    Domain = 5,
    Panic = 6,
}

/// Opaque eigenvalue sequence.
pub struct ShsSpectrum {
    inner: EigenvalueSequence,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct ShsYangReport {
    pub k: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub relative_gap: f64,
    pub shift: f64,
    pub satisfied: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> ShsStatus {
    match e {
        Error::Parse(_) => ShsStatus::Parse,
        Error::InsufficientSpectrum { .. } | Error::InsufficientInputLevels(_) => ShsStatus::InsufficientData,
        Error::Domain(_) | Error::NotApplicable(_) | Error::InvalidShift { .. } => ShsStatus::Domain,
        _ => ShsStatus::InvalidArgument,
    }
}

/// Run `f`, translating errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), ShsStatus>) -> ShsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ShsStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            ShsStatus::Panic
        }
    }
}

fn check<T>(r: shrinker_spectra::Result<T>) -> Result<T, ShsStatus> {
    r.map_err(|e| {
        let s = status_of(&e);
        set_error(e.to_string());
        s
    })
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), ShsStatus> {
    if p.is_null() {
        set_error(format!("{what} is null"));
        Err(ShsStatus::NullPointer)
    } else {
        Ok(())
    }
}

unsafe fn give(out: *mut *mut ShsSpectrum, seq: EigenvalueSequence) -> Result<(), ShsStatus> {
    non_null(out, "out")?;
    *out = Box::into_raw(Box::new(ShsSpectrum { inner: seq }));
    Ok(())
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn shs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// First `count` distinct levels of the round sphere of dimension `n`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shs_spectrum_sphere(n: usize, count: usize, out: *mut *mut ShsSpectrum) -> ShsStatus {
    guard(|| give(out, check(sphere_spectrum(n, count))?))
}

/// First `count` levels of the Ornstein–Uhlenbeck operator on `ℝⁿ`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shs_spectrum_ou(n: usize, count: usize, out: *mut *mut ShsSpectrum) -> ShsStatus {
    guard(|| give(out, check(ou_spectrum(n, count))?))
}

/// Cylinder with a `k`-sphere factor and total dimension `n`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shs_spectrum_cylinder(
    k: usize,
    n: usize,
    count: usize,
    out: *mut *mut ShsSpectrum,
) -> ShsStatus {
    guard(|| give(out, check(cylinder_spectrum(k, n, count))?))
}

/// Lowest `count` Dirichlet eigenvalues on `(a, b)` with `grid` interior points.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shs_spectrum_dirichlet_interval(
    a: f64,
    b: f64,
    grid: usize,
    count: usize,
    out: *mut *mut ShsSpectrum,
) -> ShsStatus {
    guard(|| {
        let p = check(DirichletProblem::interval(a, b, grid, count))?;
        give(out, check(solve_1d(&p))?)
    })
}

/// Parse a spectrum from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shs_spectrum_from_json(json: *const c_char, out: *mut *mut ShsSpectrum) -> ShsStatus {
    guard(|| {
        non_null(json, "json")?;
        let text = CStr::from_ptr(json).to_str().map_err(|e| {
            set_error(e.to_string());
            ShsStatus::Parse
        })?;
        give(out, check(EigenvalueSequence::from_json(text))?)
    })
}

/// # Safety
/// `spectrum` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn shs_spectrum_free(spectrum: *mut ShsSpectrum) {
    if !spectrum.is_null() {
        drop(Box::from_raw(spectrum));
    }
}

/// # Safety
/// `spectrum` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shs_spectrum_num_levels(spectrum: *const ShsSpectrum, out: *mut usize) -> ShsStatus {
    guard(|| {
        non_null(spectrum, "spectrum")?;
        non_null(out, "out")?;
        *out = (*spectrum).inner.num_levels();
        Ok(())
    })
}

/// Eigenvalue and multiplicity of level `index`.
///
/// # Safety
/// `spectrum` must be a live handle; `lambda` and `mult` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shs_spectrum_level(
    spectrum: *const ShsSpectrum,
    index: usize,
    lambda: *mut f64,
    mult: *mut usize,
) -> ShsStatus {
    guard(|| {
        non_null(spectrum, "spectrum")?;
        non_null(lambda, "lambda")?;
        non_null(mult, "mult")?;
        let entries = (*spectrum).inner.entries();
        let level = entries.get(index).ok_or_else(|| {
            set_error(format!("level {index} out of range ({} levels)", entries.len()));
            ShsStatus::InvalidArgument
        })?;
        *lambda = level.lambda;
        *mult = level.mult;
        Ok(())
    })
}

/// JSON form of a spectrum; release it with [`shs_string_free`].
///
/// # Safety
/// `spectrum` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shs_spectrum_to_json(spectrum: *const ShsSpectrum, out: *mut *mut c_char) -> ShsStatus {
    guard(|| {
        non_null(spectrum, "spectrum")?;
        non_null(out, "out")?;
        let json = (*spectrum).inner.to_json();
        *out = CString::new(json).expect("JSON has no NUL").into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn shs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Quadratic inequality at index `k`.
///
/// # Safety
/// `spectrum` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shs_yang_check(
    spectrum: *const ShsSpectrum,
    n: usize,
    min_x2: f64,
    k: usize,
    out: *mut ShsYangReport,
) -> ShsStatus {
    guard(|| {
        non_null(spectrum, "spectrum")?;
        non_null(out, "out")?;
        let r = check(yang_check(&(*spectrum).inner, n, min_x2, k))?;
        *out = ShsYangReport {
            k: r.k,
            lhs: r.lhs,
            rhs: r.rhs,
            gap: r.gap,
            relative_gap: r.relative_gap,
            shift: r.shift,
            satisfied: r.satisfied,
        };
        Ok(())
    })
}

/// Upper bound on `λₖ + shift` for the closed problem.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shs_thm12_bound(n: usize, min_x2: f64, k: usize, out: *mut f64) -> ShsStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = check(thm12_bound(n, min_x2, k))?.bound_value;
        Ok(())
    })
}

/// Growth coefficient `a(m)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shs_a_coeff(m: usize, out: *mut f64) -> ShsStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = check(a_coeff(m))?;
        Ok(())
    })
}

/// Row `k` (1..=41) of the coefficient table, unrounded.
///
/// # Safety
/// `a1`, `a2_next` and `a3_next` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shs_table1_row(k: usize, a1: *mut f64, a2_next: *mut f64, a3_next: *mut f64) -> ShsStatus {
    guard(|| {
        non_null(a1, "a1")?;
        non_null(a2_next, "a2_next")?;
        non_null(a3_next, "a3_next")?;
        let rows = table1();
        let row = k.checked_sub(1).and_then(|i| rows.get(i)).ok_or_else(|| {
            set_error(format!("row {k} outside 1..={}", rows.len()));
            ShsStatus::InvalidArgument
        })?;
        *a1 = row.a1;
        *a2_next = row.a2_next;
        *a3_next = row.a3_next;
        Ok(())
    })
}
