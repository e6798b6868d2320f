//! C ABI over the `freerad` library, float backend.
//!
//! Every fallible function returns a [`FreeradStatus`] and writes its result
//! through an out pointer. After a non-`OK` status, [`freerad_last_error`]
//! describes the failure on the calling thread. Handles are opaque and owned
//! by the caller; release them with the matching `_free` function.
//!
//! Ranks are passed as `uint32_t`; [`FREERAD_RANK_INFINITE`] (0) selects the
//! free group on countably many generators.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use freerad::classify::{self, VerdictStatus};
use freerad::moments::{synthesize_phi, synthesize_psi, AtomicMeasure, RadialFunction, Role};
use freerad::oracle::{self, GramVerdict};
use freerad::{io, spherical, words, Error, ErrorClass, Rank};

/// Rank value selecting infinitely many generators.
pub const FREERAD_RANK_INFINITE: u32 = 0;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreeradStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Bad arguments or malformed input (also JSON schema errors).
    InvalidInput = 2,
    /// Condition loss, singular moments, non-convergence and the like.
    NumericFailure = 3,
    /// The caller's buffer is shorter than the result.
    BufferTooSmall = 4,
    /// An internal panic was caught at the boundary.
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreeradRole {
    Phi = 0,
    Psi = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreeradVerdict {
    ConsistentPd = 0,
    ConsistentCnd = 1,
    CertifiedNot = 2,
    Indeterminate = 3,
}

/// Atomic measure under construction.
pub struct FreeradMeasure {
    atoms: Vec<(f64, f64)>,
}

/// Radial function value table with its rank and role.
pub struct FreeradRadial {
    inner: RadialFunction<f64>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure {
    status: FreeradStatus,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e.class() {
            ErrorClass::Input => FreeradStatus::InvalidInput,
            ErrorClass::Numeric => FreeradStatus::NumericFailure,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

fn failure(status: FreeradStatus, message: impl Into<String>) -> Failure {
    Failure {
        status,
        message: message.into(),
    }
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> FreeradStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => FreeradStatus::Ok,
        Ok(Err(f)) => {
            set_error(f.message);
            f.status
        }
        Err(_) => {
            set_error("internal panic".into());
            FreeradStatus::Panic
        }
    }
}

unsafe fn out<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, Failure> {
    p.as_mut()
        .ok_or_else(|| failure(FreeradStatus::NullPointer, format!("{name} is null")))
}

unsafe fn handle<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| failure(FreeradStatus::NullPointer, format!("{name} is null")))
}

fn rank(r: u32) -> Result<Rank, Failure> {
    if r == FREERAD_RANK_INFINITE {
        Ok(Rank::Infinite)
    } else {
        Ok(Rank::finite(r)?)
    }
}

fn finite(x: f64, name: &str) -> Result<f64, Failure> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(failure(
            FreeradStatus::InvalidInput,
            format!("{name} must be finite"),
        ))
    }
}

fn role(r: FreeradRole) -> Role {
    match r {
        FreeradRole::Phi => Role::Phi,
        FreeradRole::Psi => Role::Psi,
    }
}

fn new_radial(f: RadialFunction<f64>) -> *mut FreeradRadial {
    Box::into_raw(Box::new(FreeradRadial { inner: f }))
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn freerad_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Number of reduced words of length `n`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn freerad_sphere_size(r: u32, n: usize, out: *mut u64) -> FreeradStatus {
    guard(|| {
        *self::out(out, "out")? = words::sphere_size(rank(r)?, n)?;
        Ok(())
    })
}

/// Spherical function value `φ̇_s(n)`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn freerad_spherical_value(r: u32, s: f64, n: usize, out: *mut f64) -> FreeradStatus {
    guard(|| {
        *self::out(out, "out")? = spherical::spherical_value(rank(r)?, &finite(s, "s")?, n);
        Ok(())
    })
}

/// `ψ̇_s(n) = (1 - φ̇_s(n)) / (1 - s)`, continuous at `s = 1`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn freerad_psi_value(r: u32, s: f64, n: usize, out: *mut f64) -> FreeradStatus {
    guard(|| {
        *self::out(out, "out")? = spherical::psi_value(rank(r)?, &finite(s, "s")?, n);
        Ok(())
    })
}

/// `ψ̇_1(n)`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn freerad_psi_one(r: u32, n: usize, out: *mut f64) -> FreeradStatus {
    guard(|| {
        *self::out(out, "out")? = spherical::psi_one(rank(r)?, n);
        Ok(())
    })
}

/// `s = q/(q+1) (q^-z + q^(z-1))` for a finite rank.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn freerad_s_from_z(r: u32, z: f64, out: *mut f64) -> FreeradStatus {
    guard(|| {
        *self::out(out, "out")? = spherical::s_from_z(rank(r)?, finite(z, "z")?)?;
        Ok(())
    })
}

/// Empty measure. Never null.
#[no_mangle]
pub extern "C" fn freerad_measure_new() -> *mut FreeradMeasure {
    Box::into_raw(Box::new(FreeradMeasure { atoms: Vec::new() }))
}

/// Add an atom of weight `w > 0` at `s`. Support and distinctness are
/// checked when the measure is used.
///
/// # Safety
/// `m` must be null or a live measure handle.
#[no_mangle]
pub unsafe extern "C" fn freerad_measure_push(m: *mut FreeradMeasure, s: f64, w: f64) -> FreeradStatus {
    guard(|| {
        let m = out(m, "measure")?;
        let (s, w) = (finite(s, "s")?, finite(w, "w")?);
        if w <= 0.0 {
            return Err(failure(
                FreeradStatus::InvalidInput,
                "atom weights must be positive",
            ));
        }
        m.atoms.push((s, w));
        Ok(())
    })
}

/// # Safety
/// `m` must be null or a measure handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn freerad_measure_free(m: *mut FreeradMeasure) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// `Σ w φ̇_s` (role `PHI`) or `Σ w ψ̇_s` (role `PSI`) at lengths `0..=depth`.
///
/// # Safety
/// `m` must be a live measure handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn freerad_synthesize(
    r: u32,
    m: *const FreeradMeasure,
    depth: usize,
    which: FreeradRole,
    out: *mut *mut FreeradRadial,
) -> FreeradStatus {
    guard(|| {
        let out = self::out(out, "out")?;
        let mu = AtomicMeasure::from_pairs(handle(m, "measure")?.atoms.iter().copied())?;
        let f = match role(which) {
            Role::Phi => synthesize_phi(rank(r)?, &mu, depth)?,
            Role::Psi => synthesize_psi(rank(r)?, &mu, depth)?,
        };
        *out = new_radial(f);
        Ok(())
    })
}

/// Radial function from `len` values.
///
/// # Safety
/// `values` must point to `len` readable doubles; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn freerad_radial_new(
    r: u32,
    which: FreeradRole,
    values: *const f64,
    len: usize,
    out: *mut *mut FreeradRadial,
) -> FreeradStatus {
    guard(|| {
        let out = self::out(out, "out")?;
        if values.is_null() {
            return Err(failure(FreeradStatus::NullPointer, "values is null"));
        }
        let values = std::slice::from_raw_parts(values, len).to_vec();
        *out = new_radial(RadialFunction::new(rank(r)?, role(which), values)?);
        Ok(())
    })
}

/// Parse `{"rank": .., "role": .., "values": [..]}`.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn freerad_radial_from_json(
    json: *const c_char,
    out: *mut *mut FreeradRadial,
) -> FreeradStatus {
    guard(|| {
        let out = self::out(out, "out")?;
        if json.is_null() {
            return Err(failure(FreeradStatus::NullPointer, "json is null"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|_| failure(FreeradStatus::InvalidInput, "json is not UTF-8"))?;
        *out = new_radial(io::radial_from_json(&io::parse_str(text)?)?);
        Ok(())
    })
}

/// Serialize to JSON. Release the string with [`freerad_string_free`].
///
/// # Safety
/// `f` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn freerad_radial_to_json(
    f: *const FreeradRadial,
    out: *mut *mut c_char,
) -> FreeradStatus {
    guard(|| {
        let out = self::out(out, "out")?;
        let text = io::radial_to_json(&handle(f, "radial")?.inner).to_string();
        *out = CString::new(text).expect("JSON has no nul").into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library and not freed before.
#[no_mangle]
pub unsafe extern "C" fn freerad_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Number of stored values (`depth + 1`).
///
/// # Safety
/// `f` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn freerad_radial_len(f: *const FreeradRadial, out: *mut usize) -> FreeradStatus {
    guard(|| {
        *self::out(out, "out")? = handle(f, "radial")?.inner.values().len();
        Ok(())
    })
}

/// Copy the values into `buf`. `written` always receives the full length;
/// `BUFFER_TOO_SMALL` is returned when `cap` is shorter and nothing is copied.
///
/// # Safety
/// `buf` must be writable for `cap` doubles; `f` a live handle.
#[no_mangle]
pub unsafe extern "C" fn freerad_radial_values(
    f: *const FreeradRadial,
    buf: *mut f64,
    cap: usize,
    written: *mut usize,
) -> FreeradStatus {
    guard(|| {
        let values = handle(f, "radial")?.inner.values();
        *out(written, "written")? = values.len();
        if cap < values.len() {
            return Err(failure(
                FreeradStatus::BufferTooSmall,
                format!("need room for {} values", values.len()),
            ));
        }
        if buf.is_null() {
            return Err(failure(FreeradStatus::NullPointer, "buf is null"));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
        Ok(())
    })
}

/// # Safety
/// `f` must be null or a handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn freerad_radial_free(f: *mut FreeradRadial) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// `exp(-t ψ)` for a ψ-role function and `t > 0`.
///
/// # Safety
/// `psi` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn freerad_schoenberg(
    psi: *const FreeradRadial,
    t: f64,
    out: *mut *mut FreeradRadial,
) -> FreeradStatus {
    guard(|| {
        let out = self::out(out, "out")?;
        *out = new_radial(classify::schoenberg(&handle(psi, "psi")?.inner, t)?);
        Ok(())
    })
}

fn verdict(v: VerdictStatus) -> FreeradVerdict {
    match v {
        VerdictStatus::ConsistentPd => FreeradVerdict::ConsistentPd,
        VerdictStatus::ConsistentCnd => FreeradVerdict::ConsistentCnd,
        VerdictStatus::CertifiedNot => FreeradVerdict::CertifiedNot,
        VerdictStatus::Indeterminate => FreeradVerdict::Indeterminate,
    }
}

/// Positive definiteness test of a φ table via its moment sequence.
///
/// # Safety
/// `f` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn freerad_decide_pd(
    f: *const FreeradRadial,
    tol: f64,
    out: *mut FreeradVerdict,
) -> FreeradStatus {
    guard(|| {
        *self::out(out, "out")? = verdict(classify::decide_pd(&handle(f, "radial")?.inner, tol)?.status);
        Ok(())
    })
}

/// Conditional negative definiteness test of a ψ table.
///
/// # Safety
/// `f` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn freerad_decide_cnd(
    f: *const FreeradRadial,
    tol: f64,
    out: *mut FreeradVerdict,
) -> FreeradStatus {
    guard(|| {
        *self::out(out, "out")? = verdict(classify::decide_cnd(&handle(f, "radial")?.inner, tol)?.status);
        Ok(())
    })
}

/// Gram-matrix test on the Cayley ball of `radius`: positive semidefinite
/// for a φ-role table, Schoenberg-kernel test for a ψ-role table.
///
/// # Safety
/// `f` must be a live handle; `min_eig` and `holds` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn freerad_gram_check(
    f: *const FreeradRadial,
    radius: usize,
    tol: f64,
    min_eig: *mut f64,
    holds: *mut bool,
) -> FreeradStatus {
    guard(|| {
        let (min_eig, holds) = (out(min_eig, "min_eig")?, out(holds, "holds")?);
        let f = &handle(f, "radial")?.inner;
        let report = match f.role() {
            Role::Phi => oracle::gram_pd(f, radius, tol)?,
            Role::Psi => oracle::gram_cnd(f, radius, tol)?,
        };
        *min_eig = report.min_eig;
        *holds = report.verdict == GramVerdict::Holds;
        Ok(())
    })
}

/// Linear growth bound `ψ̇(n) <= c n` with `c = ψ̇(1) r/(r-1)`.
///
/// # Safety
/// `f` must be a live handle; `c` and `holds` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn freerad_linear_bound(
    f: *const FreeradRadial,
    c: *mut f64,
    holds: *mut bool,
) -> FreeradStatus {
    guard(|| {
        let (c, holds) = (out(c, "c")?, out(holds, "holds")?);
        let report = classify::linear_bound_report(&handle(f, "radial")?.inner)?;
        *c = report.c;
        *holds = report.holds;
        Ok(())
    })
}
