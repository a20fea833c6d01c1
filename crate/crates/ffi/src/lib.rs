//! C ABI over `reciplab`.
//!
//! Every fallible call returns an [`RlStatus`] and writes its result through
//! an out-pointer. Values cross the boundary as opaque handles or as
//! NUL-terminated strings owned by the library; release them with the
//! matching `*_free` function. The message for the most recent failure on
//! the calling thread is available from [`rl_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use reciplab::arith::{parse_cyclotomic, parse_rational, rational_to_string, Cyclotomic, Scalar};
use reciplab::classical::{bernoulli_number, bernoulli_poly, fe_number, fe_poly};
use reciplab::dedekind::{classical_dedekind, th11_residual};
use reciplab::padic::teichmuller;
use reciplab::verify::{sweep, Grid, TheoremId, VerificationReport};
use reciplab::Error;

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    ZeroDivisor = 4,
    PoleAtOne = 5,
    DegenerateParams = 6,
    NotCoprime = 7,
    OutOfDomain = 8,
    PrecisionExhausted = 9,
    BadModulus = 10,
    CongruenceViolation = 11,
    NonPrimitive = 12,
    EvenModulus = 13,
    ToleranceUnreachable = 14,
    InvalidArgument = 15,
    OrderMismatch = 16,
    Config = 17,
    IndexOutOfRange = 18,
    Panic = 99,
}

impl From<&Error> for RlStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::ZeroDivisor => RlStatus::ZeroDivisor,
            Error::PoleAtOne(_) => RlStatus::PoleAtOne,
            Error::OrderMismatch(..) => RlStatus::OrderMismatch,
            Error::DegenerateParams(_) => RlStatus::DegenerateParams,
            Error::NotCoprime(..) => RlStatus::NotCoprime,
            Error::OutOfDomain(_) => RlStatus::OutOfDomain,
            Error::PrecisionExhausted(_) => RlStatus::PrecisionExhausted,
            Error::BadModulus(_) => RlStatus::BadModulus,
            Error::CongruenceViolation(..) => RlStatus::CongruenceViolation,
            Error::NonPrimitive { .. } => RlStatus::NonPrimitive,
            Error::EvenModulus(_) => RlStatus::EvenModulus,
            Error::ToleranceUnreachable(..) => RlStatus::ToleranceUnreachable,
            Error::InvalidArgument(_) => RlStatus::InvalidArgument,
            Error::Parse(_) => RlStatus::Parse,
        }
    }
}

/// An element of a cyclotomic field `Q(zeta_m)`, rationals included.
pub struct RlScalar(Cyclotomic);

/// A parameter grid for one theorem.
pub struct RlGrid(Grid);

/// The reports of a finished sweep, in grid order.
pub struct RlSweep {
    reports: Vec<VerificationReport>,
    counts: RlSweepCounts,
}

/// Totals by report status.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RlSweepCounts {
    pub pass: usize,
    pub fail: usize,
    pub skipped_pole: usize,
    pub finding: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Fail(RlStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(RlStatus::from(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> RlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            RlStatus::Ok
        }
        Ok(Err(Fail(code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal panic");
            RlStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail(RlStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Fail(RlStatus::InvalidUtf8, e.to_string()))
}

unsafe fn borrow<'a, T>(h: *const T) -> Result<&'a T, Fail> {
    h.as_ref().ok_or_else(|| Fail(RlStatus::NullPointer, "null handle".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(RlStatus::NullPointer, "null out-pointer".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|e| Fail(RlStatus::InvalidArgument, e.to_string()))?;
    write_out(out, c.into_raw())
}

unsafe fn write_scalar(out: *mut *mut RlScalar, v: Cyclotomic) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(RlStatus::NullPointer, "null out-pointer".into()));
    }
    out.write(Box::into_raw(Box::new(RlScalar(v))));
    Ok(())
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn rl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn rl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a rational like `-5/2` or a cyclotomic expression like `3*z12^5 - 1/2`.
///
/// # Safety
/// `text` must be a valid C string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_scalar_parse(text: *const c_char, out: *mut *mut RlScalar) -> RlStatus {
    guard(|| {
        let v = parse_cyclotomic(read_str(text)?)?;
        write_scalar(out, v)
    })
}

/// Frees a scalar handle. NULL is ignored.
///
/// # Safety
/// `h` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn rl_scalar_free(h: *mut RlScalar) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Writes the canonical text form, e.g. `1/2` or `-1 - z3`.
///
/// # Safety
/// `h` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_scalar_to_string(h: *const RlScalar, out: *mut *mut c_char) -> RlStatus {
    guard(|| write_string(out, borrow(h)?.0.render()))
}

/// Writes `{"conductor": m, "coeffs": [...]}`.
///
/// # Safety
/// `h` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_scalar_to_json(h: *const RlScalar, out: *mut *mut c_char) -> RlStatus {
    guard(|| write_string(out, borrow(h)?.0.to_json().to_string()))
}

/// Writes 1 to `out` when the scalar is zero, else 0.
///
/// # Safety
/// `h` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_scalar_is_zero(h: *const RlScalar, out: *mut i32) -> RlStatus {
    guard(|| write_out(out, borrow(h)?.0.is_zero() as i32))
}

/// Bernoulli number `B_n` as a rational string.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_bernoulli_number(n: u32, out: *mut *mut c_char) -> RlStatus {
    guard(|| write_string(out, rational_to_string(&bernoulli_number(n as usize))))
}

/// Bernoulli polynomial `B_n(x)` at a rational `x` given as text.
///
/// # Safety
/// `x` must be a valid C string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_bernoulli_poly(n: u32, x: *const c_char, out: *mut *mut c_char) -> RlStatus {
    guard(|| {
        let x = parse_rational(read_str(x)?)?;
        write_string(out, rational_to_string(&bernoulli_poly(n as usize, &x)))
    })
}

/// Frobenius-Euler number `H_n(u)`.
///
/// # Safety
/// `u` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_fe_number(n: u32, u: *const RlScalar, out: *mut *mut RlScalar) -> RlStatus {
    guard(|| {
        let v = fe_number(n as usize, &borrow(u)?.0)?;
        write_scalar(out, v)
    })
}

/// Frobenius-Euler polynomial `H_n(x, u)`.
///
/// # Safety
/// `x`, `u` must be live handles and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_fe_poly(
    n: u32,
    x: *const RlScalar,
    u: *const RlScalar,
    out: *mut *mut RlScalar,
) -> RlStatus {
    guard(|| {
        let v = fe_poly(n as usize, &borrow(x)?.0, &borrow(u)?.0)?;
        write_scalar(out, v)
    })
}

/// Classical Dedekind sum `s(h, k)` as a rational string.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_dedekind_sum(h: i64, k: i64, out: *mut *mut c_char) -> RlStatus {
    guard(|| write_string(out, rational_to_string(&classical_dedekind(h, k)?)))
}

/// Reciprocity residual for `S_n(h, k | root^k)`; zero when the law holds.
///
/// # Safety
/// `root` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_reciprocity_residual(
    n: u32,
    h: i64,
    k: i64,
    root: *const RlScalar,
    out: *mut *mut RlScalar,
) -> RlStatus {
    guard(|| {
        let r = th11_residual(n as usize, h, k, &borrow(root)?.0)?;
        write_scalar(out, r.residual())
    })
}

/// Teichmuller representative of `a` mod `p^prec`, rendered like `57 + O(5^3)`.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_teichmuller(a: i64, p: u64, prec: i64, out: *mut *mut c_char) -> RlStatus {
    guard(|| write_string(out, teichmuller(a, p, prec)?.to_string()))
}

unsafe fn theorem(name: *const c_char) -> Result<TheoremId, Fail> {
    read_str(name)?
        .parse::<TheoremId>()
        .map_err(|e| Fail(RlStatus::InvalidArgument, e.to_string()))
}

/// Built-in grid for a theorem id such as `th11` or `witt`.
///
/// # Safety
/// `name` must be a valid C string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_grid_default(name: *const c_char, out: *mut *mut RlGrid) -> RlStatus {
    guard(|| {
        let g = Grid::default_for(theorem(name)?);
        write_out(out, Box::into_raw(Box::new(RlGrid(g))))
    })
}

/// Parses a flat TOML grid. `name` may be NULL when the text carries a
/// `theorem` key.
///
/// # Safety
/// `toml` must be a valid C string, `name` NULL or a valid C string, and
/// `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_grid_parse(
    name: *const c_char,
    toml: *const c_char,
    out: *mut *mut RlGrid,
) -> RlStatus {
    guard(|| {
        let t = if name.is_null() { None } else { Some(theorem(name)?) };
        let g = Grid::parse(read_str(toml)?, t).map_err(|e| Fail(RlStatus::Config, e.to_string()))?;
        write_out(out, Box::into_raw(Box::new(RlGrid(g))))
    })
}

/// Frees a grid handle. NULL is ignored.
///
/// # Safety
/// `h` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn rl_grid_free(h: *mut RlGrid) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Runs the sweep on `jobs` threads (0 means 1).
///
/// # Safety
/// `grid` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_sweep_run(grid: *const RlGrid, jobs: u32, out: *mut *mut RlSweep) -> RlStatus {
    guard(|| {
        let (reports, s) = sweep(&borrow(grid)?.0, jobs.max(1) as usize)?;
        let counts = RlSweepCounts { pass: s.pass, fail: s.fail, skipped_pole: s.skipped_pole, finding: s.finding };
        write_out(out, Box::into_raw(Box::new(RlSweep { reports, counts })))
    })
}

/// Frees a sweep handle. NULL is ignored.
///
/// # Safety
/// `h` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn rl_sweep_free(h: *mut RlSweep) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_sweep_counts(h: *const RlSweep, out: *mut RlSweepCounts) -> RlStatus {
    guard(|| write_out(out, borrow(h)?.counts))
}

/// # Safety
/// `h` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_sweep_len(h: *const RlSweep, out: *mut usize) -> RlStatus {
    guard(|| write_out(out, borrow(h)?.reports.len()))
}

/// One report as a JSON object.
///
/// # Safety
/// `h` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_sweep_report_json(h: *const RlSweep, index: usize, out: *mut *mut c_char) -> RlStatus {
    guard(|| {
        let r = borrow(h)?
            .reports
            .get(index)
            .ok_or_else(|| Fail(RlStatus::IndexOutOfRange, format!("no report {index}")))?;
        let json = serde_json::to_string(r).map_err(|e| Fail(RlStatus::InvalidArgument, e.to_string()))?;
        write_string(out, json)
    })
}
