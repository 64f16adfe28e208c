//! C ABI for `nonperiod`.
//!
//! Conventions:
//! * every fallible function returns an [`NpStatus`]; `NP_STATUS_OK` is 0;
//! * results come back through out-pointers, which are written only on success;
//! * strings returned by the library are NUL-terminated, owned by the caller
//!   and released with [`np_string_free`];
//! * handles are opaque and released with their `*_free` function;
//! * the message for the most recent failure on the calling thread is
//!   available from [`np_last_error_message`].
//!
//! Exact rationals cross the boundary as `"p/q"` strings.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nonperiod::diagonal::Diagonal;
use nonperiod::exact::{fraction, parse_fraction};
use nonperiod::io::parse_domain;
use nonperiod::semialg::{approximate_volume, riemann_volume, BasicDomain};
use nonperiod::{beta, Budget, Code, Enumeration, Error, ZeroPow};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NpStatus {
    Ok = 0,
    /// A required pointer was null or a string was not UTF-8.
    NullOrInvalidArgument = 1,
    /// Malformed input: domain JSON, fraction text, dimensions, arities.
    InvalidInput = 2,
    /// A budget ran out; retrying with larger limits may succeed.
    BudgetExceeded = 3,
    /// The value involves `0^0` under the indeterminate convention.
    Indeterminate = 4,
    /// The library panicked. This is a bug.
    Internal = 5,
}

/// Convention for `0^0` in enumerated functions.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NpZeroPow {
    One = 0,
    Indeterminate = 1,
}

impl From<NpZeroPow> for ZeroPow {
    fn from(z: NpZeroPow) -> Self {
        match z {
            NpZeroPow::One => ZeroPow::One,
            NpZeroPow::Indeterminate => ZeroPow::Indeterminate,
        }
    }
}

/// A parsed basic semi-algebraic domain.
pub struct NpDomain {
    inner: BasicDomain,
}

/// The diagonal real with its computed bits cached across calls.
pub struct NpDiagonal {
    inner: Diagonal,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', " ")).expect("NUL removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn status_of(e: &Error) -> NpStatus {
    match e {
        Error::Indeterminate => NpStatus::Indeterminate,
        e if e.is_budget() => NpStatus::BudgetExceeded,
        _ => NpStatus::InvalidInput,
    }
}

/// Runs `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), NpStatus>) -> NpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NpStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal panic");
            NpStatus::Internal
        }
    }
}

fn fail(e: Error) -> NpStatus {
    set_error(e.to_string());
    status_of(&e)
}

fn null_arg(name: &str) -> NpStatus {
    set_error(format!("{name} must not be null"));
    NpStatus::NullOrInvalidArgument
}

unsafe fn read_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, NpStatus> {
    if p.is_null() {
        return Err(null_arg(name));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("{name} is not valid UTF-8"));
        NpStatus::NullOrInvalidArgument
    })
}

fn into_c(s: String) -> *mut c_char {
    CString::new(s).expect("library strings contain no NUL").into_raw()
}

fn budget(bits: u64, nodes: u64) -> Result<Budget, NpStatus> {
    Budget::new(bits, nodes).map_err(|_| {
        set_error("budget caps must be positive");
        NpStatus::InvalidInput
    })
}

/// Message of the last failure on this thread, or null if none. The caller
/// frees it with [`np_string_free`].
#[no_mangle]
pub extern "C" fn np_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |s| s.clone().into_raw()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn np_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Cantor pairing `J(x, y)`. Returns `NP_STATUS_INVALID_INPUT` on overflow.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn np_pair(x: u64, y: u64, out: *mut u64) -> NpStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_arg("out"));
        }
        match nonperiod::pairing::checked_pair(x, y) {
            Some(z) => {
                *out = z;
                Ok(())
            }
            None => {
                set_error(format!("J({x}, {y}) overflows 64 bits"));
                Err(NpStatus::InvalidInput)
            }
        }
    })
}

/// Inverse pairing: `z = J(*left, *right)`.
///
/// # Safety
/// `left` and `right` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn np_unpair(z: u64, left: *mut u64, right: *mut u64) -> NpStatus {
    guard(|| {
        if left.is_null() || right.is_null() {
            return Err(null_arg("left/right"));
        }
        let (l, r) = nonperiod::unpair(z);
        *left = l;
        *right = r;
        Ok(())
    })
}

/// `ḡ_e(index)` as `"p/q"`; the real `β_e` lies within `1/(6·7^index)`.
///
/// # Safety
/// `value_out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn np_beta(
    e: u64,
    index: u64,
    budget_bits: u64,
    budget_nodes: u64,
    zero_pow: NpZeroPow,
    value_out: *mut *mut c_char,
) -> NpStatus {
    guard(|| {
        if value_out.is_null() {
            return Err(null_arg("value_out"));
        }
        let b = budget(budget_bits, budget_nodes)?;
        let en = Enumeration::new(zero_pow.into());
        let approx = beta(&en, Code(e), index, &b).map_err(fail)?;
        *value_out = into_c(fraction(&approx.value));
        Ok(())
    })
}

/// Creates a diagonal computation. Returns null on zero budgets.
#[no_mangle]
pub extern "C" fn np_diagonal_new(budget_bits: u64, budget_nodes: u64, zero_pow: NpZeroPow) -> *mut NpDiagonal {
    let Ok(b) = budget(budget_bits, budget_nodes) else {
        return ptr::null_mut();
    };
    let inner = Diagonal::new(Enumeration::new(zero_pow.into()), b);
    Box::into_raw(Box::new(NpDiagonal { inner }))
}

/// # Safety
/// `d` must come from [`np_diagonal_new`] and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn np_diagonal_free(d: *mut NpDiagonal) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Writes `ε_1..ε_count` (each 0 or 1) to `out[0..count]`.
///
/// # Safety
/// `d` must be a live handle; `out` must be valid for `count` writes.
#[no_mangle]
pub unsafe extern "C" fn np_diagonal_epsilons(d: *mut NpDiagonal, count: usize, out: *mut u8) -> NpStatus {
    guard(|| {
        let d = d.as_mut().ok_or_else(|| null_arg("d"))?;
        if out.is_null() {
            return Err(null_arg("out"));
        }
        let eps = d.inner.epsilons(count as u64).map_err(fail)?;
        ptr::copy_nonoverlapping(eps.as_ptr(), out, eps.len());
        Ok(())
    })
}

/// The first `count` certified decimal digits of `α/2`, without the
/// leading `"0."`.
///
/// # Safety
/// `d` must be a live handle; `digits_out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn np_diagonal_alpha_digits(
    d: *mut NpDiagonal,
    count: usize,
    digits_out: *mut *mut c_char,
) -> NpStatus {
    guard(|| {
        let d = d.as_mut().ok_or_else(|| null_arg("d"))?;
        if digits_out.is_null() {
            return Err(null_arg("digits_out"));
        }
        let digits = d.inner.half_alpha_digits(count).map_err(fail)?;
        *digits_out = into_c(digits);
        Ok(())
    })
}

/// Parses domain JSON into a new handle.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn np_domain_from_json(json: *const c_char, out: *mut *mut NpDomain) -> NpStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        if out.is_null() {
            return Err(null_arg("out"));
        }
        let inner = parse_domain(text).map_err(fail)?;
        *out = Box::into_raw(Box::new(NpDomain { inner }));
        Ok(())
    })
}

/// # Safety
/// `d` must come from [`np_domain_from_json`] and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn np_domain_free(d: *mut NpDomain) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Inner Riemann volume on the `n`-grid as `"p/q"`.
///
/// # Safety
/// `d` must be a live handle; the out-pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn np_riemann_volume(
    d: *const NpDomain,
    n: u64,
    max_depth: u32,
    volume_out: *mut *mut c_char,
    unknown_count_out: *mut u64,
) -> NpStatus {
    guard(|| {
        let d = d.as_ref().ok_or_else(|| null_arg("d"))?;
        if volume_out.is_null() || unknown_count_out.is_null() {
            return Err(null_arg("volume_out/unknown_count_out"));
        }
        let sum = riemann_volume(&d.inner, n, max_depth).map_err(fail)?;
        *volume_out = into_c(fraction(&sum.volume));
        *unknown_count_out = sum.unknown_count;
        Ok(())
    })
}

/// Doubles the grid from `n0` until successive volumes differ by less than
/// `tol / 2`; `tol` is `"p/q"`.
///
/// # Safety
/// `d` must be a live handle; `tol` a NUL-terminated string; the
/// out-pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn np_approximate_volume(
    d: *const NpDomain,
    tol: *const c_char,
    n0: u64,
    max_n: u64,
    max_depth: u32,
    volume_out: *mut *mut c_char,
    n_used_out: *mut u64,
    unknown_count_out: *mut u64,
) -> NpStatus {
    guard(|| {
        let d = d.as_ref().ok_or_else(|| null_arg("d"))?;
        let tol = parse_fraction(read_str(tol, "tol")?).map_err(fail)?;
        if volume_out.is_null() || n_used_out.is_null() || unknown_count_out.is_null() {
            return Err(null_arg("volume_out/n_used_out/unknown_count_out"));
        }
        let a = approximate_volume(&d.inner, &tol, n0, max_n, max_depth).map_err(fail)?;
        *volume_out = into_c(fraction(&a.value));
        *n_used_out = a.n_used;
        *unknown_count_out = a.unknown_count;
        Ok(())
    })
}
