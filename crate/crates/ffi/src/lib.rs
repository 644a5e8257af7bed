//! C interface to `hpoisson`.
//!
//! Objects are opaque handles freed with their `*_free` function. Strings
//! returned through `char **` out-parameters are owned by the caller and
//! released with `hp_string_free`. Every function returns an `HpStatus`; on
//! anything but `HP_STATUS_OK` and `HP_STATUS_CHECK_FAILED`, `hp_last_error_message`
//! describes the failure.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hpoisson::bivector::Bivector;
use hpoisson::constraints::{jacobi_constraints, ConstraintSystem};
use hpoisson::heisenberg::{generic_invariant_homogeneous, Check};
use hpoisson::{catalog, cli, Error, Poly};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HpStatus {
    Ok = 0,
    /// The computation succeeded and the answer is "no".
    CheckFailed = 1,
    ParseError = 2,
    InvalidArgument = 3,
    NullPointer = 4,
    Panic = 5,
}

pub struct HpBivector(Bivector);

pub struct HpConstraintSystem(ConstraintSystem);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> HpStatus {
    match e {
        Error::Syntax { .. }
        | Error::UnknownVariable { .. }
        | Error::NegativeCoordinateExponent { .. }
        | Error::Input(_) => HpStatus::ParseError,
        _ => HpStatus::InvalidArgument,
    }
}

struct Failure(HpStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

type Outcome = Result<HpStatus, Failure>;

fn guard(f: impl FnOnce() -> Outcome) -> HpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            HpStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(HpStatus::NullPointer, format!("`{what}` is null"))
}

/// # Safety
/// `s` is null or a valid nul-terminated string.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(HpStatus::ParseError, format!("`{what}` is not UTF-8")))
}

/// # Safety
/// `p` is null or points to a live `T`.
unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

/// # Safety
/// `out` is null or writable.
unsafe fn put<T>(out: *mut *mut T, value: T) -> Outcome {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(HpStatus::Ok)
}

/// # Safety
/// `out` is null or writable.
unsafe fn put_string(out: *mut *mut c_char, s: String) -> Outcome {
    if out.is_null() {
        return Err(null("out"));
    }
    let s = CString::new(s).map_err(|e| Failure(HpStatus::InvalidArgument, e.to_string()))?;
    *out = s.into_raw();
    Ok(HpStatus::Ok)
}

/// Message for the last failing call on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a bivector from its JSON form.
///
/// # Safety
/// `json` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn hp_bivector_from_json(
    json: *const c_char,
    out: *mut *mut HpBivector,
) -> HpStatus {
    guard(|| {
        let b = Bivector::from_json(read_str(json, "json")?)?;
        put(out, HpBivector(b))
    })
}

/// Named catalog structure. `params` is null or a comma-separated list of
/// `NAME=VALUE` pairs with rational values; unassigned parameters stay
/// symbolic.
///
/// # Safety
/// `name` is a nul-terminated string, `params` is null or one; `out` is
/// writable.
#[no_mangle]
pub unsafe extern "C" fn hp_bivector_catalog(
    name: *const c_char,
    params: *const c_char,
    out: *mut *mut HpBivector,
) -> HpStatus {
    guard(|| {
        let name = read_str(name, "name")?;
        let pairs: Vec<String> = if params.is_null() {
            Vec::new()
        } else {
            read_str(params, "params")?
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(String::from)
                .collect()
        };
        let values = cli::parse_params(&pairs)?;
        put(out, HpBivector(catalog::lookup(name, &values)?))
    })
}

/// # Safety
/// `b` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn hp_bivector_to_json(
    b: *const HpBivector,
    out: *mut *mut c_char,
) -> HpStatus {
    guard(|| put_string(out, borrow(b, "b")?.0.to_json()))
}

/// Runs one check (`jacobi`, `sigma`, `tau` or `unimodular`). Returns
/// `HP_STATUS_OK` on pass and `HP_STATUS_CHECK_FAILED` on failure; in the latter case the
/// report with its witness is written to `report` when it is not null.
///
/// # Safety
/// `b` is a live handle, `check` a nul-terminated string, `report` null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn hp_bivector_verify(
    b: *const HpBivector,
    check: *const c_char,
    report: *mut *mut c_char,
) -> HpStatus {
    guard(|| {
        let b = borrow(b, "b")?;
        let check: Check = read_str(check, "check")?.parse()?;
        let r = check.run(&b.0);
        if r.passed() {
            return Ok(HpStatus::Ok);
        }
        if !report.is_null() {
            put_string(report, r.to_string())?;
        }
        Ok(HpStatus::CheckFailed)
    })
}

/// `{f, g}` for polynomials over the bivector's variables.
///
/// # Safety
/// `b` is a live handle, `f` and `g` nul-terminated strings, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hp_bivector_bracket(
    b: *const HpBivector,
    f: *const c_char,
    g: *const c_char,
    out: *mut *mut c_char,
) -> HpStatus {
    guard(|| {
        let b = &borrow(b, "b")?.0;
        let f = Poly::parse(read_str(f, "f")?, b.vs())?;
        let g = Poly::parse(read_str(g, "g")?, b.vs())?;
        put_string(out, b.bracket(&f, &g)?.to_string())
    })
}

/// # Safety
/// `b` is null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hp_bivector_free(b: *mut HpBivector) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Jacobi constraints of the generic invariant tensor of the given size
/// and coordinate degree.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn hp_constraints_generate(
    n: usize,
    degree: usize,
    out: *mut *mut HpConstraintSystem,
) -> HpStatus {
    guard(|| {
        let g = generic_invariant_homogeneous(n, degree)?;
        put(out, HpConstraintSystem(jacobi_constraints(&g)?))
    })
}

/// # Safety
/// `json` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn hp_constraints_from_json(
    json: *const c_char,
    out: *mut *mut HpConstraintSystem,
) -> HpStatus {
    guard(|| {
        let s = ConstraintSystem::from_json(read_str(json, "json")?)?;
        put(out, HpConstraintSystem(s))
    })
}

/// # Safety
/// `s` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn hp_constraints_to_json(
    s: *const HpConstraintSystem,
    out: *mut *mut c_char,
) -> HpStatus {
    guard(|| put_string(out, borrow(s, "s")?.0.to_json()))
}

/// `HP_STATUS_OK` when both systems span the same space, `HP_STATUS_CHECK_FAILED`
/// otherwise.
///
/// # Safety
/// `a` and `b` are live handles.
#[no_mangle]
pub unsafe extern "C" fn hp_constraints_equiv(
    a: *const HpConstraintSystem,
    b: *const HpConstraintSystem,
) -> HpStatus {
    guard(|| {
        let (a, b) = (borrow(a, "a")?, borrow(b, "b")?);
        Ok(if a.0.span_equivalent(&b.0)? {
            HpStatus::Ok
        } else {
            HpStatus::CheckFailed
        })
    })
}

/// # Safety
/// `s` is null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hp_constraints_free(s: *mut HpConstraintSystem) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}
