//! C ABI over `eulerchi`.
//!
//! Every fallible entry point returns an `EulerchiStatus`; on anything other
//! than `EULERCHI_STATUS_OK` the message is available from
//! `eulerchi_last_error` on the calling thread. Strings handed out by the
//! library are owned by the caller and released with `eulerchi_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use eulerchi::chi_eulerian::chi_eulerian;
use eulerchi::dirichlet::{character, conductor, enumerate_characters, DirichletCharacter};
use eulerchi::eulerian::eulerian_poly;
use eulerchi::exact::rational;
use eulerchi::lfunction::l_eulerian;
use eulerchi::numeric::ExactComplex;
use eulerchi::report;
use eulerchi::suite::{exact_string, exit_code, run_suite, SuiteConfig, SuiteName};
use eulerchi::Error;

/// Result codes shared by all entry points.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EulerchiStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Malformed or out-of-range argument.
    InvalidArgument = 3,
    /// Input outside the mathematical domain (poles, non-convergent series).
    DomainError = 4,
    /// A numerical procedure did not reach the requested accuracy.
    NotConverged = 5,
    /// Unexpected internal failure.
    Internal = 6,
}

/// Opaque Dirichlet character.
pub struct EulerchiCharacter(DirichletCharacter);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|e| {
        let mut v = e.into_vec();
        v.retain(|&b| b != 0);
        CString::new(v).expect("nul bytes removed")
    });
    LAST_ERROR.with(|l| *l.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|l| *l.borrow_mut() = None);
}

fn status_of(e: &Error) -> EulerchiStatus {
    match e {
        Error::NotConverged(_) => EulerchiStatus::NotConverged,
        Error::InvalidArgument(_)
        | Error::EvenModulus(_)
        | Error::ZeroModulus
        | Error::PrecisionTooLarge { .. }
        | Error::ParityMismatch { .. } => EulerchiStatus::InvalidArgument,
        _ => EulerchiStatus::DomainError,
    }
}

/// Runs `f`, records its error and maps panics to `Internal`.
fn guard(f: impl FnOnce() -> Result<(), (EulerchiStatus, String)>) -> EulerchiStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EulerchiStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            EulerchiStatus::Internal
        }
    }
}

type FfiResult<T> = Result<T, (EulerchiStatus, String)>;

fn lib<T>(r: eulerchi::Result<T>) -> FfiResult<T> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(name: &str) -> (EulerchiStatus, String) {
    (EulerchiStatus::NullPointer, format!("{name} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, name: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (EulerchiStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

unsafe fn read_char<'a>(p: *const EulerchiCharacter) -> FfiResult<&'a DirichletCharacter> {
    p.as_ref().map(|c| &c.0).ok_or_else(|| null("character"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> FfiResult<()> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|_| (EulerchiStatus::Internal, "output contains a nul byte".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn write<T>(out: *mut T, v: T) -> FfiResult<()> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = v;
    Ok(())
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn eulerchi_last_error() -> *const c_char {
    LAST_ERROR.with(|l| l.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn eulerchi_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn eulerchi_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Number of Dirichlet characters mod `d` (odd `d`).
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eulerchi_character_count(d: u64, out: *mut usize) -> EulerchiStatus {
    guard(|| {
        let n = lib(enumerate_characters(d))?.len();
        write(out, n)
    })
}

/// Character number `index` mod `d` in the library's enumeration order.
/// Release with `eulerchi_character_free`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eulerchi_character_new(
    d: u64,
    index: usize,
    out: *mut *mut EulerchiCharacter,
) -> EulerchiStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let chi = lib(character(d, index))?;
        *out = Box::into_raw(Box::new(EulerchiCharacter(chi)));
        Ok(())
    })
}

/// # Safety
/// `chi` must come from `eulerchi_character_new` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn eulerchi_character_free(chi: *mut EulerchiCharacter) {
    if !chi.is_null() {
        drop(Box::from_raw(chi));
    }
}

/// Modulus, order and conductor of a character. Any out pointer may be null.
///
/// # Safety
/// `chi` must be a live handle; non-null out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn eulerchi_character_info(
    chi: *const EulerchiCharacter,
    modulus: *mut u64,
    order: *mut u64,
    cond: *mut u64,
) -> EulerchiStatus {
    guard(|| {
        let c = read_char(chi)?;
        if !modulus.is_null() {
            *modulus = c.modulus();
        }
        if !order.is_null() {
            *order = c.order();
        }
        if !cond.is_null() {
            *cond = conductor(c);
        }
        Ok(())
    })
}

/// Coefficients of the classical Eulerian polynomial `A_n`, comma separated.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eulerchi_classical(n: usize, out: *mut *mut c_char) -> EulerchiStatus {
    guard(|| {
        let cs: Vec<String> = eulerian_poly(n).int_coeffs().iter().map(|c| c.to_string()).collect();
        write_string(out, cs.join(","))
    })
}

/// `A_{n,chi}(-q)` as an exact string; `q` is a rational like `"2"` or `"7/2"`.
///
/// # Safety
/// `chi` must be a live handle, `q` a nul-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn eulerchi_chi_eulerian(
    n: usize,
    chi: *const EulerchiCharacter,
    q: *const c_char,
    out: *mut *mut c_char,
) -> EulerchiStatus {
    guard(|| {
        let c = read_char(chi)?;
        let q = lib(rational::parse(read_str(q, "q")?))?;
        let v = lib(chi_eulerian(n, c, &q))?;
        write_string(out, exact_string(&v))
    })
}

/// `L_E(s | chi)` at `bits` of precision. `value` receives the decimal value;
/// `error_log2` (may be null) receives the log2 of the rigorous error bound.
///
/// # Safety
/// `chi` must be a live handle, `s` and `q` nul-terminated strings, `value`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn eulerchi_l_value(
    s: *const c_char,
    chi: *const EulerchiCharacter,
    q: *const c_char,
    bits: u32,
    value: *mut *mut c_char,
    error_log2: *mut f64,
) -> EulerchiStatus {
    guard(|| {
        let c = read_char(chi)?;
        let s = lib(ExactComplex::parse(read_str(s, "s")?))?;
        let q = lib(rational::parse(read_str(q, "q")?))?;
        let v = lib(l_eulerian(&s, c, &q, bits))?;
        let digits = (bits as f64 * std::f64::consts::LOG10_2).floor() as usize;
        write_string(value, v.value.to_decimal(digits))?;
        if !error_log2.is_null() {
            *error_log2 = v.total_bound().log2();
        }
        Ok(())
    })
}

/// Runs a verification suite with default parameters. `json` selects JSON
/// over CSV. `exit` receives 0 (all pass), 1 (a failure) or 3 (inconclusive).
///
/// # Safety
/// `name` must be a nul-terminated string; `report_out` and `exit` writable.
#[no_mangle]
pub unsafe extern "C" fn eulerchi_verify_suite(
    name: *const c_char,
    json: bool,
    report_out: *mut *mut c_char,
    exit: *mut i32,
) -> EulerchiStatus {
    guard(|| {
        if exit.is_null() {
            return Err(null("exit"));
        }
        let name: SuiteName = lib(read_str(name, "name")?.parse())?;
        let reports = lib(run_suite(name, &SuiteConfig::default()))?;
        let text = lib(if json { report::to_json(&reports) } else { report::to_csv(&reports) })?;
        write_string(report_out, text)?;
        *exit = exit_code(&reports);
        Ok(())
    })
}
