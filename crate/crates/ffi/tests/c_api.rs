use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use eulerchi_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let v = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { eulerchi_string_free(s) };
    v
}

fn last_error() -> String {
    let p = eulerchi_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn quadratic_mod3() -> *mut EulerchiCharacter {
    let mut chi = ptr::null_mut();
    assert_eq!(unsafe { eulerchi_character_new(3, 1, &mut chi) }, EulerchiStatus::Ok);
    chi
}

#[test]
fn classical_coefficients() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { eulerchi_classical(4, &mut out) }, EulerchiStatus::Ok);
    assert_eq!(take(out), "1,11,11,1");
    assert!(eulerchi_last_error().is_null());
}

#[test]
fn character_handle() {
    let mut count = 0usize;
    assert_eq!(unsafe { eulerchi_character_count(15, &mut count) }, EulerchiStatus::Ok);
    assert_eq!(count, 8);
    let chi = quadratic_mod3();
    let (mut m, mut o, mut c) = (0u64, 0u64, 0u64);
    assert_eq!(unsafe { eulerchi_character_info(chi, &mut m, &mut o, &mut c) }, EulerchiStatus::Ok);
    assert_eq!((m, o, c), (3, 2, 3));
    assert_eq!(
        unsafe { eulerchi_character_info(chi, ptr::null_mut(), ptr::null_mut(), ptr::null_mut()) },
        EulerchiStatus::Ok
    );
    unsafe { eulerchi_character_free(chi) };
    unsafe { eulerchi_character_free(ptr::null_mut()) };
}

#[test]
fn chi_eulerian_values() {
    let chi = quadratic_mod3();
    let q = CString::new("2").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { eulerchi_chi_eulerian(0, chi, q.as_ptr(), &mut out) }, EulerchiStatus::Ok);
    assert_eq!(take(out), "-4/1");
    assert_eq!(unsafe { eulerchi_chi_eulerian(1, chi, q.as_ptr(), &mut out) }, EulerchiStatus::Ok);
    assert_eq!(take(out), "12/1");
    unsafe { eulerchi_character_free(chi) };
}

#[test]
fn l_value_with_bound() {
    let chi = quadratic_mod3();
    let (s, q) = (CString::new("-1").unwrap(), CString::new("2").unwrap());
    let mut out = ptr::null_mut();
    let mut err = 0.0f64;
    let st = unsafe { eulerchi_l_value(s.as_ptr(), chi, q.as_ptr(), 128, &mut out, &mut err) };
    assert_eq!(st, EulerchiStatus::Ok);
    assert_eq!(take(out), "-12");
    assert!(err < -100.0);
    unsafe { eulerchi_character_free(chi) };
}

#[test]
fn error_codes() {
    let mut chi = ptr::null_mut();
    assert_eq!(unsafe { eulerchi_character_new(4, 0, &mut chi) }, EulerchiStatus::InvalidArgument);
    assert!(last_error().contains("even"));
    assert!(chi.is_null());
    assert_eq!(unsafe { eulerchi_character_new(3, 7, &mut chi) }, EulerchiStatus::InvalidArgument);

    let chi = quadratic_mod3();
    let (s, q1, bad) = (CString::new("0").unwrap(), CString::new("1").unwrap(), CString::new("x/").unwrap());
    let mut out = ptr::null_mut();
    let st = unsafe { eulerchi_l_value(s.as_ptr(), chi, q1.as_ptr(), 128, &mut out, ptr::null_mut()) };
    assert_eq!(st, EulerchiStatus::DomainError);
    assert!(out.is_null());
    let st = unsafe { eulerchi_chi_eulerian(0, chi, bad.as_ptr(), &mut out) };
    assert_eq!(st, EulerchiStatus::InvalidArgument);
    let st = unsafe { eulerchi_chi_eulerian(0, ptr::null(), q1.as_ptr(), &mut out) };
    assert_eq!(st, EulerchiStatus::NullPointer);
    assert_eq!(unsafe { eulerchi_classical(3, ptr::null_mut()) }, EulerchiStatus::NullPointer);
    let invalid = [0xffu8, 0];
    let st = unsafe { eulerchi_chi_eulerian(0, chi, invalid.as_ptr().cast(), &mut out) };
    assert_eq!(st, EulerchiStatus::InvalidUtf8);
    unsafe { eulerchi_character_free(chi) };

    // a later success clears the message
    assert_eq!(unsafe { eulerchi_classical(1, &mut out) }, EulerchiStatus::Ok);
    take(out);
    assert!(eulerchi_last_error().is_null());
}

#[test]
fn errors_are_per_thread() {
    let mut chi = ptr::null_mut();
    assert_ne!(unsafe { eulerchi_character_new(2, 0, &mut chi) }, EulerchiStatus::Ok);
    std::thread::spawn(|| assert!(eulerchi_last_error().is_null())).join().unwrap();
    assert!(!eulerchi_last_error().is_null());
}

#[test]
fn verify_suite_reports() {
    let name = CString::new("interpolation").unwrap();
    let (mut out, mut exit) = (ptr::null_mut(), -1);
    let st = unsafe { eulerchi_verify_suite(name.as_ptr(), true, &mut out, &mut exit) };
    assert_eq!(st, EulerchiStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert!(!v.as_array().unwrap().is_empty());
    // d = 1, n = 0 is off by the constant term, so the default grid fails
    assert_eq!(exit, 1);

    let name = CString::new("witt").unwrap();
    let st = unsafe { eulerchi_verify_suite(name.as_ptr(), false, &mut out, &mut exit) };
    assert_eq!(st, EulerchiStatus::Ok);
    assert!(take(out).starts_with("identity,"));
    assert_eq!(exit, 0);

    let bogus = CString::new("nope").unwrap();
    let st = unsafe { eulerchi_verify_suite(bogus.as_ptr(), false, &mut out, &mut exit) };
    assert_eq!(st, EulerchiStatus::InvalidArgument);
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(eulerchi_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_is_valid_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/eulerchi.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for sym in ["eulerchi_last_error", "eulerchi_string_free", "eulerchi_l_value", "EULERCHI_STATUS_NOT_CONVERGED"] {
        assert!(text.contains(sym), "{sym} missing from header");
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        "#include \"eulerchi.h\"\nint main(void) { EulerchiCharacter *c = 0; return eulerchi_character_new(3, 1, &c) == EULERCHI_STATUS_OK; }\n",
    )
    .unwrap();
    let status = match Command::new("cc")
        .arg("-fsyntax-only")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(header.parent().unwrap())
        .arg(&src)
        .status()
    {
        Ok(s) => s,
        Err(_) => {
            eprintln!("no C compiler; header syntax not checked");
            return;
        }
    };
    assert!(status.success());
}
