use std::ffi::{c_char, CStr, CString};
use std::process::Command;
use std::ptr;

use hpoisson_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    hp_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(hp_last_error_message())
        .to_str()
        .unwrap()
        .to_owned()
}

unsafe fn catalog(name: &str, params: Option<&str>) -> *mut HpBivector {
    let params = params.map(c);
    let mut b = ptr::null_mut();
    let status = hp_bivector_catalog(
        c(name).as_ptr(),
        params.as_ref().map_or(ptr::null(), |p| p.as_ptr()),
        &mut b,
    );
    assert_eq!(status, HpStatus::Ok);
    b
}

#[test]
fn catalog_bracket_and_checks() {
    unsafe {
        let b = catalog("q4", Some("k=2"));
        let mut out = ptr::null_mut();
        let status = hp_bivector_bracket(b, c("x0").as_ptr(), c("x1").as_ptr(), &mut out);
        assert_eq!(status, HpStatus::Ok);
        assert_eq!(take(out), "4*x0*x1 - x2*x3");
        for check in ["jacobi", "sigma", "tau", "unimodular"] {
            let status = hp_bivector_verify(b, c(check).as_ptr(), ptr::null_mut());
            assert_eq!(status, HpStatus::Ok, "{check}");
        }
        hp_bivector_free(b);
    }
}

#[test]
fn json_round_trip_and_failed_check() {
    unsafe {
        let json = c(r#"{"n": 2, "params": [], "entries": [{"i": 0, "j": 1, "poly": "x0^2"}]}"#);
        let mut b = ptr::null_mut();
        assert_eq!(hp_bivector_from_json(json.as_ptr(), &mut b), HpStatus::Ok);
        let mut report = ptr::null_mut();
        let status = hp_bivector_verify(b, c("unimodular").as_ptr(), &mut report);
        assert_eq!(status, HpStatus::CheckFailed);
        assert_eq!(take(report), "unimodular: FAIL at [1]: -4*x0");

        let mut text = ptr::null_mut();
        assert_eq!(hp_bivector_to_json(b, &mut text), HpStatus::Ok);
        let text = c(&take(text));
        let mut again = ptr::null_mut();
        assert_eq!(
            hp_bivector_from_json(text.as_ptr(), &mut again),
            HpStatus::Ok
        );
        hp_bivector_free(again);
        hp_bivector_free(b);
    }
}

#[test]
fn constraint_systems() {
    unsafe {
        let mut generated = ptr::null_mut();
        assert_eq!(hp_constraints_generate(4, 2, &mut generated), HpStatus::Ok);
        let mut printed = ptr::null_mut();
        let json = c(r#"{"params": ["A1", "A2", "B"], "polys": ["A1*A2 + B^2"]}"#);
        assert_eq!(
            hp_constraints_from_json(json.as_ptr(), &mut printed),
            HpStatus::Ok
        );
        assert_eq!(hp_constraints_equiv(generated, printed), HpStatus::Ok);

        let mut other = ptr::null_mut();
        let json = c(r#"{"params": ["A1", "A2", "B"], "polys": ["A1*A2"]}"#);
        assert_eq!(
            hp_constraints_from_json(json.as_ptr(), &mut other),
            HpStatus::Ok
        );
        assert_eq!(
            hp_constraints_equiv(generated, other),
            HpStatus::CheckFailed
        );

        let mut text = ptr::null_mut();
        assert_eq!(hp_constraints_to_json(generated, &mut text), HpStatus::Ok);
        assert!(take(text).contains("\"polys\""));
        for s in [generated, printed, other] {
            hp_constraints_free(s);
        }
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut b = ptr::null_mut();
        let status = hp_bivector_catalog(c("q9").as_ptr(), ptr::null(), &mut b);
        assert_eq!(status, HpStatus::InvalidArgument);
        assert!(last_error().contains("q9"));

        let status = hp_bivector_from_json(c("{").as_ptr(), &mut b);
        assert_eq!(status, HpStatus::ParseError);

        let q4 = catalog("q4", None);
        let mut out = ptr::null_mut();
        let status = hp_bivector_bracket(q4, c("x0^-1").as_ptr(), c("x1").as_ptr(), &mut out);
        assert_eq!(status, HpStatus::ParseError);
        assert!(last_error().contains("negative exponent"));
        let status = hp_bivector_verify(q4, c("bogus").as_ptr(), ptr::null_mut());
        assert_eq!(status, HpStatus::InvalidArgument);
        hp_bivector_free(q4);

        assert_eq!(
            hp_bivector_to_json(ptr::null(), &mut out),
            HpStatus::NullPointer
        );
        assert_eq!(
            hp_constraints_generate(2, 2, ptr::null_mut()),
            HpStatus::InvalidArgument
        );
        assert_eq!(
            hp_constraints_generate(5, 2, ptr::null_mut()),
            HpStatus::NullPointer
        );
        hp_bivector_free(ptr::null_mut());
        hp_string_free(ptr::null_mut());
    }
}

#[test]
fn header_compiles_as_c() {
    let Some(cc) = ["cc", "gcc", "clang"]
        .into_iter()
        .find(|cc| Command::new(cc).arg("--version").output().is_ok())
    else {
        return;
    };
    let dir = tempfile::TempDir::new().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        "#include \"hpoisson.h\"\n\
         int main(void) {\n\
           HpBivector *b = 0;\n\
           HpStatus s = hp_bivector_catalog(\"q3\", \"A1=1\", &b);\n\
           hp_bivector_free(b);\n\
           return s == HP_STATUS_OK ? 0 : 1;\n\
         }\n",
    )
    .unwrap();
    let include = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    let status = Command::new(cc)
        .args(["-fsyntax-only", "-Wall", "-Werror", "-I", include])
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success());
}
