use nogo_ffi::*;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

fn take_string(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { nogo_string_free(s) };
    text
}

fn last_error() -> String {
    take_string(nogo_last_error())
}

fn builtin(name: &str) -> *mut NogoAlgebra {
    let name = CString::new(name).unwrap();
    let mut alg = ptr::null_mut();
    assert_eq!(
        unsafe { nogo_algebra_builtin(name.as_ptr(), &mut alg) },
        NogoStatus::Ok
    );
    alg
}

#[test]
fn su2_certificate_round_trip() {
    let alg = builtin("su2");
    assert_eq!(unsafe { nogo_algebra_dim(alg) }, 3);
    let mut ok = false;
    assert_eq!(
        unsafe { nogo_algebra_is_compact_semisimple(alg, &mut ok) },
        NogoStatus::Ok
    );
    assert!(ok);

    let r = CString::new("1").unwrap();
    let mut cert = ptr::null_mut();
    assert_eq!(
        unsafe { nogo_certify(alg, r.as_ptr(), 2, 100, &mut cert) },
        NogoStatus::Ok
    );
    assert!(nogo_last_error().is_null());
    assert_eq!(
        take_string(unsafe { nogo_certificate_kind(cert) }),
        "TrivialityConclusion"
    );
    assert_eq!(unsafe { nogo_certificate_verify(cert) }, NogoStatus::Ok);

    let json = CString::new(take_string(unsafe { nogo_certificate_to_json(cert) })).unwrap();
    let mut again = ptr::null_mut();
    assert_eq!(
        unsafe { nogo_certificate_from_json(json.as_ptr(), &mut again) },
        NogoStatus::Ok
    );
    assert_eq!(unsafe { nogo_certificate_verify(again) }, NogoStatus::Ok);

    unsafe {
        nogo_certificate_free(again);
        nogo_certificate_free(cert);
        nogo_algebra_free(alg);
    }
}

#[test]
fn missing_ideal_fails_the_derived_ideal_step() {
    let alg = builtin("su2");
    let mut cert = ptr::null_mut();
    let status = unsafe { nogo_certify(alg, ptr::null(), 2, 100, &mut cert) };
    assert_eq!(status, NogoStatus::CheckFailed);
    assert!(cert.is_null());
    let msg = last_error();
    assert!(msg.contains("derived ideal"), "{msg}");
    assert!(
        msg.contains("kernel contains nonconstant invariants"),
        "{msg}"
    );
    unsafe { nogo_algebra_free(alg) };
}

#[test]
fn abelian_algebra_is_not_compact_semisimple() {
    let alg = builtin("abelian2");
    let mut ok = true;
    assert_eq!(
        unsafe { nogo_algebra_is_compact_semisimple(alg, &mut ok) },
        NogoStatus::Ok
    );
    assert!(!ok);
    unsafe { nogo_algebra_free(alg) };
}

#[test]
fn json_algebra_errors_are_classified() {
    let mut alg = ptr::null_mut();
    let bad = CString::new("{not json").unwrap();
    assert_eq!(
        unsafe { nogo_algebra_from_json(bad.as_ptr(), &mut alg) },
        NogoStatus::InvalidInput
    );
    assert!(alg.is_null());

    // [e1,e2] = e2 and [e1,e3] = e1 break the Jacobi identity.
    let broken = CString::new(
        r#"{"dim":3,"brackets":[{"i":1,"j":2,"coeffs":[{"k":2,"v":"1"}]},{"i":2,"j":3,"coeffs":[{"k":1,"v":"1"}]}]}"#,
    )
    .unwrap();
    assert_eq!(
        unsafe { nogo_algebra_from_json(broken.as_ptr(), &mut alg) },
        NogoStatus::CheckFailed
    );
    assert!(last_error().contains("Jacobi"));

    let su2 = CString::new(
        r#"{"dim":3,"brackets":[{"i":1,"j":2,"coeffs":[{"k":3,"v":"1"}]},{"i":2,"j":3,"coeffs":[{"k":1,"v":"1"}]},{"i":1,"j":3,"coeffs":[{"k":2,"v":"-1"}]}]}"#,
    )
    .unwrap();
    assert_eq!(
        unsafe { nogo_algebra_from_json(su2.as_ptr(), &mut alg) },
        NogoStatus::Ok
    );
    assert_eq!(unsafe { nogo_algebra_dim(alg) }, 3);
    unsafe { nogo_algebra_free(alg) };
}

#[test]
fn probe_returns_a_checked_certificate() {
    let j = CString::new("1/2").unwrap();
    let mut cert = ptr::null_mut();
    assert_eq!(
        unsafe { nogo_probe(j.as_ptr(), 2, &mut cert) },
        NogoStatus::Ok
    );
    assert_eq!(
        take_string(unsafe { nogo_certificate_kind(cert) }),
        "FeasibilityVerdict"
    );
    assert!(take_string(unsafe { nogo_certificate_to_json(cert) }).contains("ResidualObstruction"));
    unsafe { nogo_certificate_free(cert) };

    let neg = CString::new("-1/2").unwrap();
    let mut none = ptr::null_mut();
    assert_eq!(
        unsafe { nogo_probe(neg.as_ptr(), 2, &mut none) },
        NogoStatus::InvalidInput
    );
    assert!(none.is_null());
}

#[test]
fn certificate_loading_errors() {
    let mut cert = ptr::null_mut();
    let wrong_version =
        CString::new(r#"{"schema":"nogo-certificate","schema_version":9}"#).unwrap();
    assert_eq!(
        unsafe { nogo_certificate_from_json(wrong_version.as_ptr(), &mut cert) },
        NogoStatus::InvalidInput
    );
    let wrong_shape = CString::new(
        r#"{"schema":"nogo-certificate","schema_version":1,"kind":"GramPositivity","payload":{}}"#,
    )
    .unwrap();
    assert_eq!(
        unsafe { nogo_certificate_from_json(wrong_shape.as_ptr(), &mut cert) },
        NogoStatus::CheckFailed
    );
    assert!(cert.is_null());
}

#[test]
fn null_pointers_are_reported() {
    let mut alg = ptr::null_mut();
    assert_eq!(
        unsafe { nogo_algebra_builtin(ptr::null(), &mut alg) },
        NogoStatus::NullPointer
    );
    assert_eq!(
        unsafe { nogo_certificate_verify(ptr::null()) },
        NogoStatus::NullPointer
    );
    assert_eq!(unsafe { nogo_algebra_dim(ptr::null()) }, 0);
    assert!(unsafe { nogo_certificate_kind(ptr::null()) }.is_null());
    unsafe {
        nogo_algebra_free(ptr::null_mut());
        nogo_certificate_free(ptr::null_mut());
        nogo_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_interface() {
    let header = include_str!("../include/nogo.h");
    for name in [
        "NOGO_STATUS_CHECK_FAILED",
        "typedef struct NogoAlgebra NogoAlgebra",
        "typedef struct NogoCertificate NogoCertificate",
        "nogo_last_error",
        "nogo_string_free",
        "nogo_algebra_builtin",
        "nogo_algebra_from_json",
        "nogo_algebra_is_compact_semisimple",
        "nogo_certify",
        "nogo_probe",
        "nogo_certificate_from_json",
        "nogo_certificate_verify",
        "nogo_certificate_to_json",
        "nogo_certificate_free",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}
