//! C interface to `nogo-core`.
//!
//! Algebras and certificates are passed around as opaque heap handles that
//! the caller releases with the matching `*_free` function. Every fallible
//! call returns a [`NogoStatus`]; on failure the message is kept per thread
//! and can be fetched with [`nogo_last_error`]. Strings returned by the
//! library are owned by the caller and released with [`nogo_string_free`].

use nogo_core::certificate::{verify, Certificate, LoadError, Payload};
use nogo_core::liealg::{AlgebraJson, Builtin, LieAlgebra};
use nogo_core::nogo::{feasibility_probe, nogo_report};
use nogo_core::poisson::OrbitIdeal;
use nogo_core::rational::parse_rational;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Result codes. The numeric values match the `nogo` exit codes where they
/// overlap.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NogoStatus {
    Ok = 0,
    /// A check ran and failed.
    CheckFailed = 1,
    /// Unparsable or unsupported input.
    InvalidInput = 2,
    NullPointer = 3,
    /// A Rust panic was caught at the boundary.
    Internal = 4,
}

/// A validated Lie algebra.
pub struct NogoAlgebra {
    inner: LieAlgebra,
}

/// A certificate of any kind.
pub struct NogoCertificate {
    inner: Certificate,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

struct Failure(NogoStatus, String);

impl Failure {
    fn input(msg: impl ToString) -> Self {
        Failure(NogoStatus::InvalidInput, msg.to_string())
    }

    fn check(msg: impl ToString) -> Self {
        Failure(NogoStatus::CheckFailed, msg.to_string())
    }
}

/// Runs `f`, records its error message and turns panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> NogoStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NogoStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error: panic inside nogo");
            NogoStatus::Internal
        }
    }
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure(NogoStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure::input(format!("{what} is not valid UTF-8")))
}

fn check_out<T>(out: *mut *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure(
            NogoStatus::NullPointer,
            "output pointer is null".into(),
        ))
    } else {
        Ok(())
    }
}

/// # Safety
/// `out` must be non-null and writable.
unsafe fn store<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

/// # Safety
/// `p` must be null or a live handle from this library.
unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(NogoStatus::NullPointer, format!("{what} is null")))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Copy of the last error message on this thread, or null if the last call
/// succeeded. Release with [`nogo_string_free`].
#[no_mangle]
pub extern "C" fn nogo_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map_or(ptr::null_mut(), |s| s.clone().into_raw())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nogo_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a named algebra such as `"su2"`, `"so4"` or `"su3"`.
///
/// # Safety
/// `name` must be a valid NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nogo_algebra_builtin(
    name: *const c_char,
    out: *mut *mut NogoAlgebra,
) -> NogoStatus {
    guard(|| {
        check_out(out)?;
        let b: Builtin = read_str(name, "name")?.parse().map_err(Failure::input)?;
        let inner = b.build().map_err(Failure::input)?;
        store(out, NogoAlgebra { inner });
        Ok(())
    })
}

/// Parses a JSON algebra description. Structure constants that violate
/// antisymmetry or the Jacobi identity give `CheckFailed`.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nogo_algebra_from_json(
    json: *const c_char,
    out: *mut *mut NogoAlgebra,
) -> NogoStatus {
    guard(|| {
        check_out(out)?;
        let sc = AlgebraJson::parse(read_str(json, "json")?)
            .and_then(|a| a.to_constants())
            .map_err(Failure::input)?;
        let inner = LieAlgebra::new(sc).map_err(Failure::check)?;
        store(out, NogoAlgebra { inner });
        Ok(())
    })
}

/// Dimension of the algebra, or 0 for a null handle.
///
/// # Safety
/// `alg` must be null or a live algebra handle.
#[no_mangle]
pub unsafe extern "C" fn nogo_algebra_dim(alg: *const NogoAlgebra) -> usize {
    alg.as_ref().map_or(0, |a| a.inner.dim())
}

/// Writes whether the algebra is semisimple of compact type with zero
/// center.
///
/// # Safety
/// `alg` must be a live algebra handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nogo_algebra_is_compact_semisimple(
    alg: *const NogoAlgebra,
    out: *mut bool,
) -> NogoStatus {
    guard(|| {
        let a = &borrow(alg, "algebra")?.inner;
        let o = out
            .as_mut()
            .ok_or_else(|| Failure(NogoStatus::NullPointer, "output pointer is null".into()))?;
        *o = a.is_semisimple() && a.is_compact_type() && a.center().is_zero();
        Ok(())
    })
}

/// # Safety
/// `alg` must be null or a live algebra handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn nogo_algebra_free(alg: *mut NogoAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Runs the no-go chain at degree cap `k` and returns the triviality
/// certificate. `sphere_radius` is a rational literal such as `"1"` or
/// `"3/2"`, or null for no orbit ideal. A failing step gives `CheckFailed`
/// with the step named in the error message.
///
/// # Safety
/// `alg` must be a live algebra handle, `sphere_radius` null or a valid
/// string, and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nogo_certify(
    alg: *const NogoAlgebra,
    sphere_radius: *const c_char,
    k: u32,
    max_dim: usize,
    out: *mut *mut NogoCertificate,
) -> NogoStatus {
    guard(|| {
        check_out(out)?;
        let a = &borrow(alg, "algebra")?.inner;
        let ideal = if sphere_radius.is_null() {
            None
        } else {
            let r = parse_rational(read_str(sphere_radius, "sphere radius")?)
                .map_err(Failure::input)?;
            Some(OrbitIdeal::block_spheres(a.dim(), &r).map_err(Failure::input)?)
        };
        let inner =
            nogo_report(a.constants(), ideal.as_ref(), k, max_dim).map_err(Failure::check)?;
        store(out, NogoCertificate { inner });
        Ok(())
    })
}

/// Runs the feasibility probe for spin `j` (a literal such as `"1/2"`)
/// with domain degree `k`. The certificate has been re-checked before it
/// is returned.
///
/// # Safety
/// `j` must be a valid NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nogo_probe(
    j: *const c_char,
    k: u32,
    out: *mut *mut NogoCertificate,
) -> NogoStatus {
    guard(|| {
        check_out(out)?;
        let j = parse_rational(read_str(j, "j")?).map_err(Failure::input)?;
        let payload = feasibility_probe(&j, k).map_err(Failure::input)?;
        let inner = verify(&Certificate::new(Payload::FeasibilityVerdict(payload)))
            .map_err(Failure::check)?;
        store(out, NogoCertificate { inner });
        Ok(())
    })
}

/// Loads a certificate without checking it. Malformed JSON and unknown
/// schema versions give `InvalidInput`; payloads of the wrong shape give
/// `CheckFailed`.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nogo_certificate_from_json(
    json: *const c_char,
    out: *mut *mut NogoCertificate,
) -> NogoStatus {
    guard(|| {
        check_out(out)?;
        let inner = Certificate::from_json(read_str(json, "json")?).map_err(|e| match e {
            LoadError::Shape(_) => Failure::check(e),
            LoadError::Syntax(_) | LoadError::Schema { .. } => Failure::input(e),
        })?;
        store(out, NogoCertificate { inner });
        Ok(())
    })
}

/// Independent re-check. `Ok` means the certificate is valid.
///
/// # Safety
/// `cert` must be a live certificate handle.
#[no_mangle]
pub unsafe extern "C" fn nogo_certificate_verify(cert: *const NogoCertificate) -> NogoStatus {
    guard(|| {
        let c = &borrow(cert, "certificate")?.inner;
        verify(c).map(|_| ()).map_err(Failure::check)
    })
}

/// Certificate kind such as `"DerivedIdeal"`, or null for a null handle.
/// Release with [`nogo_string_free`].
///
/// # Safety
/// `cert` must be null or a live certificate handle.
#[no_mangle]
pub unsafe extern "C" fn nogo_certificate_kind(cert: *const NogoCertificate) -> *mut c_char {
    cert.as_ref()
        .map_or(ptr::null_mut(), |c| to_c_string(c.inner.kind().to_string()))
}

/// Pretty-printed JSON, or null for a null handle. Release with
/// [`nogo_string_free`].
///
/// # Safety
/// `cert` must be null or a live certificate handle.
#[no_mangle]
pub unsafe extern "C" fn nogo_certificate_to_json(cert: *const NogoCertificate) -> *mut c_char {
    cert.as_ref()
        .map_or(ptr::null_mut(), |c| to_c_string(c.inner.to_json()))
}

/// # Safety
/// `cert` must be null or a live certificate handle; it is invalid
/// afterwards.
#[no_mangle]
pub unsafe extern "C" fn nogo_certificate_free(cert: *mut NogoCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}
