//! C ABI over `dpbound`.
//!
//! Polynomials and certificates cross the boundary as opaque handles. Every
//! fallible call returns a [`DpStatus`]; on failure the message is kept per
//! thread and can be fetched with [`dp_last_error_message`]. Strings handed
//! out by this library must be released with [`dp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dpbound::bounds::{self, Certificate, MeasureId, SchnorrMode};
use dpbound::circuit::Measure;
use dpbound::{generators, oracle, Error, Polynomial};

/// Outcome of a call. Values 2..=5 mirror the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DpStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Malformed input: bad JSON, invalid UTF-8, unknown names.
    Input = 2,
    /// A size, range or work cap was exceeded.
    Range = 3,
    /// A mathematical precondition of the requested bound does not hold.
    Precondition = 4,
    /// An internal invariant was violated.
    Internal = 5,
    /// A Rust panic was caught at the boundary.
    Panic = 6,
}

/// Opaque polynomial handle.
pub struct DpPolynomial(Polynomial);

/// Opaque certificate handle.
pub struct DpCertificate(Certificate);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    // interior NULs would truncate the message silently
    let msg = CString::new(msg.replace('\0', "\\0")).expect("NULs were replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> DpStatus {
    match e.exit_code() {
        2 => DpStatus::Input,
        3 => DpStatus::Range,
        4 => DpStatus::Precondition,
        _ => DpStatus::Internal,
    }
}

/// Runs `body`, records any error or panic and converts it to a status.
fn guard(body: impl FnOnce() -> Result<(), (DpStatus, String)>) -> DpStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => DpStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            DpStatus::Panic
        }
    }
}

fn lift<T>(r: dpbound::Result<T>) -> Result<T, (DpStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (DpStatus, String) {
    (DpStatus::NullArgument, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (DpStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (DpStatus::Input, format!("{what} is not valid UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (DpStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), (DpStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn to_c_string(s: String) -> Result<*mut c_char, (DpStatus, String)> {
    CString::new(s).map(CString::into_raw).map_err(|_| (DpStatus::Internal, "string contains NUL".into()))
}

fn boxed_poly(f: Polynomial) -> *mut DpPolynomial {
    Box::into_raw(Box::new(DpPolynomial(f)))
}

fn boxed_cert(c: Certificate) -> *mut DpCertificate {
    Box::into_raw(Box::new(DpCertificate(c)))
}

/// Message of the last failed call on this thread, or null if the last call
/// succeeded. The caller owns the returned string.
#[no_mangle]
pub extern "C" fn dp_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |m| m.clone().into_raw()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn dp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a polynomial from its JSON encoding.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dp_polynomial_from_json(json: *const c_char, out: *mut *mut DpPolynomial) -> DpStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let f: Polynomial = lift(serde_json::from_str(text).map_err(Error::from))?;
        write_out(out, boxed_poly(f))
    })
}

/// Canonical JSON encoding of a polynomial. Free with [`dp_string_free`].
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dp_polynomial_to_json(f: *const DpPolynomial, out: *mut *mut c_char) -> DpStatus {
    guard(|| {
        let f = deref(f, "polynomial")?;
        let s = lift(serde_json::to_string(&f.0).map_err(Error::from))?;
        write_out(out, to_c_string(s)?)
    })
}

/// Number of monomials and variables of a polynomial.
///
/// # Safety
/// `f` must be a live handle; both outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn dp_polynomial_shape(f: *const DpPolynomial, terms: *mut usize, n_vars: *mut usize) -> DpStatus {
    guard(|| {
        let f = deref(f, "polynomial")?;
        write_out(terms, f.0.len())?;
        write_out(n_vars, f.0.n_vars())
    })
}

/// Releases a polynomial handle. Null is ignored.
///
/// # Safety
/// `f` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn dp_polynomial_free(f: *mut DpPolynomial) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Named benchmark family. `family` is one of `perm`, `hc`, `triangle`,
/// `stconn`, `clique`; `k` is only read for `clique`.
///
/// # Safety
/// `family` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dp_generate(family: *const c_char, n: usize, k: usize, out: *mut *mut DpPolynomial) -> DpStatus {
    guard(|| {
        let f = match read_str(family, "family")? {
            "perm" => generators::gen_perm(n),
            "hc" => generators::gen_hc(n),
            "triangle" => generators::gen_triangle(n),
            "stconn" => generators::gen_stconn(n),
            "clique" => generators::gen_clique(n, k),
            other => return Err((DpStatus::Input, format!("unknown family {other:?}"))),
        };
        write_out(out, boxed_poly(lift(f)?))
    })
}

/// Largest separated set bound; `exact` selects exact clique search.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dp_bound_schnorr(f: *const DpPolynomial, exact: bool, out: *mut *mut DpCertificate) -> DpStatus {
    guard(|| {
        let f = deref(f, "polynomial")?;
        let mode = if exact { SchnorrMode::Exact } else { SchnorrMode::Greedy };
        write_out(out, boxed_cert(lift(bounds::max_separated(&f.0, mode))?))
    })
}

/// `(k,l)`-free bound.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dp_bound_klfree(f: *const DpPolynomial, k: u64, l: u64, out: *mut *mut DpCertificate) -> DpStatus {
    guard(|| {
        let f = deref(f, "polynomial")?;
        write_out(out, boxed_cert(lift(bounds::kl_bound(&f.0, k, l))?))
    })
}

/// Rectangle bound; `by_length` splits by variable count instead of degree.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dp_bound_rectangle(f: *const DpPolynomial, by_length: bool, out: *mut *mut DpCertificate) -> DpStatus {
    guard(|| {
        let f = deref(f, "polynomial")?;
        let m = if by_length { Measure::Length } else { Measure::Degree };
        write_out(out, boxed_cert(lift(bounds::rectangle_bound(&f.0, m))?))
    })
}

/// Depth bound from factor-density decreases.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dp_bound_depth(f: *const DpPolynomial, out: *mut *mut DpCertificate) -> DpStatus {
    guard(|| {
        let f = deref(f, "polynomial")?;
        write_out(out, boxed_cert(lift(bounds::depth_lower_bound(&f.0))?))
    })
}

/// Moves `cert` to the measure named `target` (e.g. `min-size`) for `f`.
///
/// # Safety
/// Handles must be live; `target` must be NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dp_certificate_transfer(
    cert: *const DpCertificate,
    f: *const DpPolynomial,
    target: *const c_char,
    out: *mut *mut DpCertificate,
) -> DpStatus {
    guard(|| {
        let cert = deref(cert, "certificate")?;
        let f = deref(f, "polynomial")?;
        let to: MeasureId = lift(read_str(target, "target")?.parse())?;
        write_out(out, boxed_cert(lift(bounds::transfer(&cert.0, &f.0, to))?))
    })
}

/// The bound a certificate claims.
///
/// # Safety
/// `cert` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dp_certificate_value(cert: *const DpCertificate, out: *mut u64) -> DpStatus {
    guard(|| write_out(out, deref(cert, "certificate")?.0.value))
}

/// Re-verifies the witness of `cert` against `f`. `ok` receives the verdict;
/// a rejected witness is not an error, but its reason is left in
/// [`dp_last_error_message`].
///
/// # Safety
/// Handles must be live; `ok` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dp_certificate_check(f: *const DpPolynomial, cert: *const DpCertificate, ok: *mut bool) -> DpStatus {
    guard(|| {
        let f = deref(f, "polynomial")?;
        let cert = deref(cert, "certificate")?;
        let check = lift(bounds::check_witness(&f.0, &cert.0))?;
        if !check.ok {
            set_error(check.detail);
        }
        write_out(ok, check.ok)
    })
}

/// JSON encoding of a certificate. Free with [`dp_string_free`].
///
/// # Safety
/// `cert` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dp_certificate_to_json(cert: *const DpCertificate, out: *mut *mut c_char) -> DpStatus {
    guard(|| {
        let cert = deref(cert, "certificate")?;
        let s = lift(serde_json::to_string_pretty(&cert.0).map_err(Error::from))?;
        write_out(out, to_c_string(s)?)
    })
}

/// Parses a certificate from JSON.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dp_certificate_from_json(json: *const c_char, out: *mut *mut DpCertificate) -> DpStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let c: Certificate = lift(serde_json::from_str(text).map_err(Error::from))?;
        write_out(out, boxed_cert(c))
    })
}

/// Releases a certificate handle. Null is ignored.
///
/// # Safety
/// `cert` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn dp_certificate_free(cert: *mut DpCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// Exact minimum size of a circuit producing `f`, searched up to `max_size`
/// gates. Writes -1 when no circuit of that size exists.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dp_oracle_produce_size(f: *const DpPolynomial, max_size: usize, out: *mut i64) -> DpStatus {
    guard(|| {
        let f = deref(f, "polynomial")?;
        let r = lift(oracle::min_produce_size(&f.0, max_size))?;
        write_out(out, r.size.map_or(-1, |s| s as i64))
    })
}
