//! C ABI over the `eigenwalk` library.
//!
//! Conventions:
//! - every fallible function returns an [`EwStatus`] and writes results through
//!   out-pointers, which are left untouched on failure;
//! - rationals cross the boundary as strings such as `"-24"` or `"7/8"`;
//! - strings returned by the library are owned by the caller and released with
//!   [`ew_string_free`];
//! - certificates are opaque handles released with [`ew_certificate_free`];
//! - [`ew_last_error_message`] describes the last failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use eigenwalk::error::ExitClass;
use eigenwalk::pingpong::{self, PingPongCertificate};
use eigenwalk::rational::{self, Q};
use eigenwalk::spaces::{self, RatioOrder};
use eigenwalk::weightspace::{self, WeightCharacter};
use eigenwalk::Error;

/// Status codes. 2, 3 and 4 agree with the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EwStatus {
    Ok = 0,
    NullPointer = 1,
    Precondition = 2,
    VerificationFailed = 3,
    Internal = 4,
    InvalidUtf8 = 5,
}

/// Opaque annulus-walk certificate.
pub struct EwCertificate(PingPongCertificate);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("nul bytes removed"));
}

fn fail(e: Error) -> EwStatus {
    set_error(e.to_string());
    match e.exit_class() {
        ExitClass::Precondition => EwStatus::Precondition,
        ExitClass::Verification => EwStatus::VerificationFailed,
        ExitClass::Internal => EwStatus::Internal,
    }
}

/// Runs `f`, converting panics to `Internal` and clearing the error slot on success.
fn guard(f: impl FnOnce() -> Result<(), EwStatus>) -> EwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            EwStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            EwStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, EwStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(EwStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        EwStatus::InvalidUtf8
    })
}

unsafe fn read_q(s: *const c_char) -> Result<Q, EwStatus> {
    rational::parse(read_str(s)?).map_err(fail)
}

fn check_out<T>(p: *mut T) -> Result<(), EwStatus> {
    if p.is_null() {
        set_error("null output pointer");
        Err(EwStatus::NullPointer)
    } else {
        Ok(())
    }
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

/// Message for the last failure on this thread; empty after a success.
/// Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn ew_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ew_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `v(w)` for `z -> z^k chi^m` as `num/den`.
///
/// # Safety
/// `num` and `den` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ew_w_valuation(k: u32, m: u32, num: *mut i64, den: *mut i64) -> EwStatus {
    guard(|| {
        check_out(num)?;
        check_out(den)?;
        let v = WeightCharacter::new(k, m)
            .and_then(weightspace::w_valuation)
            .map_err(fail)?;
        let n = i64::try_from(v.numer()).map_err(|_| fail(Error::Precondition("valuation overflows i64".into())))?;
        let d = i64::try_from(v.denom()).map_err(|_| fail(Error::Precondition("valuation overflows i64".into())))?;
        *num = n;
        *den = d;
        Ok(())
    })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ew_in_boundary(k: u32, m: u32, out: *mut bool) -> EwStatus {
    guard(|| {
        check_out(out)?;
        *out = WeightCharacter::new(k, m)
            .and_then(weightspace::in_boundary)
            .map_err(fail)?;
        Ok(())
    })
}

/// Order of `alpha/beta` for `X^2 - a X + p^(k-1)`; 0 means infinite.
///
/// # Safety
/// `a` must be a NUL-terminated string and `order` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ew_ratio_order(a: *const c_char, k: u32, p: u64, order: *mut u32) -> EwStatus {
    guard(|| {
        check_out(order)?;
        let a = read_q(a)?;
        *order = match spaces::ratio_order(&a, k, p).map_err(fail)? {
            RatioOrder::Finite(d) => d,
            RatioOrder::Infinite => 0,
        };
        Ok(())
    })
}

/// # Safety
/// `a` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ew_is_n_regular(a: *const c_char, k: u32, p: u64, n: u32, out: *mut bool) -> EwStatus {
    guard(|| {
        check_out(out)?;
        let a = read_q(a)?;
        *out = spaces::is_n_regular(&a, k, p, n).map_err(fail)?;
        Ok(())
    })
}

/// Valuations of the two roots of `X^2 - a X + p^(k-1)`, as strings.
///
/// # Safety
/// `a` must be a NUL-terminated string; `alpha` and `beta` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ew_refinement_slopes(
    a: *const c_char,
    k: u32,
    p: u64,
    alpha: *mut *mut c_char,
    beta: *mut *mut c_char,
) -> EwStatus {
    guard(|| {
        check_out(alpha)?;
        check_out(beta)?;
        let a = read_q(a)?;
        let r = spaces::refinement(&a, k, p);
        *alpha = to_c_string(rational::pretty(&r.alpha_val));
        *beta = to_c_string(rational::pretty(&r.beta_val));
        Ok(())
    })
}

/// JSON report of `slopes --level LEVEL --k K --op OP`, as printed by the CLI.
///
/// # Safety
/// `level` and `op` must be NUL-terminated strings; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ew_slopes_json(
    level: *const c_char,
    k: u32,
    op: *const c_char,
    out: *mut *mut c_char,
) -> EwStatus {
    guard(|| {
        check_out(out)?;
        let level = read_str(level)?;
        let op = read_str(op)?;
        let k = k.to_string();
        let res = eigenwalk::cli::run_from(["eigenwalk", "slopes", "--level", level, "--k", &k, "--op", op]);
        if res.code != 0 {
            set_error(res.stderr.trim().to_owned());
            return Err(match res.code {
                3 => EwStatus::VerificationFailed,
                4 => EwStatus::Internal,
                _ => EwStatus::Precondition,
            });
        }
        *out = to_c_string(res.stdout);
        Ok(())
    })
}

fn boxed(c: PingPongCertificate) -> *mut EwCertificate {
    Box::into_raw(Box::new(EwCertificate(c)))
}

/// Canonical certificate walking from `X_i` to `X_j`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ew_certificate_connect(i: u64, j: u64, out: *mut *mut EwCertificate) -> EwStatus {
    guard(|| {
        check_out(out)?;
        *out = boxed(pingpong::connect(i, j).map_err(fail)?);
        Ok(())
    })
}

/// # Safety
/// `json` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ew_certificate_from_json(json: *const c_char, out: *mut *mut EwCertificate) -> EwStatus {
    guard(|| {
        check_out(out)?;
        let s = read_str(json)?;
        *out = boxed(PingPongCertificate::from_json(s).map_err(fail)?);
        Ok(())
    })
}

/// # Safety
/// `cert` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ew_certificate_to_json(cert: *const EwCertificate, out: *mut *mut c_char) -> EwStatus {
    guard(|| {
        check_out(out)?;
        let c = cert.as_ref().ok_or_else(|| {
            set_error("null certificate");
            EwStatus::NullPointer
        })?;
        *out = to_c_string(c.0.to_json());
        Ok(())
    })
}

/// `Ok` for a valid certificate, `VerificationFailed` otherwise. The number of
/// violations is written to `violations` when it is not null; the last error
/// message lists them.
///
/// # Safety
/// `cert` must be a live handle; `violations` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ew_certificate_verify(cert: *const EwCertificate, violations: *mut usize) -> EwStatus {
    guard(|| {
        let c = cert.as_ref().ok_or_else(|| {
            set_error("null certificate");
            EwStatus::NullPointer
        })?;
        let found = match pingpong::verify_certificate(&c.0) {
            Ok(()) => Vec::new(),
            Err(v) => v,
        };
        if !violations.is_null() {
            *violations = found.len();
        }
        if found.is_empty() {
            return Ok(());
        }
        let lines: Vec<String> = found.iter().map(ToString::to_string).collect();
        set_error(lines.join("\n"));
        Err(EwStatus::VerificationFailed)
    })
}

/// # Safety
/// `cert` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ew_certificate_free(cert: *mut EwCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// Number of moves in the certificate, or 0 for a null handle.
///
/// # Safety
/// `cert` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ew_certificate_len(cert: *const EwCertificate) -> usize {
    cert.as_ref().map_or(0, |c| c.0.moves.len())
}
