//! C ABI for the trigpos prover.
//!
//! Goals and certificates are opaque handles owned by the caller and released
//! with the matching `*_free` function. Every fallible call returns a
//! [`TrigposStatus`]; the message of the last failure on the calling thread
//! is available from [`trigpos_last_error`]. Strings returned by the library
//! are released with [`trigpos_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use trigpos::cli::GoalFile;
use trigpos::prover::{check_certificate, prove, read_bundle, write_bundle};
use trigpos::{IntervalSpec, MixedTrigPoly, ProofCertificate, ProofGoal, ProverConfig};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigposStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// An expression, constant, goal file or certificate did not parse.
    Parse = 3,
    /// The goal or configuration is outside the prover's domain.
    InvalidInput = 4,
    /// The prover exhausted its search without a certificate.
    ProofFailed = 5,
    /// A certificate failed independent checking.
    CheckFailed = 6,
    /// Reading or writing a bundle failed.
    Io = 7,
    /// The library panicked; this is a bug.
    Internal = 8,
}

/// A proof goal together with its prover configuration.
pub struct TrigposGoal {
    goal: ProofGoal,
    config: ProverConfig,
}

/// A proof certificate.
pub struct TrigposCertificate {
    cert: ProofCertificate,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

type FfiResult<T> = Result<T, (TrigposStatus, String)>;

/// Runs `body`, records its error message and maps panics to `Internal`.
fn guard(body: impl FnOnce() -> FfiResult<()>) -> TrigposStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => TrigposStatus::Ok,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal error: the library panicked".into());
            TrigposStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err((TrigposStatus::NullArgument, format!("{} is null", what)));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (TrigposStatus::InvalidUtf8, format!("{} is not valid UTF-8", what)))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> FfiResult<&'a T> {
    p.as_ref().ok_or((TrigposStatus::NullArgument, format!("{} is null", what)))
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &str) -> FfiResult<&'a mut T> {
    p.as_mut().ok_or((TrigposStatus::NullArgument, format!("{} is null", what)))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("interior nuls removed").into_raw()
}

/// Version of the library as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn trigpos_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null after a
/// successful call. Valid until the next call into the library.
#[no_mangle]
pub extern "C" fn trigpos_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn trigpos_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a goal `expr > 0` on the open interval `(lo, hi)` with the
/// default configuration. `lo` and `hi` accept constants such as `pi/2`.
///
/// # Safety
/// String arguments must be nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trigpos_goal_new(
    name: *const c_char,
    expr: *const c_char,
    lo: *const c_char,
    hi: *const c_char,
    out: *mut *mut TrigposGoal,
) -> TrigposStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let name = text(name, "name")?;
        let f = MixedTrigPoly::parse(text(expr, "expr")?).map_err(|e| (TrigposStatus::Parse, format!("expr: {}", e)))?;
        let constant = |p, what| -> FfiResult<_> {
            trigpos::expr::parse_constant(text(p, what)?).map_err(|e| (TrigposStatus::Parse, format!("{}: {}", what, e)))
        };
        let interval = IntervalSpec::new(constant(lo, "lo")?, constant(hi, "hi")?, true, true)
            .map_err(|e| (TrigposStatus::InvalidInput, e.to_string()))?;
        let goal = ProofGoal {
            name: name.to_string(),
            f,
            interval,
            clearing: None,
        };
        goal.validate().map_err(|e| (TrigposStatus::InvalidInput, e))?;
        *out = Box::into_raw(Box::new(TrigposGoal {
            goal,
            config: ProverConfig::default(),
        }));
        Ok(())
    })
}

/// Parses a goal file (the `key: value` format read by the command line
/// tool), including its split and degree hints.
///
/// # Safety
/// `goal_text` must be nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trigpos_goal_parse(goal_text: *const c_char, out: *mut *mut TrigposGoal) -> TrigposStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let file = GoalFile::parse(text(goal_text, "goal_text")?).map_err(|e| (TrigposStatus::Parse, e.to_string()))?;
        let (goal, config) = file.to_goal_and_config().map_err(|e| (TrigposStatus::Parse, e.to_string()))?;
        goal.validate().map_err(|e| (TrigposStatus::InvalidInput, e))?;
        *out = Box::into_raw(Box::new(TrigposGoal { goal, config }));
        Ok(())
    })
}

/// Caps the Taylor degrees the prover may use.
///
/// # Safety
/// `goal` must be a live goal handle.
#[no_mangle]
pub unsafe extern "C" fn trigpos_goal_set_max_degree(goal: *mut TrigposGoal, max_degree: u32) -> TrigposStatus {
    guard(|| {
        let g = goal.as_mut().ok_or((TrigposStatus::NullArgument, "goal is null".to_string()))?;
        g.config.max_taylor_degree = max_degree;
        Ok(())
    })
}

/// Releases a goal. Null is ignored.
///
/// # Safety
/// `goal` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn trigpos_goal_free(goal: *mut TrigposGoal) {
    if !goal.is_null() {
        drop(Box::from_raw(goal));
    }
}

/// Proves the goal. On success `*out` receives a certificate that has
/// already passed independent checking.
///
/// # Safety
/// `goal` must be a live goal handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trigpos_prove(goal: *const TrigposGoal, out: *mut *mut TrigposCertificate) -> TrigposStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let g = handle(goal, "goal")?;
        let cert = prove(&g.goal, &g.config).map_err(|e| {
            let status = if e.is_input_error() {
                TrigposStatus::InvalidInput
            } else {
                TrigposStatus::ProofFailed
            };
            (status, e.to_string())
        })?;
        let report = check_certificate(&cert);
        if !report.passed() {
            return Err((TrigposStatus::CheckFailed, report.to_string()));
        }
        *out = Box::into_raw(Box::new(TrigposCertificate { cert }));
        Ok(())
    })
}

/// Replays every obligation of the certificate. Returns `Ok` when all
/// pass and `CheckFailed` otherwise; the full report is stored in `*report`
/// when `report` is not null.
///
/// # Safety
/// `cert` must be a live certificate handle; `report`, if not null, must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn trigpos_certificate_check(
    cert: *const TrigposCertificate,
    report: *mut *mut c_char,
) -> TrigposStatus {
    guard(|| {
        if let Some(r) = report.as_mut() {
            *r = ptr::null_mut();
        }
        let c = handle(cert, "cert")?;
        let checked = check_certificate(&c.cert);
        if let Some(r) = report.as_mut() {
            *r = owned_string(checked.to_string());
        }
        if checked.passed() {
            Ok(())
        } else {
            let failed: Vec<_> = checked.failures().map(|o| o.name.clone()).collect();
            Err((TrigposStatus::CheckFailed, format!("failed obligations: {}", failed.join(", "))))
        }
    })
}

/// Serializes the certificate as JSON into `*out`.
///
/// # Safety
/// `cert` must be a live certificate handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trigpos_certificate_to_json(
    cert: *const TrigposCertificate,
    out: *mut *mut c_char,
) -> TrigposStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let c = handle(cert, "cert")?;
        let json = serde_json::to_string(&c.cert).map_err(|e| (TrigposStatus::Internal, e.to_string()))?;
        *out = owned_string(json);
        Ok(())
    })
}

/// Parses a certificate from JSON. The certificate is not checked; call
/// [`trigpos_certificate_check`] before trusting it.
///
/// # Safety
/// `json` must be nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trigpos_certificate_from_json(
    json: *const c_char,
    out: *mut *mut TrigposCertificate,
) -> TrigposStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let cert: ProofCertificate =
            serde_json::from_str(text(json, "json")?).map_err(|e| (TrigposStatus::Parse, e.to_string()))?;
        *out = Box::into_raw(Box::new(TrigposCertificate { cert }));
        Ok(())
    })
}

/// Writes the certificate as a bundle directory.
///
/// # Safety
/// `cert` must be a live certificate handle; `dir` must be nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn trigpos_certificate_write_bundle(
    cert: *const TrigposCertificate,
    dir: *const c_char,
) -> TrigposStatus {
    guard(|| {
        let c = handle(cert, "cert")?;
        let dir = text(dir, "dir")?;
        write_bundle(&c.cert, &check_certificate(&c.cert), Path::new(dir))
            .map_err(|e| (TrigposStatus::Io, e.to_string()))
    })
}

/// Reads a certificate from a bundle directory without checking it.
///
/// # Safety
/// `dir` must be nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trigpos_certificate_read_bundle(
    dir: *const c_char,
    out: *mut *mut TrigposCertificate,
) -> TrigposStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let dir = text(dir, "dir")?;
        let cert = read_bundle(Path::new(dir)).map_err(|e| match e {
            trigpos::prover::BundleError::Io { .. } => (TrigposStatus::Io, e.to_string()),
            _ => (TrigposStatus::Parse, e.to_string()),
        })?;
        *out = Box::into_raw(Box::new(TrigposCertificate { cert }));
        Ok(())
    })
}

/// Releases a certificate. Null is ignored.
///
/// # Safety
/// `cert` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn trigpos_certificate_free(cert: *mut TrigposCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}
