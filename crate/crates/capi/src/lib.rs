//! C ABI for Schmidt-number certification.
//!
//! Conventions:
//!
//! * Objects cross the boundary as opaque handles (`SlState`, `SlReport`)
//!   created and destroyed by this library; never free them with `free()`.
//! * Every fallible function returns an [`SlStatus`]; `SL_STATUS_OK` (0)
//!   means success. On failure a human-readable message is stored per thread
//!   and can be read with [`sl_last_error_message`].
//! * Out-parameters are written only on success.
//! * Strings returned through out-parameters are NUL-terminated, allocated by
//!   this library, and must be released with [`sl_string_free`].
//! * All functions are safe to call from multiple threads as long as each
//!   handle is used from one thread at a time.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use schmidt_locus::bounds::{analyze, optimal_generic_bound, BoundReport};
use schmidt_locus::statefile::parse_state_file;
use schmidt_locus::{EnsembleState, Error, ProbeConfig, RankPolicy};

/// Status code returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// An argument violated a documented precondition.
    InvalidInput = 3,
    /// Dimensions of an input did not match what the operation requires.
    ShapeMismatch = 4,
    /// A matrix that must be Hermitian was not.
    NotHermitian = 5,
    /// A matrix that must be positive semidefinite was not.
    NotPositiveSemidefinite = 6,
    /// A density matrix whose trace is not 1.
    TraceNotOne = 7,
    /// An input contained NaN or infinite entries.
    NonFinite = 8,
    /// The request is well-formed but unsupported.
    Unsupported = 9,
    /// A structured input failed to parse; the error message names the path.
    ParseError = 10,
    /// An internal invariant failed; report this as a bug.
    Internal = 11,
}

/// Opaque handle to a validated bipartite mixed state.
pub struct SlState(EnsembleState);

/// Opaque handle to a completed certification report.
pub struct SlReport(BoundReport);

/// Probe budget and thresholds, mirroring the library defaults.
///
/// Obtain defaults with [`sl_probe_config_default`] and override fields as
/// needed; passing NULL wherever a config is accepted also selects defaults.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SlProbeConfig {
    /// Random directions sampled per emptiness probe.
    pub samples: u64,
    /// Independent descent restarts per emptiness probe.
    pub restarts: u64,
    /// Maximum coordinate-descent steps per restart.
    pub descent_steps: u64,
    /// Descent stops when the step size falls below this value.
    pub step_tolerance: f64,
    /// Relative singular-value gap above which a locus is declared empty.
    pub emptiness_gap: f64,
    /// Master seed; identical seeds reproduce identical certificates.
    pub seed: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn store_message(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn store_error(err: &Error) -> SlStatus {
    store_message(&err.to_string());
    match err {
        Error::InvalidInput(_) => SlStatus::InvalidInput,
        Error::ShapeMismatch { .. } => SlStatus::ShapeMismatch,
        Error::NotHermitian { .. } => SlStatus::NotHermitian,
        Error::NotPositiveSemidefinite { .. } => SlStatus::NotPositiveSemidefinite,
        Error::TraceNotOne { .. } => SlStatus::TraceNotOne,
        Error::NonFinite { .. } => SlStatus::NonFinite,
        Error::Unsupported(_) => SlStatus::Unsupported,
        Error::Parse { .. } => SlStatus::ParseError,
        Error::Internal(_) => SlStatus::Internal,
    }
}

fn null_pointer() -> SlStatus {
    store_message("required pointer argument is NULL");
    SlStatus::NullPointer
}

/// Run an FFI body, converting panics into `Internal` instead of unwinding
/// across the boundary.
fn guarded(body: impl FnOnce() -> SlStatus) -> SlStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            store_message("internal panic caught at the FFI boundary");
            SlStatus::Internal
        }
    }
}

fn to_probe_config(cfg: Option<&SlProbeConfig>) -> Result<ProbeConfig, Error> {
    let Some(cfg) = cfg else {
        return Ok(ProbeConfig::default());
    };
    let cast = |name: &str, value: u64| -> Result<usize, Error> {
        usize::try_from(value)
            .map_err(|_| Error::InvalidInput(format!("{name} = {value} exceeds this platform")))
    };
    Ok(ProbeConfig {
        samples: cast("samples", cfg.samples)?,
        restarts: cast("restarts", cfg.restarts)?,
        descent_steps: cast("descent_steps", cfg.descent_steps)?,
        step_tolerance: cfg.step_tolerance,
        emptiness_gap: cfg.emptiness_gap,
        seed: cfg.seed,
    })
}

/// Version of this library as a static NUL-terminated string; never freed.
#[no_mangle]
pub extern "C" fn sl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message describing the most recent failure on the calling thread, as a
/// NUL-terminated string. The pointer stays valid until the next failing
/// call on the same thread; do not free it. Empty if nothing failed yet.
#[no_mangle]
pub extern "C" fn sl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Fill `out` with the default probe configuration.
#[no_mangle]
pub unsafe extern "C" fn sl_probe_config_default(out: *mut SlProbeConfig) -> SlStatus {
    guarded(|| {
        if out.is_null() {
            return null_pointer();
        }
        let d = ProbeConfig::default();
        unsafe {
            *out = SlProbeConfig {
                samples: d.samples as u64,
                restarts: d.restarts as u64,
                descent_steps: d.descent_steps as u64,
                step_tolerance: d.step_tolerance,
                emptiness_gap: d.emptiness_gap,
                seed: d.seed,
            };
        }
        SlStatus::Ok
    })
}

/// Parse a state-file JSON document (ensemble or density-matrix form) into a
/// new state handle. On success `*out` owns the state; release it with
/// [`sl_state_free`].
#[no_mangle]
pub unsafe extern "C" fn sl_state_parse(json: *const c_char, out: *mut *mut SlState) -> SlStatus {
    guarded(|| {
        if json.is_null() || out.is_null() {
            return null_pointer();
        }
        let text = match unsafe { CStr::from_ptr(json) }.to_str() {
            Ok(text) => text,
            Err(_) => {
                store_message("state JSON is not valid UTF-8");
                return SlStatus::InvalidUtf8;
            }
        };
        match parse_state_file(text, &RankPolicy::default()) {
            Ok(state) => {
                unsafe { *out = Box::into_raw(Box::new(SlState(state))) };
                SlStatus::Ok
            }
            Err(e) => store_error(&e),
        }
    })
}

/// Release a state handle. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn sl_state_free(state: *mut SlState) {
    if !state.is_null() {
        drop(unsafe { Box::from_raw(state) });
    }
}

/// Dimension of the first tensor factor.
#[no_mangle]
pub unsafe extern "C" fn sl_state_m(state: *const SlState, out: *mut u64) -> SlStatus {
    guarded(|| {
        let (Some(state), false) = (unsafe { state.as_ref() }, out.is_null()) else {
            return null_pointer();
        };
        unsafe { *out = state.0.m() as u64 };
        SlStatus::Ok
    })
}

/// Dimension of the second tensor factor.
#[no_mangle]
pub unsafe extern "C" fn sl_state_n(state: *const SlState, out: *mut u64) -> SlStatus {
    guarded(|| {
        let (Some(state), false) = (unsafe { state.as_ref() }, out.is_null()) else {
            return null_pointer();
        };
        unsafe { *out = state.0.n() as u64 };
        SlStatus::Ok
    })
}

/// Rank of the state (dimension of its range).
#[no_mangle]
pub unsafe extern "C" fn sl_state_rank(state: *const SlState, out: *mut u64) -> SlStatus {
    guarded(|| {
        let (Some(state), false) = (unsafe { state.as_ref() }, out.is_null()) else {
            return null_pointer();
        };
        unsafe { *out = state.0.rank() as u64 };
        SlStatus::Ok
    })
}

/// Schmidt rank of a pure state (a single-member ensemble). Fails with
/// `InvalidInput` when the state is mixed.
#[no_mangle]
pub unsafe extern "C" fn sl_state_schmidt_rank(state: *const SlState, out: *mut u64) -> SlStatus {
    guarded(|| {
        let (Some(state), false) = (unsafe { state.as_ref() }, out.is_null()) else {
            return null_pointer();
        };
        if state.0.members().len() != 1 {
            return store_error(&Error::InvalidInput(format!(
                "Schmidt rank requires a pure state; this state has rank {}",
                state.0.rank()
            )));
        }
        let info = state.0.members()[0].1.schmidt(&RankPolicy::default());
        unsafe { *out = info.rank as u64 };
        SlStatus::Ok
    })
}

/// Certify a Schmidt-number lower bound for `state`. `config` may be NULL to
/// use defaults. On success `*out` owns the report; release it with
/// [`sl_report_free`].
#[no_mangle]
pub unsafe extern "C" fn sl_analyze(
    state: *const SlState,
    config: *const SlProbeConfig,
    out: *mut *mut SlReport,
) -> SlStatus {
    guarded(|| {
        let (Some(state), false) = (unsafe { state.as_ref() }, out.is_null()) else {
            return null_pointer();
        };
        let cfg = match to_probe_config(unsafe { config.as_ref() }) {
            Ok(cfg) => cfg,
            Err(e) => return store_error(&e),
        };
        match analyze(&state.0, &cfg, &RankPolicy::default()) {
            Ok(report) => {
                unsafe { *out = Box::into_raw(Box::new(SlReport(report))) };
                SlStatus::Ok
            }
            Err(e) => store_error(&e),
        }
    })
}

/// Release a report handle. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn sl_report_free(report: *mut SlReport) {
    if !report.is_null() {
        drop(unsafe { Box::from_raw(report) });
    }
}

/// Certified Schmidt-number lower bound (exact and probabilistic evidence).
#[no_mangle]
pub unsafe extern "C" fn sl_report_certified_bound(
    report: *const SlReport,
    out: *mut u64,
) -> SlStatus {
    guarded(|| {
        let (Some(report), false) = (unsafe { report.as_ref() }, out.is_null()) else {
            return null_pointer();
        };
        unsafe { *out = report.0.certified_bound as u64 };
        SlStatus::Ok
    })
}

/// Lower bound supported by exact evidence alone.
#[no_mangle]
pub unsafe extern "C" fn sl_report_exact_bound(
    report: *const SlReport,
    out: *mut u64,
) -> SlStatus {
    guarded(|| {
        let (Some(report), false) = (unsafe { report.as_ref() }, out.is_null()) else {
            return null_pointer();
        };
        unsafe { *out = report.0.exact_bound as u64 };
        SlStatus::Ok
    })
}

/// Bound predicted for generic states of the same dimensions.
#[no_mangle]
pub unsafe extern "C" fn sl_report_generic_bound(
    report: *const SlReport,
    out: *mut u64,
) -> SlStatus {
    guarded(|| {
        let (Some(report), false) = (unsafe { report.as_ref() }, out.is_null()) else {
            return null_pointer();
        };
        unsafe { *out = report.0.generic_bound as u64 };
        SlStatus::Ok
    })
}

/// Serialize the full report as a JSON string. On success `*out` is a
/// NUL-terminated string owned by the caller; release it with
/// [`sl_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sl_report_to_json(
    report: *const SlReport,
    out: *mut *mut c_char,
) -> SlStatus {
    guarded(|| {
        let (Some(report), false) = (unsafe { report.as_ref() }, out.is_null()) else {
            return null_pointer();
        };
        let json = match serde_json::to_string_pretty(&report.0) {
            Ok(json) => json,
            Err(e) => {
                return store_error(&Error::Internal(format!("report serialization: {e}")))
            }
        };
        match CString::new(json) {
            Ok(cstring) => {
                unsafe { *out = cstring.into_raw() };
                SlStatus::Ok
            }
            Err(_) => {
                store_message("serialized report contained an interior NUL");
                SlStatus::Internal
            }
        }
    })
}

/// Release a string returned by this library. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn sl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Best generic Schmidt-number prediction for dimensions (m, r): the bound is
/// written to `out_bound` and the optimal level to `out_t_star` (0 when no
/// level qualifies). Either out-pointer may be NULL to skip that value, but
/// not both.
#[no_mangle]
pub unsafe extern "C" fn sl_generic_bound(
    m: u64,
    r: u64,
    out_bound: *mut u64,
    out_t_star: *mut u64,
) -> SlStatus {
    guarded(|| {
        if out_bound.is_null() && out_t_star.is_null() {
            return null_pointer();
        }
        let (Ok(m), Ok(r)) = (usize::try_from(m), usize::try_from(r)) else {
            return store_error(&Error::InvalidInput(
                "dimensions exceed this platform".into(),
            ));
        };
        match optimal_generic_bound(m, r) {
            Ok(result) => {
                if !out_bound.is_null() {
                    unsafe { *out_bound = result.bound as u64 };
                }
                if !out_t_star.is_null() {
                    unsafe { *out_t_star = result.t_star.unwrap_or(0) as u64 };
                }
                SlStatus::Ok
            }
            Err(e) => store_error(&e),
        }
    })
}
