//! Exercises the C ABI end to end from Rust: object lifecycle, status codes,
//! error messages, and the JSON accessor.

use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::ptr;

use schmidt_locus_capi::{
    sl_analyze, sl_generic_bound, sl_last_error_message, sl_probe_config_default, sl_report_free,
    sl_report_certified_bound, sl_report_exact_bound, sl_report_generic_bound, sl_report_to_json,
    sl_state_free, sl_state_m, sl_state_n, sl_state_parse, sl_state_rank, sl_state_schmidt_rank,
    sl_string_free, sl_version, SlProbeConfig, SlState, SlStatus,
};

fn last_error() -> String {
    unsafe { CStr::from_ptr(sl_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

fn packaged_state_json() -> CString {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/rank2_5x5.json");
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()));
    CString::new(text).unwrap()
}

fn parse_packaged_state() -> *mut SlState {
    let json = packaged_state_json();
    let mut state = ptr::null_mut();
    let status = unsafe { sl_state_parse(json.as_ptr(), &mut state) };
    assert_eq!(status, SlStatus::Ok, "{}", last_error());
    assert!(!state.is_null());
    state
}

#[test]
fn version_is_the_package_version() {
    let version = unsafe { CStr::from_ptr(sl_version()) };
    assert_eq!(version.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn default_config_matches_library_defaults() {
    let mut cfg = SlProbeConfig {
        samples: 0,
        restarts: 0,
        descent_steps: 0,
        step_tolerance: 0.0,
        emptiness_gap: 0.0,
        seed: 99,
    };
    assert_eq!(
        unsafe { sl_probe_config_default(&mut cfg) },
        SlStatus::Ok
    );
    assert_eq!(cfg.samples, 2000);
    assert_eq!(cfg.restarts, 20);
    assert_eq!(cfg.descent_steps, 200);
    assert_eq!(cfg.step_tolerance, 1e-10);
    assert_eq!(cfg.emptiness_gap, 1e-6);
    assert_eq!(cfg.seed, 0);
    assert_eq!(
        unsafe { sl_probe_config_default(ptr::null_mut()) },
        SlStatus::NullPointer
    );
}

#[test]
fn full_analysis_lifecycle() {
    let state = parse_packaged_state();
    let mut value = 0u64;
    unsafe {
        assert_eq!(sl_state_m(state, &mut value), SlStatus::Ok);
        assert_eq!(value, 5);
        assert_eq!(sl_state_n(state, &mut value), SlStatus::Ok);
        assert_eq!(value, 5);
        assert_eq!(sl_state_rank(state, &mut value), SlStatus::Ok);
        assert_eq!(value, 2);
    }

    let mut report = ptr::null_mut();
    let status = unsafe { sl_analyze(state, ptr::null(), &mut report) };
    assert_eq!(status, SlStatus::Ok, "{}", last_error());
    unsafe {
        assert_eq!(sl_report_certified_bound(report, &mut value), SlStatus::Ok);
        assert!(value >= 3, "certified bound {value}");
        assert_eq!(sl_report_exact_bound(report, &mut value), SlStatus::Ok);
        assert_eq!(value, 3);
        assert_eq!(sl_report_generic_bound(report, &mut value), SlStatus::Ok);
        assert_eq!(value, 3);
    }

    let mut json: *mut c_char = ptr::null_mut();
    assert_eq!(
        unsafe { sl_report_to_json(report, &mut json) },
        SlStatus::Ok
    );
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed["m"], 5);
    assert_eq!(parsed["certified_bound"], 3);
    assert!(parsed["chain"].as_array().is_some());

    unsafe {
        sl_string_free(json);
        sl_report_free(report);
        sl_state_free(state);
    }
}

#[test]
fn analyze_accepts_an_explicit_config_and_rejects_invalid_ones() {
    let state = parse_packaged_state();
    let mut cfg = SlProbeConfig {
        samples: 50,
        restarts: 2,
        descent_steps: 50,
        step_tolerance: 1e-8,
        emptiness_gap: 1e-6,
        seed: 1,
    };

    let mut report = ptr::null_mut();
    assert_eq!(
        unsafe { sl_analyze(state, &cfg, &mut report) },
        SlStatus::Ok,
        "{}",
        last_error()
    );
    let mut value = 0u64;
    unsafe {
        assert_eq!(sl_report_exact_bound(report, &mut value), SlStatus::Ok);
        assert_eq!(value, 3);
        sl_report_free(report);
    }

    cfg.emptiness_gap = 0.0;
    let mut rejected = ptr::null_mut();
    assert_eq!(
        unsafe { sl_analyze(state, &cfg, &mut rejected) },
        SlStatus::InvalidInput
    );
    assert!(rejected.is_null());
    assert!(!last_error().is_empty());

    unsafe { sl_state_free(state) };
}

#[test]
fn schmidt_rank_requires_a_pure_state() {
    let state = parse_packaged_state();
    let mut value = 0u64;
    assert_eq!(
        unsafe { sl_state_schmidt_rank(state, &mut value) },
        SlStatus::InvalidInput
    );
    assert!(last_error().contains("pure state"), "{}", last_error());
    unsafe { sl_state_free(state) };

    let inv = std::f64::consts::FRAC_1_SQRT_2;
    let json = CString::new(format!(
        r#"{{"m":2,"n":2,"ensemble":[{{"weight":1.0,"coefficients":[[[{inv},0.0],[0.0,0.0]],[[0.0,0.0],[{inv},0.0]]]}}]}}"#
    ))
    .unwrap();
    let mut pure = ptr::null_mut();
    assert_eq!(
        unsafe { sl_state_parse(json.as_ptr(), &mut pure) },
        SlStatus::Ok,
        "{}",
        last_error()
    );
    assert_eq!(
        unsafe { sl_state_schmidt_rank(pure, &mut value) },
        SlStatus::Ok
    );
    assert_eq!(value, 2);
    unsafe { sl_state_free(pure) };
}

#[test]
fn parse_failures_set_status_and_message() {
    let mut state = ptr::null_mut();

    let broken = CString::new("{ not json").unwrap();
    assert_eq!(
        unsafe { sl_state_parse(broken.as_ptr(), &mut state) },
        SlStatus::ParseError
    );
    assert!(state.is_null());
    assert!(!last_error().is_empty());

    assert_eq!(
        unsafe { sl_state_parse(ptr::null(), &mut state) },
        SlStatus::NullPointer
    );
    let valid = packaged_state_json();
    assert_eq!(
        unsafe { sl_state_parse(valid.as_ptr(), ptr::null_mut()) },
        SlStatus::NullPointer
    );

    let invalid_utf8: [c_char; 3] = [-1i8 as c_char, -2i8 as c_char, 0];
    assert_eq!(
        unsafe { sl_state_parse(invalid_utf8.as_ptr(), &mut state) },
        SlStatus::InvalidUtf8
    );
}

#[test]
fn generic_bound_reports_scan_results() {
    let (mut bound, mut t_star) = (0u64, 0u64);
    assert_eq!(
        unsafe { sl_generic_bound(10, 17, &mut bound, &mut t_star) },
        SlStatus::Ok
    );
    assert_eq!((bound, t_star), (2, 2));

    assert_eq!(
        unsafe { sl_generic_bound(5, 2, &mut bound, ptr::null_mut()) },
        SlStatus::Ok
    );
    assert_eq!(bound, 3);

    assert_eq!(
        unsafe { sl_generic_bound(0, 2, &mut bound, &mut t_star) },
        SlStatus::InvalidInput
    );
    assert_eq!(
        unsafe { sl_generic_bound(5, 2, ptr::null_mut(), ptr::null_mut()) },
        SlStatus::NullPointer
    );
}

#[test]
fn frees_ignore_null() {
    unsafe {
        sl_state_free(ptr::null_mut());
        sl_report_free(ptr::null_mut());
        sl_string_free(ptr::null_mut());
    }
}
