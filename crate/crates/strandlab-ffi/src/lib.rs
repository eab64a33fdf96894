//! C interface: run verification suites and check sphere-valued tables from
//! non-Rust callers. Every object crosses the boundary as an opaque handle,
//! every failure as a status code; the most recent failure message is kept
//! per thread. All entry points catch panics, so misuse can report instead
//! of aborting the caller.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use strandlab::conditions::{is_four_consistent, is_three_dependent, FourMode, TENSOR_DIM_LIMIT};
use strandlab::error::Error;
use strandlab::report::VerificationReport;
use strandlab::rng::task_rng;
use strandlab::sphere::SphereMap;
use strandlab::suites::run_suite;

/// Status code for every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrandlabStatus {
    Ok = 0,
    /// A parameter or input was malformed.
    InvalidArgument = 1,
    /// Inputs were well formed but violated an operation's precondition.
    Precondition = 2,
    /// The requested sweep exceeded its work budget.
    ResourceLimit = 3,
    /// A configuration collapsed below the degeneracy tolerance.
    DegenerateConfiguration = 4,
    /// Rejection sampling gave up.
    SamplingFailure = 5,
    /// A required pointer was null.
    NullPointer = 6,
    /// An internal panic was caught at the boundary.
    Panic = 7,
}

/// A finished suite run: the full report, queryable and serializable.
pub struct StrandlabReport {
    report: VerificationReport,
}

/// A parsed sphere-valued table.
pub struct StrandlabSphereMap {
    map: SphereMap,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let stored = CString::new(message.replace('\0', " "))
        .unwrap_or_else(|_| CString::new("error message unavailable").expect("static string"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(stored));
}

fn status_of(e: &Error) -> StrandlabStatus {
    match e {
        Error::InvalidArgument(_) => StrandlabStatus::InvalidArgument,
        Error::Precondition(_) => StrandlabStatus::Precondition,
        Error::ResourceLimit { .. } => StrandlabStatus::ResourceLimit,
        Error::DegenerateConfiguration { .. } => StrandlabStatus::DegenerateConfiguration,
        Error::SamplingFailure { .. } => StrandlabStatus::SamplingFailure,
    }
}

fn fail(e: Error) -> StrandlabStatus {
    let code = status_of(&e);
    set_error(e.to_string());
    code
}

fn guarded(f: impl FnOnce() -> StrandlabStatus) -> StrandlabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(code) => code,
        Err(_) => {
            set_error("internal panic caught at the C boundary".to_string());
            StrandlabStatus::Panic
        }
    }
}

/// # Safety
/// `ptr` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, StrandlabStatus> {
    if ptr.is_null() {
        set_error("required string was null".to_string());
        return Err(StrandlabStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string was not valid UTF-8".to_string());
        StrandlabStatus::InvalidArgument
    })
}

fn give_string(text: String, out: *mut *mut c_char) -> StrandlabStatus {
    let c = match CString::new(text) {
        Ok(c) => c,
        Err(_) => {
            set_error("output contained an interior NUL byte".to_string());
            return StrandlabStatus::InvalidArgument;
        }
    };
    unsafe { *out = c.into_raw() };
    StrandlabStatus::Ok
}

/// Library version as a static string; never freed by the caller.
#[no_mangle]
pub extern "C" fn strandlab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Most recent failure message on this thread, or null if none. The caller
/// frees it with strandlab_string_free.
#[no_mangle]
pub extern "C" fn strandlab_last_error() -> *mut c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map(|c| c.clone().into_raw())
            .unwrap_or(std::ptr::null_mut())
    })
}

/// Free a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must have been returned by this library and not freed before.
#[no_mangle]
pub unsafe extern "C" fn strandlab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Run a verification suite. `suite` is one of the documented suite names;
/// `params_json` is a JSON object of suite parameters (null or empty means
/// all defaults). On Ok, `*out` owns the finished report.
///
/// # Safety
/// `suite` and (if non-null) `params_json` must be valid NUL-terminated
/// strings; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn strandlab_run_suite(
    suite: *const c_char,
    params_json: *const c_char,
    out: *mut *mut StrandlabReport,
) -> StrandlabStatus {
    guarded(|| {
        if out.is_null() {
            set_error("output pointer was null".to_string());
            return StrandlabStatus::NullPointer;
        }
        let suite = match read_str(suite) {
            Ok(s) => s,
            Err(code) => return code,
        };
        let params = if params_json.is_null() {
            serde_json::json!({})
        } else {
            let raw = match read_str(params_json) {
                Ok(s) => s,
                Err(code) => return code,
            };
            let raw = if raw.trim().is_empty() { "{}" } else { raw };
            match serde_json::from_str(raw) {
                Ok(v) => v,
                Err(e) => return fail(Error::invalid(format!("bad parameter JSON: {e}"))),
            }
        };
        let start = Instant::now();
        match run_suite(suite, &params) {
            Ok(run) => {
                let report = VerificationReport::new(
                    suite,
                    run.parameters,
                    run.checks,
                    start.elapsed().as_secs_f64(),
                );
                *out = Box::into_raw(Box::new(StrandlabReport { report }));
                StrandlabStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Whether every check in the report passed: 1 yes, 0 no, -1 on null.
///
/// # Safety
/// `report` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn strandlab_report_passed(report: *const StrandlabReport) -> c_int {
    if report.is_null() {
        return -1;
    }
    c_int::from((*report).report.passed())
}

/// Number of checks in the report, or -1 on null.
///
/// # Safety
/// `report` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn strandlab_report_check_count(report: *const StrandlabReport) -> c_int {
    if report.is_null() {
        return -1;
    }
    (*report).report.checks.len() as c_int
}

/// Serialize the report as pretty-printed JSON. The caller frees the string
/// with strandlab_string_free.
///
/// # Safety
/// `report` must be a live report handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn strandlab_report_json(
    report: *const StrandlabReport,
    out: *mut *mut c_char,
) -> StrandlabStatus {
    guarded(|| {
        if report.is_null() || out.is_null() {
            set_error("report or output pointer was null".to_string());
            return StrandlabStatus::NullPointer;
        }
        give_string((*report).report.to_json(), out)
    })
}

/// Free a report handle. Null is ignored.
///
/// # Safety
/// `report` must have been returned by strandlab_run_suite and not freed
/// before.
#[no_mangle]
pub unsafe extern "C" fn strandlab_report_free(report: *mut StrandlabReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Parse a sphere-valued table from JSON of the shape
/// {"k": 4, "n": 3, "table": [ ... k*(k-1)/2 * n floats, pairs in
/// lexicographic order ... ]}. Entries must be unit vectors. On Ok, `*out`
/// owns the parsed table.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn strandlab_sphere_map_parse(
    json: *const c_char,
    out: *mut *mut StrandlabSphereMap,
) -> StrandlabStatus {
    guarded(|| {
        if out.is_null() {
            set_error("output pointer was null".to_string());
            return StrandlabStatus::NullPointer;
        }
        let raw = match read_str(json) {
            Ok(s) => s,
            Err(code) => return code,
        };
        #[derive(serde::Deserialize)]
        struct Wire {
            k: usize,
            n: usize,
            table: Vec<f64>,
        }
        let wire: Wire = match serde_json::from_str(raw) {
            Ok(w) => w,
            Err(e) => return fail(Error::invalid(format!("bad sphere-map JSON: {e}"))),
        };
        match SphereMap::new(wire.k, wire.n, wire.table) {
            Ok(map) => {
                *out = Box::into_raw(Box::new(StrandlabSphereMap { map }));
                StrandlabStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Arity of a parsed table, or -1 on null.
///
/// # Safety
/// `map` must be null or a live sphere-map handle.
#[no_mangle]
pub unsafe extern "C" fn strandlab_sphere_map_arity(map: *const StrandlabSphereMap) -> c_int {
    if map.is_null() {
        return -1;
    }
    (*map).map.arity() as c_int
}

/// Check the two mapping-space conditions on a parsed table. Writes a JSON
/// verdict {"threeDependent": bool, "threeResidual": r, "fourConsistent":
/// bool, "fourResidual": r} to `*verdict_out` (freed with
/// strandlab_string_free). The check itself is deterministic: probe vectors
/// derive from the fixed internal seed.
///
/// # Safety
/// `map` must be a live sphere-map handle; `verdict_out` must be a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn strandlab_sphere_map_check(
    map: *const StrandlabSphereMap,
    tol_three: f64,
    tol_four: f64,
    verdict_out: *mut *mut c_char,
) -> StrandlabStatus {
    guarded(|| {
        if map.is_null() || verdict_out.is_null() {
            set_error("map or output pointer was null".to_string());
            return StrandlabStatus::NullPointer;
        }
        let f = &(*map).map;
        let three = is_three_dependent(f, tol_three);
        let three_residual = three.worst.as_ref().map_or(0.0, |w| w.residual);
        let mode = if f.dim() <= TENSOR_DIM_LIMIT {
            FourMode::Tensor
        } else {
            FourMode::Probe
        };
        let mut rng = task_rng(0, "ffi-sphere-map-check");
        let four = match is_four_consistent(f, tol_four, mode, &mut rng) {
            Ok(r) => r,
            Err(e) => return fail(e),
        };
        let verdict = serde_json::json!({
            "threeDependent": three_residual <= tol_three,
            "threeResidual": three_residual,
            "fourConsistent": four.worst_residual <= tol_four,
            "fourResidual": four.worst_residual,
        });
        give_string(
            serde_json::to_string_pretty(&verdict).expect("verdict serialization cannot fail"),
            verdict_out,
        )
    })
}

/// Free a sphere-map handle. Null is ignored.
///
/// # Safety
/// `map` must have been returned by strandlab_sphere_map_parse and not freed
/// before.
#[no_mangle]
pub unsafe extern "C" fn strandlab_sphere_map_free(map: *mut StrandlabSphereMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}
