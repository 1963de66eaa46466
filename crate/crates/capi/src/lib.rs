//! C interface: opaque handles over scenarios and analyses, integer status
//! codes, JSON strings for structured results. Strings returned by this
//! library must be released with `orb_string_free`; handles with their
//! matching `_free` function. The last failure message is kept per thread
//! and readable through `orb_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use orbitcat::action::SimplicialAction;
use orbitcat::error::Error;
use orbitcat::level::{phi0_category, Phi0Category};
use orbitcat::scenario::{self, Scenario};
use orbitcat::strata::{frontier_poset, PartitionMode, StrataWhere, StratumPoset};
use orbitcat::{checks, export, report};

/// Status codes shared by all fallible entry points.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum OrbStatus {
    /// success
    OrbOk = 0,
    /// a check suite ran and found failures
    OrbCheckFailed = 1,
    /// the input could not be read or parsed
    OrbParseError = 2,
    /// the input parsed but violates a structural requirement
    OrbInvalid = 3,
    /// an element or generator index is out of range
    OrbUnknownElement = 4,
    /// a null pointer or non-UTF-8 string was passed in
    OrbBadArgument = 5,
}

/// An owned scenario, as parsed or generated.
pub struct OrbScenario {
    scenario: Scenario,
}

/// A completed analysis of one scenario: the regularized action, its
/// database category and the quotient stratification.
pub struct OrbAnalysis {
    action: SimplicialAction,
    phi0: Phi0Category,
    poset: StratumPoset,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: &str) {
    let owned = CString::new(message.replace('\0', " ")).unwrap();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(owned));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn status_of(e: &Error) -> OrbStatus {
    match e {
        Error::Io(_) | Error::Parse(_) => OrbStatus::OrbParseError,
        Error::UnknownElement(..) => OrbStatus::OrbUnknownElement,
        _ => OrbStatus::OrbInvalid,
    }
}

/// # Safety
/// `text` must be a valid NUL-terminated string or null.
unsafe fn utf8_arg<'a>(text: *const c_char) -> Option<&'a str> {
    if text.is_null() {
        set_error("null string argument");
        return None;
    }
    match CStr::from_ptr(text).to_str() {
        Ok(s) => Some(s),
        Err(_) => {
            set_error("string argument is not UTF-8");
            None
        }
    }
}

fn leak_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap().into_raw()
}

/// The message of the most recent failure on this thread, or null. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn orb_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(ptr::null(), |s| s.as_ptr())
    })
}

/// Parses a scenario from JSON. Returns null on failure.
///
/// # Safety
/// `json` must be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn orb_scenario_from_json(json: *const c_char) -> *mut OrbScenario {
    let Some(text) = utf8_arg(json) else {
        return ptr::null_mut();
    };
    match scenario::scenario_from_str(text) {
        Ok(scenario) => {
            clear_error();
            Box::into_raw(Box::new(OrbScenario { scenario }))
        }
        Err(e) => {
            set_error(&e.to_string());
            ptr::null_mut()
        }
    }
}

/// Builds a built-in scenario from a reference such as
/// `rotation_sphere(5)`. Returns null on failure.
///
/// # Safety
/// `reference` must be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn orb_scenario_example(reference: *const c_char) -> *mut OrbScenario {
    let Some(text) = utf8_arg(reference) else {
        return ptr::null_mut();
    };
    match scenario::example(text) {
        Ok(scenario) => {
            clear_error();
            Box::into_raw(Box::new(OrbScenario { scenario }))
        }
        Err(e) => {
            set_error(&e.to_string());
            ptr::null_mut()
        }
    }
}

/// The scenario as canonical JSON; release with `orb_string_free`.
///
/// # Safety
/// `scenario` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn orb_scenario_to_json(scenario: *const OrbScenario) -> *mut c_char {
    let Some(handle) = scenario.as_ref() else {
        set_error("null scenario handle");
        return ptr::null_mut();
    };
    match serde_json::to_string_pretty(&handle.scenario) {
        Ok(text) => leak_string(text),
        Err(e) => {
            set_error(&e.to_string());
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `scenario` must be a handle from this library, not yet freed, or null.
#[no_mangle]
pub unsafe extern "C" fn orb_scenario_free(scenario: *mut OrbScenario) {
    if !scenario.is_null() {
        drop(Box::from_raw(scenario));
    }
}

/// Runs the full analysis: regularization, the database category and the
/// quotient stratification. Returns null on failure.
///
/// # Safety
/// `scenario` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn orb_analysis_new(scenario: *const OrbScenario) -> *mut OrbAnalysis {
    let Some(handle) = scenario.as_ref() else {
        set_error("null scenario handle");
        return ptr::null_mut();
    };
    let built = (|| {
        let action = scenario::build_action(&handle.scenario)?.regularize()?;
        let phi0 = phi0_category(&action)?;
        let quotient = action.quotient()?;
        let poset = frontier_poset(
            &action,
            &quotient,
            PartitionMode::ByIsomorphism,
            StrataWhere::Quotient,
        )?;
        Ok::<_, Error>(OrbAnalysis { action, phi0, poset })
    })();
    match built {
        Ok(analysis) => {
            clear_error();
            Box::into_raw(Box::new(analysis))
        }
        Err(e) => {
            set_error(&e.to_string());
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `analysis` must be a handle from this library, not yet freed, or null.
#[no_mangle]
pub unsafe extern "C" fn orb_analysis_free(analysis: *mut OrbAnalysis) {
    if !analysis.is_null() {
        drop(Box::from_raw(analysis));
    }
}

macro_rules! analysis_count {
    ($(#[$doc:meta])* $name:ident, $body:expr) => {
        $(#[$doc])*
        /// Returns -1 on a null handle.
        ///
        /// # Safety
        /// `analysis` must be a live handle from this library or null.
        #[no_mangle]
        pub unsafe extern "C" fn $name(analysis: *const OrbAnalysis) -> i64 {
            match analysis.as_ref() {
                Some(a) => $body(a) as i64,
                None => {
                    set_error("null analysis handle");
                    -1
                }
            }
        }
    };
}

analysis_count!(
    /// Order of the acting group.
    orb_analysis_group_order,
    |a: &OrbAnalysis| a.action.group().order()
);
analysis_count!(
    /// Simplices of the regularized complex.
    orb_analysis_point_count,
    |a: &OrbAnalysis| a.action.point_count()
);
analysis_count!(
    /// Barycentric subdivisions applied to make the action regular.
    orb_analysis_subdivision_depth,
    |a: &OrbAnalysis| a.action.subdivision_depth()
);
analysis_count!(
    /// Objects of the database category.
    orb_analysis_phi0_object_count,
    |a: &OrbAnalysis| a.phi0.objects.len()
);
analysis_count!(
    /// Morphisms of the database category.
    orb_analysis_phi0_morphism_count,
    |a: &OrbAnalysis| a.phi0.morphisms.len()
);
analysis_count!(
    /// Strata of the quotient, by isotropy isomorphism type.
    orb_analysis_stratum_count,
    |a: &OrbAnalysis| a.poset.strata.len()
);

/// 1 if the quotient stratification satisfies the frontier condition,
/// 0 if not, -1 on a null handle.
///
/// # Safety
/// `analysis` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn orb_analysis_frontier_ok(analysis: *const OrbAnalysis) -> i32 {
    match analysis.as_ref() {
        Some(a) => a.poset.frontier_ok as i32,
        None => {
            set_error("null analysis handle");
            -1
        }
    }
}

/// The quotient stratum poset as JSON; release with `orb_string_free`.
///
/// # Safety
/// `analysis` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn orb_analysis_poset_json(analysis: *const OrbAnalysis) -> *mut c_char {
    let Some(a) = analysis.as_ref() else {
        set_error("null analysis handle");
        return ptr::null_mut();
    };
    match serde_json::to_string_pretty(&export::poset_json(&a.poset)) {
        Ok(text) => leak_string(text),
        Err(e) => {
            set_error(&e.to_string());
            ptr::null_mut()
        }
    }
}

/// Runs the invariant check suite. On OrbOk or OrbCheckFailed, and when
/// `out_report` is non-null, stores the JSON report there; release it with
/// `orb_string_free`.
///
/// # Safety
/// `scenario` must be a live handle from this library or null; `out_report`
/// must be null or point to writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn orb_check(
    scenario: *const OrbScenario,
    out_report: *mut *mut c_char,
) -> OrbStatus {
    if !out_report.is_null() {
        *out_report = ptr::null_mut();
    }
    let Some(handle) = scenario.as_ref() else {
        set_error("null scenario handle");
        return OrbStatus::OrbBadArgument;
    };
    let outcome = match checks::run_checks(&handle.scenario) {
        Ok(outcome) => outcome,
        Err(e) => {
            set_error(&e.to_string());
            return status_of(&e);
        }
    };
    let rendered = report::report("check", &handle.scenario, outcome.to_json())
        .and_then(|r| Ok(serde_json::to_string_pretty(&r)?));
    match rendered {
        Ok(text) => {
            if !out_report.is_null() {
                *out_report = leak_string(text);
            }
        }
        Err(e) => {
            set_error(&e.to_string());
            return status_of(&e);
        }
    }
    if outcome.all_pass {
        clear_error();
        OrbStatus::OrbOk
    } else {
        set_error("one or more checks failed");
        OrbStatus::OrbCheckFailed
    }
}

/// # Safety
/// `text` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn orb_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}
