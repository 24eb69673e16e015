//! C interface. Instances and assignments are opaque handles created and
//! freed here; every fallible call returns a [`GaspStatus`], and the message
//! for the last failure on the calling thread is available from
//! [`gasp_last_error`]. Player indices are 0-based; activity codes are 0
//! for void and `1..=p` in declaration order.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gasp_core::io::{parse_assignment, parse_instance, render_assignment, render_instance};
use gasp_core::{solve, verify, Algorithm, Assignment, Concept, Error, Instance, SolveOptions, Verdict};

/// Result of a fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaspStatus {
    Ok = 0,
    /// The solver proved that no stable assignment exists.
    NotFound = 1,
    InvalidInput = 2,
    Unsupported = 3,
    BudgetExceeded = 4,
    NullArgument = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaspConcept {
    Nash = 0,
    Individual = 1,
    Core = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaspAlgorithm {
    Auto = 0,
    Oracle = 1,
    Tree = 2,
    Flow = 3,
    CoreEnum = 4,
    CoreSingle = 5,
    IsCopyable = 6,
}

/// Opaque validated instance.
pub struct GaspInstance(Instance);

/// Opaque assignment of players to activities.
pub struct GaspAssignment(Assignment);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn status_of(err: &Error) -> GaspStatus {
    match err {
        Error::Invalid(_) | Error::Parse(_) | Error::Io(_) => GaspStatus::InvalidInput,
        Error::Unsupported(_) | Error::Precondition(_) => GaspStatus::Unsupported,
        Error::BudgetExceeded(_) => GaspStatus::BudgetExceeded,
    }
}

fn fail(err: Error) -> GaspStatus {
    let status = status_of(&err);
    set_error(err.to_string());
    status
}

/// Runs `f`, turning a panic into [`GaspStatus::Panic`].
fn guard(f: impl FnOnce() -> GaspStatus) -> GaspStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| {
        set_error("internal panic");
        GaspStatus::Panic
    })
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, GaspStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(GaspStatus::NullArgument);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string is not UTF-8");
        GaspStatus::InvalidInput
    })
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

fn concept(c: GaspConcept) -> Concept {
    match c {
        GaspConcept::Nash => Concept::Nash,
        GaspConcept::Individual => Concept::Individual,
        GaspConcept::Core => Concept::Core,
    }
}

fn algorithm(a: GaspAlgorithm) -> Algorithm {
    match a {
        GaspAlgorithm::Auto => Algorithm::Auto,
        GaspAlgorithm::Oracle => Algorithm::Oracle,
        GaspAlgorithm::Tree => Algorithm::Tree,
        GaspAlgorithm::Flow => Algorithm::Flow,
        GaspAlgorithm::CoreEnum => Algorithm::CoreEnum,
        GaspAlgorithm::CoreSingle => Algorithm::CoreSingle,
        GaspAlgorithm::IsCopyable => Algorithm::IsCopyable,
    }
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call on this thread; do not free.
#[no_mangle]
pub extern "C" fn gasp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses and validates an instance file's JSON text.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gasp_instance_from_json(json: *const c_char, out: *mut *mut GaspInstance) -> GaspStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return GaspStatus::NullArgument;
        }
        *out = ptr::null_mut();
        let json = match text(json) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match parse_instance(json) {
            Ok(inst) => {
                *out = Box::into_raw(Box::new(GaspInstance(inst)));
                GaspStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `inst` must come from [`gasp_instance_from_json`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn gasp_instance_free(inst: *mut GaspInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Number of players, or 0 for a null handle.
///
/// # Safety
/// `inst` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gasp_instance_players(inst: *const GaspInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.0.n())
}

/// Number of non-void activities, or 0 for a null handle.
///
/// # Safety
/// `inst` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gasp_instance_activities(inst: *const GaspInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.0.p())
}

/// The instance in file format; free with [`gasp_string_free`].
///
/// # Safety
/// `inst` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gasp_instance_to_json(inst: *const GaspInstance) -> *mut c_char {
    match inst.as_ref() {
        Some(i) => owned_string(render_instance(&i.0)),
        None => ptr::null_mut(),
    }
}

/// Finds a stable assignment. On [`GaspStatus::Ok`] `*out` holds a new
/// assignment; on [`GaspStatus::NotFound`] none exists and `*out` is null.
/// `budget` 0 means the algorithm's default; `jobs` 0 or 1 is sequential.
///
/// # Safety
/// `inst` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gasp_solve(
    inst: *const GaspInstance,
    concept_: GaspConcept,
    algo: GaspAlgorithm,
    budget: u64,
    jobs: usize,
    out: *mut *mut GaspAssignment,
) -> GaspStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return GaspStatus::NullArgument;
        }
        *out = ptr::null_mut();
        let Some(inst) = inst.as_ref() else {
            set_error("null instance");
            return GaspStatus::NullArgument;
        };
        let opts = SolveOptions { budget: (budget > 0).then_some(budget), jobs: jobs.max(1), ..Default::default() };
        match solve(&inst.0, concept(concept_), algorithm(algo), &opts) {
            Ok(Some(pi)) => {
                *out = Box::into_raw(Box::new(GaspAssignment(pi)));
                GaspStatus::Ok
            }
            Ok(None) => GaspStatus::NotFound,
            Err(e) => fail(e),
        }
    })
}

/// Parses an assignment file's JSON text against `inst`.
///
/// # Safety
/// `inst` must be a live handle, `json` NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn gasp_assignment_from_json(
    inst: *const GaspInstance,
    json: *const c_char,
    out: *mut *mut GaspAssignment,
) -> GaspStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return GaspStatus::NullArgument;
        }
        *out = ptr::null_mut();
        let Some(inst) = inst.as_ref() else {
            set_error("null instance");
            return GaspStatus::NullArgument;
        };
        let json = match text(json) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match parse_assignment(&inst.0, json) {
            Ok(pi) => {
                *out = Box::into_raw(Box::new(GaspAssignment(pi)));
                GaspStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `pi` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn gasp_assignment_free(pi: *mut GaspAssignment) {
    if !pi.is_null() {
        drop(Box::from_raw(pi));
    }
}

/// Activity code of `player` (0 = void), or `SIZE_MAX` when out of range.
///
/// # Safety
/// `pi` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gasp_assignment_activity(pi: *const GaspAssignment, player: usize) -> usize {
    match pi.as_ref() {
        Some(a) if player < a.0.len() => a.0.get(player).0,
        _ => usize::MAX,
    }
}

/// The assignment in file format; free with [`gasp_string_free`].
///
/// # Safety
/// Both handles must be null or live, and `pi` must belong to `inst`.
#[no_mangle]
pub unsafe extern "C" fn gasp_assignment_to_json(inst: *const GaspInstance, pi: *const GaspAssignment) -> *mut c_char {
    match (inst.as_ref(), pi.as_ref()) {
        (Some(i), Some(a)) if a.0.len() == i.0.n() => owned_string(render_assignment(&i.0, &a.0)),
        _ => ptr::null_mut(),
    }
}

/// Checks `pi`. Sets `*stable` to 1 or 0; when unstable and `witness` is
/// non-null, stores a one-line witness to free with [`gasp_string_free`].
///
/// # Safety
/// Handles must be live; `stable` valid; `witness` null or valid.
#[no_mangle]
pub unsafe extern "C" fn gasp_verify(
    inst: *const GaspInstance,
    pi: *const GaspAssignment,
    concept_: GaspConcept,
    stable: *mut i32,
    witness: *mut *mut c_char,
) -> GaspStatus {
    guard(|| {
        let (Some(inst), Some(pi)) = (inst.as_ref(), pi.as_ref()) else {
            set_error("null handle");
            return GaspStatus::NullArgument;
        };
        if stable.is_null() {
            set_error("null output pointer");
            return GaspStatus::NullArgument;
        }
        if !witness.is_null() {
            *witness = ptr::null_mut();
        }
        if pi.0.len() != inst.0.n() {
            set_error("assignment does not match the instance");
            return GaspStatus::InvalidInput;
        }
        match verify(&inst.0, &pi.0, concept(concept_)) {
            Verdict::Stable => *stable = 1,
            Verdict::Unstable(w) => {
                *stable = 0;
                if !witness.is_null() {
                    *witness = owned_string(w.render(&inst.0));
                }
            }
        }
        GaspStatus::Ok
    })
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn gasp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
