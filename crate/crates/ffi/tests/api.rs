use std::ffi::{CStr, CString};
use std::ptr;

use gasp_ffi::*;

const NO_IS: &str = r#"{"players":3,"activities":["a","b","c"],"edges":[[1,2],[2,3]],"preferences":[
 [[["b",2]],[["a",1]],[["c",3]],[["c",2]],[["c",1]],[["void",1]]],
 [[["c",3]],[["c",2]],[["a",2]],[["b",2]],[["b",1]],[["void",1]]],
 [[["c",3]],[["a",2]],[["a",1]],[["void",1]]]]}"#;

fn load(json: &str) -> *mut GaspInstance {
    let c = CString::new(json).unwrap();
    let mut inst = ptr::null_mut();
    assert_eq!(unsafe { gasp_instance_from_json(c.as_ptr(), &mut inst) }, GaspStatus::Ok);
    inst
}

#[test]
fn solve_and_verify_round_trip() {
    let inst = load(NO_IS);
    unsafe {
        assert_eq!(gasp_instance_players(inst), 3);
        assert_eq!(gasp_instance_activities(inst), 3);
        let mut pi = ptr::null_mut();
        let st = gasp_solve(inst, GaspConcept::Individual, GaspAlgorithm::Auto, 0, 1, &mut pi);
        assert_eq!(st, GaspStatus::NotFound);
        assert!(pi.is_null());
        let st = gasp_solve(inst, GaspConcept::Nash, GaspAlgorithm::Oracle, 0, 2, &mut pi);
        assert_eq!(st, GaspStatus::NotFound);

        let json = CString::new(r#"["c","b","void"]"#).unwrap();
        assert_eq!(gasp_assignment_from_json(inst, json.as_ptr(), &mut pi), GaspStatus::Ok);
        assert_eq!(gasp_assignment_activity(pi, 0), 3);
        assert_eq!(gasp_assignment_activity(pi, 2), 0);
        assert_eq!(gasp_assignment_activity(pi, 9), usize::MAX);
        let mut stable = -1;
        let mut witness = ptr::null_mut();
        assert_eq!(gasp_verify(inst, pi, GaspConcept::Individual, &mut stable, &mut witness), GaspStatus::Ok);
        assert_eq!(stable, 0);
        assert_eq!(CStr::from_ptr(witness).to_str().unwrap(), "IS-DEVIATION player=1 activity=a");
        gasp_string_free(witness);
        let text = gasp_assignment_to_json(inst, pi);
        assert_eq!(CStr::from_ptr(text).to_str().unwrap(), r#"["c","b","void"]"#);
        gasp_string_free(text);
        gasp_assignment_free(pi);
        gasp_instance_free(inst);
    }
}

#[test]
fn solver_output_is_stable() {
    let inst = load(r#"{"players":1,"activities":["a"],"edges":[],"preferences":[[[["a",1]],[["void",1]]]]}"#);
    unsafe {
        let mut pi = ptr::null_mut();
        assert_eq!(gasp_solve(inst, GaspConcept::Core, GaspAlgorithm::CoreSingle, 0, 1, &mut pi), GaspStatus::Ok);
        assert_eq!(gasp_assignment_activity(pi, 0), 1);
        let mut stable = 0;
        assert_eq!(gasp_verify(inst, pi, GaspConcept::Core, &mut stable, ptr::null_mut()), GaspStatus::Ok);
        assert_eq!(stable, 1);
        gasp_assignment_free(pi);
        gasp_instance_free(inst);
    }
}

#[test]
fn errors_map_to_codes() {
    unsafe {
        let mut inst = ptr::null_mut();
        let bad = CString::new(r#"{"players":1,"activities":["a"],"edges":[],"preferences":[[[["a",1]]]]}"#).unwrap();
        assert_eq!(gasp_instance_from_json(bad.as_ptr(), &mut inst), GaspStatus::InvalidInput);
        assert!(inst.is_null());
        let msg = CStr::from_ptr(gasp_last_error()).to_str().unwrap();
        assert!(msg.contains("void"), "{msg}");
        assert_eq!(gasp_instance_from_json(ptr::null(), &mut inst), GaspStatus::NullArgument);

        let inst = load(NO_IS);
        let mut pi = ptr::null_mut();
        let st = gasp_solve(inst, GaspConcept::Nash, GaspAlgorithm::Flow, 0, 1, &mut pi);
        assert_eq!(st, GaspStatus::Unsupported);
        let st = gasp_solve(inst, GaspConcept::Individual, GaspAlgorithm::Oracle, 2, 1, &mut pi);
        assert_eq!(st, GaspStatus::BudgetExceeded);
        assert_eq!(gasp_solve(ptr::null(), GaspConcept::Nash, GaspAlgorithm::Auto, 0, 1, &mut pi), GaspStatus::NullArgument);
        gasp_instance_free(inst);
        gasp_instance_free(ptr::null_mut());
        gasp_string_free(ptr::null_mut());
    }
}

#[test]
fn instance_text_round_trips() {
    let inst = load(NO_IS);
    unsafe {
        let text = gasp_instance_to_json(inst);
        let again = load(CStr::from_ptr(text).to_str().unwrap());
        let text2 = gasp_instance_to_json(again);
        assert_eq!(CStr::from_ptr(text), CStr::from_ptr(text2));
        gasp_string_free(text);
        gasp_string_free(text2);
        gasp_instance_free(again);
        gasp_instance_free(inst);
    }
}
