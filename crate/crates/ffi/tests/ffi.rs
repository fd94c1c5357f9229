use std::ffi::{CStr, CString};
use std::ptr;

use operad_forge_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = of_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_string_lossy().into_owned();
    of_string_free(s);
    out
}

#[test]
fn two_point_antichain_is_a_zero_sphere() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(of_poset_from_json(c(r#"{"size": 2, "leq": []}"#).as_ptr(), &mut p), OfStatus::Ok);
        assert_eq!(of_poset_size(p), 2);
        let mut comps = 0;
        assert_eq!(of_poset_component_count(p, &mut comps), OfStatus::Ok);
        assert_eq!(comps, 2);
        let mut h = ptr::null_mut();
        assert_eq!(of_poset_homology(p, 0, &mut h), OfStatus::Ok);
        let mut b0 = 0;
        assert_eq!(of_homology_betti(h, 0, &mut b0), OfStatus::Ok);
        assert_eq!(b0, 2);
        let mut chi = 0;
        assert_eq!(of_homology_euler_characteristic(h, &mut chi), OfStatus::Ok);
        assert_eq!(chi, 2);
        let mut json = ptr::null_mut();
        assert_eq!(of_homology_to_json(h, &mut json), OfStatus::Ok);
        assert!(take(json).contains("betti"));
        of_homology_free(h);
        of_poset_free(p);
    }
}

#[test]
fn configuration_space_betti_numbers() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(of_poset_complete_graphs(2, 3, true, &mut p), OfStatus::Ok);
        assert_eq!(of_poset_size(p), 48);
        let mut h = ptr::null_mut();
        assert_eq!(of_poset_homology(p, 0, &mut h), OfStatus::Ok);
        let betti: Vec<usize> = (0..of_homology_degrees(h))
            .map(|d| {
                let mut b = 0;
                assert_eq!(of_homology_betti(h, d, &mut b), OfStatus::Ok);
                b
            })
            .collect();
        assert_eq!(&betti[..3], &[1, 3, 2]);
        assert!(betti[3..].iter().all(|&b| b == 0));
        of_homology_free(h);
        of_poset_free(p);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(of_poset_from_json(c("not json").as_ptr(), &mut p), OfStatus::Parse);
        assert!(p.is_null());
        assert!(!last_error().is_empty());
        // a 2-cycle is not antisymmetric
        let cyc = c(r#"{"size": 2, "leq": [[0, 1], [1, 0]]}"#);
        assert_eq!(of_poset_from_json(cyc.as_ptr(), &mut p), OfStatus::InvalidInput);
        assert_eq!(of_poset_from_json(ptr::null(), &mut p), OfStatus::NullPointer);
        assert!(last_error().contains("null"));
        assert_eq!(of_poset_complete_graphs(0, 3, true, &mut p), OfStatus::OutOfRange);
        let mut report = ptr::null_mut();
        let mut code = 0;
        assert_eq!(of_run_suite(c("nope").as_ptr(), ptr::null(), &mut report, &mut code), OfStatus::UnknownSuite);
        assert_eq!(of_poset_complete_graphs(3, 40, false, &mut p), OfStatus::BudgetExceeded);
        // success clears the message
        assert_eq!(of_poset_complete_graphs(1, 2, true, &mut p), OfStatus::Ok);
        assert!(of_last_error().is_null());
        of_poset_free(p);
        of_poset_free(ptr::null_mut());
    }
}

#[test]
fn graph_handles_compose_and_act() {
    unsafe {
        let arrow = c(r#"{"k": 2, "n": 2, "edges": [{"a": 1, "b": 2, "dir": "ab", "color": 1}]}"#);
        let unit = c(r#"{"k": 1, "n": 2, "edges": []}"#);
        let (mut a, mut u, mut out) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
        assert_eq!(of_graph_from_json(arrow.as_ptr(), &mut a), OfStatus::Ok);
        assert_eq!(of_graph_from_json(unit.as_ptr(), &mut u), OfStatus::Ok);
        assert_eq!(of_graph_arity(a), 2);
        let inners = [a as *const OfGraph, u as *const OfGraph];
        assert_eq!(of_graph_compose(a, inners.as_ptr(), 2, &mut out), OfStatus::Ok);
        assert_eq!(of_graph_arity(out), 3);
        let mut json = ptr::null_mut();
        assert_eq!(of_graph_to_json(out, &mut json), OfStatus::Ok);
        let text = take(json);
        assert!(text.contains(r#""a":1,"b":3"#), "{text}");

        let swap = [1usize, 0];
        let mut b = ptr::null_mut();
        assert_eq!(of_graph_act(a, swap.as_ptr(), &mut b), OfStatus::Ok);
        let mut leq = true;
        assert_eq!(of_graph_leq(a, b, &mut leq), OfStatus::Ok);
        assert!(!leq);
        assert_eq!(of_graph_compose(a, inners.as_ptr(), 1, &mut out), OfStatus::InvalidInput);
        let bad = [0usize, 0];
        assert_eq!(of_graph_act(a, bad.as_ptr(), &mut b), OfStatus::InvalidInput);
        for g in [a, u, out, b] {
            of_graph_free(g);
        }
    }
}

#[test]
fn min_cell_of_side_by_side_squares() {
    unsafe {
        let cfg = c(r#"[{"n":2,"intervals":[["0","1/2"],["0","1"]]},{"n":2,"intervals":[["1/2","1"],["0","1"]]}]"#);
        let mut g = ptr::null_mut();
        assert_eq!(of_min_cell(cfg.as_ptr(), &mut g), OfStatus::Ok);
        let mut json = ptr::null_mut();
        assert_eq!(of_graph_to_json(g, &mut json), OfStatus::Ok);
        assert_eq!(take(json), r#"{"k":2,"n":2,"edges":[{"a":1,"b":2,"dir":"ab","color":1}]}"#);
        of_graph_free(g);
    }
}

#[test]
fn suites_return_json_reports() {
    unsafe {
        let mut report = ptr::null_mut();
        let mut code = -1;
        let cfg = c("family = k\nn = 2\nk = 3\n");
        assert_eq!(of_run_suite(c("enumerate").as_ptr(), cfg.as_ptr(), &mut report, &mut code), OfStatus::Ok);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
        assert_eq!(v["suite"], "enumerate");
        assert_eq!(v["status"], "pass");
        assert_eq!(v["params"]["k"], 3);
    }
}
