use std::ffi::{CStr, CString};
use std::ptr;

use concordance_lab_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    cl_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let p = cl_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

const FIGURE_EIGHT: [i64; 16] = [4, 2, 5, 1, 8, 6, 1, 5, 6, 3, 7, 4, 2, 7, 3, 8];
const TREFOIL: [i64; 12] = [1, 5, 2, 4, 3, 1, 4, 6, 5, 3, 6, 2];

#[test]
fn invariants_through_the_c_abi() {
    unsafe {
        let mut k = ptr::null_mut();
        assert_eq!(cl_knot_from_pd(c("4_1").as_ptr(), FIGURE_EIGHT.as_ptr(), 4, &mut k), ClStatus::Ok);
        let (mut sig, mut nul, mut a, mut det, mut fm, mut g) = (9, 9, 9, 0, true, 0);
        assert_eq!(cl_knot_signature(k, &mut sig, &mut nul), ClStatus::Ok);
        assert_eq!(cl_knot_arf(k, &mut a), ClStatus::Ok);
        assert_eq!(cl_knot_determinant(k, &mut det), ClStatus::Ok);
        assert_eq!(cl_knot_fox_milnor(k, &mut fm), ClStatus::Ok);
        assert_eq!(cl_knot_genus(k, &mut g), ClStatus::Ok);
        assert_eq!((sig, nul, a, det, fm, g), (0, 0, 1, 5, false, 1));

        let mut s = ptr::null_mut();
        assert_eq!(cl_knot_alexander(k, &mut s), ClStatus::Ok);
        assert_eq!(take(s), "-t + 3 - t^-1");
        assert_eq!(cl_knot_report_json(k, &mut s), ClStatus::Ok);
        let report: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(report["crossings"], 4);
        cl_knot_free(k);
    }
}

#[test]
fn levine_tristram_at_a_root_is_an_error() {
    unsafe {
        let mut k = ptr::null_mut();
        assert_eq!(cl_knot_from_pd(c("3_1").as_ptr(), TREFOIL.as_ptr(), 3, &mut k), ClStatus::Ok);
        let mut v = 0;
        assert_eq!(cl_knot_levine_tristram(k, 5, 12, &mut v), ClStatus::Ok);
        assert_eq!(v.abs(), 2);
        assert_eq!(cl_knot_levine_tristram(k, 1, 6, &mut v), ClStatus::Algebra);
        assert!(last_error().contains("Alexander root"));
        assert_eq!(cl_knot_levine_tristram(k, 1, 0, &mut v), ClStatus::Algebra);
        cl_knot_free(k);
    }
}

#[test]
fn bad_inputs_report_codes() {
    unsafe {
        let mut k = ptr::null_mut();
        let bad = [1i64, 2, 3, 4];
        assert_eq!(cl_knot_from_pd(c("x").as_ptr(), bad.as_ptr(), 1, &mut k), ClStatus::InvalidDiagram);
        assert!(k.is_null());
        assert_eq!(cl_knot_from_json(c("{not json").as_ptr(), &mut k), ClStatus::InvalidJson);
        assert_eq!(cl_knot_from_pd(ptr::null(), bad.as_ptr(), 1, &mut k), ClStatus::NullPointer);
        let mut sig = 0;
        assert_eq!(cl_knot_signature(ptr::null(), &mut sig, ptr::null_mut()), ClStatus::NullPointer);
        assert_eq!(cl_knot_from_pd(c("unknot").as_ptr(), ptr::null(), 0, &mut k), ClStatus::Ok);
        assert!(cl_last_error().is_null());
        cl_knot_free(k);
        cl_knot_free(ptr::null_mut());
        cl_string_free(ptr::null_mut());
    }
}

#[test]
fn deduction_through_the_c_abi() {
    unsafe {
        let mut kb = ptr::null_mut();
        assert_eq!(cl_kb_new(8, false, &mut kb), ClStatus::Ok);
        let mut k = ptr::null_mut();
        assert_eq!(cl_knot_from_pd(c("figure_eight").as_ptr(), FIGURE_EIGHT.as_ptr(), 4, &mut k), ClStatus::Ok);
        assert_eq!(cl_kb_register_knot(kb, k), ClStatus::Ok);
        let name = c("figure_eight");
        let mut v = ClVerdict::Unknown;
        for (set, want) in [
            ("C+_1", ClVerdict::Member),
            ("N_0", ClVerdict::Member),
            ("C_2", ClVerdict::NonMember),
            ("T", ClVerdict::NonMember),
            ("P_1", ClVerdict::Unknown),
        ] {
            assert_eq!(cl_kb_verdict(kb, name.as_ptr(), c(set).as_ptr(), &mut v), ClStatus::Ok);
            assert_eq!(v, want, "{set}");
        }
        assert_eq!(cl_kb_verdict(kb, name.as_ptr(), c("Q_1").as_ptr(), &mut v), ClStatus::UnknownSet);
        assert_eq!(cl_kb_verdict(kb, name.as_ptr(), c("F_40").as_ptr(), &mut v), ClStatus::UnknownSet);

        let mut s = ptr::null_mut();
        assert_eq!(cl_kb_deduce_json(kb, name.as_ptr(), &mut s), ClStatus::Ok);
        let d: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(d["knot"], "figure_eight");

        let facts = r#"[{"knot": "figure_eight", "set": "C2_0", "polarity": "member",
            "justification": {"rule": "asserted", "premises": [], "citation": "test", "tags": []}}]"#;
        assert_eq!(cl_kb_add_facts_json(kb, c(facts).as_ptr()), ClStatus::Ok);
        assert_eq!(cl_kb_verdict(kb, name.as_ptr(), c("F_0").as_ptr(), &mut v), ClStatus::Contradiction);
        assert!(last_error().contains("contradiction"));

        cl_knot_free(k);
        cl_kb_free(kb);
    }
}

#[test]
fn towers_through_the_c_abi() {
    unsafe {
        let mut t = ptr::null_mut();
        let json = c(r#"{"pos": 2, "neg": 0, "children": [{"pos": 1, "neg": 0}, {"pos": 3, "neg": 0}]}"#);
        assert_eq!(cl_tower_from_json(json.as_ptr(), &mut t), ClStatus::Ok);
        let mut h = 0;
        assert_eq!(cl_tower_height(t, &mut h), ClStatus::Ok);
        assert_eq!(h, 2);
        let mut s = ptr::null_mut();
        assert_eq!(cl_tower_to_grope_json(t, &mut s), ClStatus::Ok);
        let g: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(g["genus"], 2);
        assert_eq!(g["children"].as_array().unwrap().len(), 4);
        assert_eq!(cl_tower_certify_json(t, &mut s), ClStatus::Ok);
        let cert: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(cert["b2"], 2);
        cl_tower_free(t);

        let ragged = c(r#"{"pos": 2, "neg": 0, "children": [{"pos": 1, "neg": 0}]}"#);
        assert_eq!(cl_tower_from_json(ragged.as_ptr(), &mut t), ClStatus::InvalidTower);
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(cl_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
