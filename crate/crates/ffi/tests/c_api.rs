use std::ffi::{CStr, CString};
use std::ptr;

use pseudou_ffi::*;

fn last_error() -> String {
    let p = pseudou_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_string_lossy().into_owned();
    pseudou_string_free(s);
    out
}

fn hyperbolic(t: f64) -> Vec<f64> {
    // [[cosh t, sinh t], [sinh t, cosh t]] in SU(1,1)
    vec![t.cosh(), 0.0, t.sinh(), 0.0, t.sinh(), 0.0, t.cosh(), 0.0]
}

#[test]
fn matrix_round_trip() {
    unsafe {
        let data = hyperbolic(0.7);
        let mut m = ptr::null_mut();
        assert_eq!(pseudou_matrix_new(2, data.as_ptr(), &mut m), PseudouStatus::Ok);
        assert_eq!(pseudou_matrix_dim(m), 2);
        let mut back = vec![0.0; 8];
        assert_eq!(pseudou_matrix_entries(m, back.as_mut_ptr()), PseudouStatus::Ok);
        assert_eq!(back, data);
        pseudou_matrix_free(m);
        pseudou_matrix_free(ptr::null_mut());
    }
}

#[test]
fn phase_and_commutators() {
    unsafe {
        let data = hyperbolic(0.4);
        let (mut g, mut h) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(pseudou_matrix_new(2, data.as_ptr(), &mut g), PseudouStatus::Ok);
        assert_eq!(pseudou_form_standard(1, 1, &mut h), PseudouStatus::Ok);
        let mut phase = -1.0;
        assert_eq!(pseudou_dgw_phase(g, h, 1e-9, &mut phase), PseudouStatus::Ok);
        assert!(phase.abs() < 1e-12);
        let mut c = 1.0;
        assert_eq!(pseudou_cocycle(g, g, h, 1e-9, &mut c), PseudouStatus::Ok);
        assert!(c.abs() < 1e-9);
        let mut list = ptr::null_mut();
        assert_eq!(pseudou_commutators(g, h, 1e-9, &mut list), PseudouStatus::Ok);
        let n = pseudou_commutators_len(list);
        assert!(n >= 1 && n <= 28);
        assert!(pseudou_commutators_residual(list) < 1e-10);
        let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(pseudou_commutators_pair(list, 0, &mut a, &mut b), PseudouStatus::Ok);
        assert_eq!(pseudou_matrix_dim(a), 2);
        assert_eq!(pseudou_commutators_pair(list, n, &mut a, &mut b), PseudouStatus::InputError);
        pseudou_matrix_free(a);
        pseudou_matrix_free(b);
        pseudou_commutators_free(list);
        pseudou_form_free(h);
        pseudou_matrix_free(g);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let (mut g, mut h) = (ptr::null_mut(), ptr::null_mut());
        let data = [1.0, 0.0, 5.0, 0.0, 0.0, 0.0, 1.0, 0.0];
        assert_eq!(pseudou_matrix_new(2, data.as_ptr(), &mut g), PseudouStatus::Ok);
        assert_eq!(pseudou_form_standard(1, 1, &mut h), PseudouStatus::Ok);
        let mut phase = 0.0;
        assert_eq!(pseudou_dgw_phase(g, h, 1e-9, &mut phase), PseudouStatus::InputError);
        assert!(last_error().contains("not a member"), "{}", last_error());
        assert_eq!(pseudou_dgw_phase(ptr::null(), h, 1e-9, &mut phase), PseudouStatus::NullPointer);
        let mut h3 = ptr::null_mut();
        assert_eq!(pseudou_form_standard(2, 1, &mut h3), PseudouStatus::Ok);
        assert_eq!(pseudou_dgw_phase(g, h3, 1e-9, &mut phase), PseudouStatus::InputError);
        assert!(last_error().contains("dimension"));
        let mut t = 0;
        assert_eq!(pseudou_theta(2, &mut t), PseudouStatus::InputError);
        pseudou_form_free(h3);
        pseudou_form_free(h);
        pseudou_matrix_free(g);
    }
}

#[test]
fn arithmetic_entry_points() {
    unsafe {
        let mut t = 0;
        assert_eq!(pseudou_theta(9, &mut t), PseudouStatus::Ok);
        assert_eq!(t, 3);
        let mut s = ptr::null_mut();
        assert_eq!(pseudou_verlinde(3, 7, &mut s), PseudouStatus::Ok);
        assert_eq!(take(s), "98");
        assert_eq!(pseudou_signature_json(2, 5, 1, &mut s), PseudouStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["sigma"], 3);
        assert_eq!(pseudou_recurrence_json(5, 3, 7, &mut s), PseudouStatus::Ok);
        assert_eq!(take(s), "[2,5,15,50,175,625,2250]");
        assert_eq!(pseudou_recurrence_json(11, 1, 3, &mut s), PseudouStatus::InputError);
        let mut sign = 0;
        let q = (2.0 * std::f64::consts::PI * 0.05f64).sin_cos();
        assert_eq!(pseudou_squier_sign(3, q.1, q.0, 1e-10, &mut sign), PseudouStatus::Ok);
        assert_eq!(sign.abs(), 1);
    }
}

#[test]
fn command_line_bridge() {
    unsafe {
        let args: Vec<CString> = ["verlinde"].iter().map(|s| CString::new(*s).unwrap()).collect();
        let ptrs: Vec<_> = args.iter().map(|a| a.as_ptr()).collect();
        let input = CString::new(r#"{"g": 3, "p": 7}"#).unwrap();
        let (mut out, mut code) = (ptr::null_mut(), -1);
        assert_eq!(pseudou_cli(ptrs.len(), ptrs.as_ptr(), input.as_ptr(), &mut out, &mut code), PseudouStatus::Ok);
        assert_eq!(code, 0);
        assert_eq!(take(out), "{\"N\": 98}\n");
        let bad = CString::new("{\"g\": ").unwrap();
        assert_eq!(pseudou_cli(ptrs.len(), ptrs.as_ptr(), bad.as_ptr(), &mut out, &mut code), PseudouStatus::Ok);
        assert_eq!(code, 2);
        pseudou_string_free(out);
        assert!(last_error().contains("malformed JSON"));
    }
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/pseudou.h");
    let text = std::fs::read_to_string(header).unwrap();
    for f in ["pseudou_dgw_phase", "pseudou_commutators_pair", "pseudou_last_error", "pseudou_string_free"] {
        assert!(text.contains(f), "{f} missing from header");
    }
    let Ok(status) = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", header])
        .status()
    else {
        eprintln!("no C compiler; skipping syntax check");
        return;
    };
    assert!(status.success());
}
