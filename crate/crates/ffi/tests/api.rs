use std::ffi::{c_char, CStr, CString};
use std::ptr;

use serde_json::Value;
use taucat_ffi::*;

const A2: &str = "vertices: 1 2\narrows: a: 1 -> 2\n";
const LOOP2: &str = "vertices: 1\narrows: x: 1 -> 1\nrelations: x*x\n";

fn last_error() -> String {
    let p = taucat_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    taucat_string_free(s);
    out
}

unsafe fn build(text: &str) -> (*mut TaucatAlgebra, *mut TaucatContext) {
    let source = CString::new(text).unwrap();
    let mut alg = ptr::null_mut();
    assert_eq!(taucat_algebra_parse(source.as_ptr(), &mut alg), TaucatStatus::Ok);
    let mut ctx = ptr::null_mut();
    assert_eq!(taucat_context_build(alg, 100, &mut ctx), TaucatStatus::Ok);
    (alg, ctx)
}

unsafe fn json_call(f: impl FnOnce(*mut *mut c_char) -> TaucatStatus) -> Value {
    let mut out = ptr::null_mut();
    assert_eq!(f(&mut out), TaucatStatus::Ok);
    serde_json::from_str(&take(out)).unwrap()
}

#[test]
fn a2_round_trip() {
    unsafe {
        let (alg, ctx) = build(A2);
        assert_eq!(taucat_algebra_vertex_count(alg), 2);
        assert_eq!(taucat_algebra_dim(alg), 3);
        assert_eq!(taucat_inventory_len(ctx), 3);
        let mut name = ptr::null_mut();
        assert_eq!(taucat_inventory_name(ctx, 0, &mut name), TaucatStatus::Ok);
        assert!(!take(name).is_empty());
        assert!(taucat_last_error_message().is_null());

        let members = CString::new("P1,S1").unwrap();
        let r = json_call(|out| taucat_check(ctx, members.as_ptr(), out));
        assert_eq!(r["support_tau_tilting"], true);

        let empty = CString::new("").unwrap();
        let fac = CString::new("fac").unwrap();
        let r = json_call(|out| taucat_complete(ctx, empty.as_ptr(), fac.as_ptr(), out));
        assert_eq!(r["output"].as_array().unwrap().len(), 0);

        let stt = CString::new("stt").unwrap();
        assert_eq!(json_call(|out| taucat_enumerate(ctx, stt.as_ptr(), out))["count"], 5);

        let all = CString::new("all").unwrap();
        let mut passed = 0;
        let r = json_call(|out| taucat_verify(ctx, all.as_ptr(), &mut passed, out));
        assert_eq!(passed, 1);
        assert_eq!(r["checks"].as_array().unwrap().len(), 8);

        let exchange = CString::new("stt-exchange").unwrap();
        let mut dot = ptr::null_mut();
        assert_eq!(taucat_export_dot(ctx, exchange.as_ptr(), &mut dot), TaucatStatus::Ok);
        assert!(take(dot).starts_with("digraph exchange {"));

        taucat_context_free(ctx);
        taucat_algebra_free(alg);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let bad = CString::new("vertices: 1\narrows: x: 1 -> 1\nrelations: x\n").unwrap();
        let mut alg = ptr::null_mut();
        assert_eq!(taucat_algebra_parse(bad.as_ptr(), &mut alg), TaucatStatus::Parse);
        assert!(alg.is_null());
        assert!(last_error().contains("relation"));

        assert_eq!(taucat_algebra_parse(ptr::null(), &mut alg), TaucatStatus::NullArgument);
        let mut ctx = ptr::null_mut();
        assert_eq!(taucat_context_build(ptr::null(), 10, &mut ctx), TaucatStatus::NullArgument);

        let (alg, ctx) = build(LOOP2);
        let mut out = ptr::null_mut();
        let key = CString::new("4.7").unwrap();
        assert_eq!(taucat_verify(ctx, key.as_ptr(), ptr::null_mut(), &mut out), TaucatStatus::Precondition);
        assert!(out.is_null());
        let unknown = CString::new("Q9").unwrap();
        assert_eq!(taucat_check(ctx, unknown.as_ptr(), &mut out), TaucatStatus::UnknownMember);
        let method = CString::new("nope").unwrap();
        let empty = CString::new("").unwrap();
        assert_eq!(taucat_complete(ctx, empty.as_ptr(), method.as_ptr(), &mut out), TaucatStatus::InvalidArgument);
        assert_eq!(taucat_inventory_name(ctx, 99, &mut out), TaucatStatus::InvalidArgument);
        assert_eq!(taucat_check(ctx, empty.as_ptr(), ptr::null_mut()), TaucatStatus::NullArgument);

        let mut small = ptr::null_mut();
        assert_eq!(taucat_context_build(alg, 1, &mut small), TaucatStatus::CapExceeded);
        assert!(last_error().contains("cap"));

        taucat_context_free(ctx);
        taucat_algebra_free(alg);
        taucat_context_free(ptr::null_mut());
        taucat_algebra_free(ptr::null_mut());
        taucat_string_free(ptr::null_mut());
        assert_eq!(taucat_inventory_len(ptr::null()), 0);
    }
}

#[test]
fn version_matches_package() {
    let v = unsafe { CStr::from_ptr(taucat_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
