use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use squadk_ffi::*;

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    sqk_string_free(s);
    out
}

const ZERO_WINDOW: &str = "[objects]\n0\n[zero]\n0\n[cofibrations]\nid_0\n[weak_equivalences]\nid_0\n[pushout]\nid_0 along id_0 = (0, id_0, id_0)\n[coproduct]\n0 0 = (0, id_0, id_0, id_0, id_0)\n[cylinder]\n0 = (0, id_0, id_0, id_0)\n";

#[test]
fn free_squad_homotopy_groups() {
    unsafe {
        let text = CString::new("gens0:\n  e\ngens1:\nrels0:\nrels1:\n").unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(sqk_squad_parse(text.as_ptr(), &mut s), SqkStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(sqk_squad_pi0(s, &mut out), SqkStatus::Ok);
        assert_eq!(take(out), "Z");
        assert_eq!(sqk_squad_pi1(s, &mut out), SqkStatus::Ok);
        assert_eq!(take(out), "Z/2");
        sqk_squad_free(s);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(sqk_squad_parse(ptr::null(), &mut s), SqkStatus::NullArgument);
        let bad = CString::new("gens0:\n  a-b\n").unwrap();
        assert_eq!(sqk_squad_parse(bad.as_ptr(), &mut s), SqkStatus::Parse);
        assert!(s.is_null());
        let msg = CStr::from_ptr(sqk_last_error()).to_str().unwrap();
        assert!(msg.contains("line 2"), "{msg}");
        let mut n = 0usize;
        assert_eq!(sqk_window_validate(ptr::null(), &mut n), SqkStatus::NullArgument);
        let mut w = ptr::null_mut();
        assert_eq!(sqk_window_chain(4, 0, 1, 2, false, &mut w), SqkStatus::Computation);
    }
}

#[test]
fn zero_window_round_trip() {
    unsafe {
        let text = CString::new(ZERO_WINDOW).unwrap();
        let mut w = ptr::null_mut();
        assert_eq!(sqk_window_parse(text.as_ptr(), &mut w), SqkStatus::Ok, "{:?}", CStr::from_ptr(sqk_last_error()));
        let mut problems = 99usize;
        assert_eq!(sqk_window_validate(w, &mut problems), SqkStatus::Ok);
        assert_eq!(problems, 0);
        let mut out = ptr::null_mut();
        assert_eq!(sqk_window_write(w, &mut out), SqkStatus::Ok);
        let written = CString::new(take(out)).unwrap();
        let mut w2 = ptr::null_mut();
        assert_eq!(sqk_window_parse(written.as_ptr(), &mut w2), SqkStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(sqk_window_squad(w2, SqkFlavor::Waldhausen, &mut s), SqkStatus::Ok);
        assert_eq!(sqk_squad_pi0(s, &mut out), SqkStatus::Ok);
        assert_eq!(take(out), "0");
        sqk_squad_free(s);
        sqk_window_free(w);
        sqk_window_free(w2);
    }
}

#[test]
fn chain_window_comparison() {
    unsafe {
        let mut w = ptr::null_mut();
        assert_eq!(sqk_window_chain(2, 0, 1, 2, false, &mut w), SqkStatus::Ok);
        let mut passed = false;
        assert_eq!(sqk_window_compare(w, &mut passed), SqkStatus::Ok);
        assert!(passed);
        let mut out = ptr::null_mut();
        assert_eq!(sqk_window_present(w, SqkFlavor::Derived, &mut out), SqkStatus::Ok);
        assert!(take(out).starts_with("gens0:\n"));
        sqk_window_free(w);
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/squadk.h");
    let src = include_str!("../src/lib.rs");
    for line in src.lines().filter(|l| l.contains("extern \"C\" fn ")) {
        let name = line.split("fn ").nth(1).unwrap().split('(').next().unwrap();
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    // compile the header as C when a compiler is around
    if let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-x", "c", concat!(env!("CARGO_MANIFEST_DIR"), "/include/squadk.h")])
        .status()
    {
        assert!(status.success());
    }
}
