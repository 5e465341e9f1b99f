//! C interface to `squadk`.
//!
//! Objects cross the boundary as opaque handles created by `sqk_*_new` or
//! `sqk_*_parse` and released with the matching `sqk_*_free`. Every fallible
//! call returns an [`SqkStatus`]; on failure the message is available from
//! [`sqk_last_error`] on the same thread until the next failing call.
//! Strings handed out by the library must be released with
//! [`sqk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use squadk::chain::{build_window, DimCap, WindowCaps};
use squadk::derived::{build_comparison, present_ddstar, verify_theorem_el, DEPTH_CAP};
use squadk::squad::{parse_sqpres, write_sqpres, Squad, SquadPresentation};
use squadk::waldhausen::{budget, parse_wcat, present_dstar, validate_window, write_wcat, WaldhausenWindow};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SqkStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Computation = 4,
    Panic = 5,
}

/// Which presentation to build from a window.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SqkFlavor {
    /// `D*W`
    Waldhausen = 0,
    /// `DD*W`
    Derived = 1,
}

/// Opaque window handle.
pub struct SqkWindow(WaldhausenWindow);

/// Opaque handle to a compiled presentation.
pub struct SqkSquad(Squad);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (SqkStatus, String)>) -> SqkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SqkStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SqkStatus::Panic
        }
    }
}

fn parse_err(e: impl ToString) -> (SqkStatus, String) {
    (SqkStatus::Parse, e.to_string())
}

fn comp_err(e: impl ToString) -> (SqkStatus, String) {
    (SqkStatus::Computation, e.to_string())
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, (SqkStatus, String)> {
    if s.is_null() {
        return Err((SqkStatus::NullArgument, "null string".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|e| (SqkStatus::InvalidUtf8, e.to_string()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, (SqkStatus, String)> {
    p.as_ref().ok_or_else(|| (SqkStatus::NullArgument, "null handle".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), (SqkStatus, String)> {
    if out.is_null() {
        return Err((SqkStatus::NullArgument, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> Result<*mut c_char, (SqkStatus, String)> {
    CString::new(s).map(CString::into_raw).map_err(comp_err)
}

/// Message of the last failing call on this thread, or null. The pointer is
/// owned by the library and valid until the next failing call.
#[no_mangle]
pub extern "C" fn sqk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sqk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a window in `.wcat` text form.
///
/// # Safety
/// `text_ptr` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sqk_window_parse(text_ptr: *const c_char, out: *mut *mut SqkWindow) -> SqkStatus {
    guard(|| {
        let w = parse_wcat(text(text_ptr)?).map_err(parse_err)?;
        write_out(out, Box::into_raw(Box::new(SqkWindow(w))))
    })
}

/// Generates the window of complexes over `F_p` in degrees `lo..=hi` with
/// total dimension at most `max_dim`, or per-degree dimension when
/// `per_degree` is nonzero.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sqk_window_chain(
    p: u32,
    lo: i32,
    hi: i32,
    max_dim: usize,
    per_degree: bool,
    out: *mut *mut SqkWindow,
) -> SqkStatus {
    guard(|| {
        let cap = if per_degree { DimCap::PerDegree(max_dim) } else { DimCap::Total(max_dim) };
        let cw = build_window(p, lo, hi, cap, WindowCaps::default()).map_err(comp_err)?;
        write_out(out, Box::into_raw(Box::new(SqkWindow(cw.window))))
    })
}

/// # Safety
/// `w` must be null or a handle from this library that was not freed.
#[no_mangle]
pub unsafe extern "C" fn sqk_window_free(w: *mut SqkWindow) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// Canonical `.wcat` text of a window; free with [`sqk_string_free`].
///
/// # Safety
/// `w` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sqk_window_write(w: *const SqkWindow, out: *mut *mut c_char) -> SqkStatus {
    guard(|| {
        let w = handle(w)?;
        write_out(out, owned_string(write_wcat(&w.0))?)
    })
}

/// Number of axiom violations and closure gaps; zero for a valid window.
///
/// # Safety
/// `w` must be a live handle and `problems` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sqk_window_validate(w: *const SqkWindow, problems: *mut usize) -> SqkStatus {
    guard(|| {
        let r = validate_window(&handle(w)?.0, budget());
        write_out(problems, r.violations.len() + r.gaps.len())
    })
}

fn presentation(w: &WaldhausenWindow, flavor: SqkFlavor) -> Result<SquadPresentation, (SqkStatus, String)> {
    Ok(match flavor {
        SqkFlavor::Waldhausen => present_dstar(w).map_err(comp_err)?.presentation,
        SqkFlavor::Derived => present_ddstar(w, DEPTH_CAP).map_err(comp_err)?.presentation,
    })
}

/// `.sqpres` text of `D*W` or `DD*W`; free with [`sqk_string_free`].
///
/// # Safety
/// `w` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sqk_window_present(w: *const SqkWindow, flavor: SqkFlavor, out: *mut *mut c_char) -> SqkStatus {
    guard(|| {
        let p = presentation(&handle(w)?.0, flavor)?;
        write_out(out, owned_string(write_sqpres(&p))?)
    })
}

/// Compiles `D*W` or `DD*W` of a window.
///
/// # Safety
/// `w` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sqk_window_squad(w: *const SqkWindow, flavor: SqkFlavor, out: *mut *mut SqkSquad) -> SqkStatus {
    guard(|| {
        let s = Squad::new(presentation(&handle(w)?.0, flavor)?).map_err(comp_err)?;
        write_out(out, Box::into_raw(Box::new(SqkSquad(s))))
    })
}

/// Whether `μ̄: D*W → DD*W` and its candidate inverse check out on every
/// generator and induce isomorphisms on `π₀` and `π₁`.
///
/// # Safety
/// `w` must be a live handle and `passed` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sqk_window_compare(w: *const SqkWindow, passed: *mut bool) -> SqkStatus {
    guard(|| {
        let w = &handle(w)?.0;
        let cmp = build_comparison(w).map_err(comp_err)?;
        let r = verify_theorem_el(w, &cmp).map_err(comp_err)?;
        write_out(passed, r.passed())
    })
}

/// Parses and compiles a presentation in `.sqpres` text form.
///
/// # Safety
/// `text_ptr` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sqk_squad_parse(text_ptr: *const c_char, out: *mut *mut SqkSquad) -> SqkStatus {
    guard(|| {
        let p = parse_sqpres(text(text_ptr)?).map_err(parse_err)?;
        let s = Squad::new(p).map_err(comp_err)?;
        write_out(out, Box::into_raw(Box::new(SqkSquad(s))))
    })
}

/// # Safety
/// `s` must be null or a handle from this library that was not freed.
#[no_mangle]
pub unsafe extern "C" fn sqk_squad_free(s: *mut SqkSquad) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// `π₀` rendered like `Z^2 + Z/2`; free with [`sqk_string_free`].
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sqk_squad_pi0(s: *const SqkSquad, out: *mut *mut c_char) -> SqkStatus {
    guard(|| {
        let g = handle(s)?.0.pi0().invariant_factors();
        write_out(out, owned_string(g.to_string())?)
    })
}

/// `π₁` rendered like `Z/2`; free with [`sqk_string_free`].
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sqk_squad_pi1(s: *const SqkSquad, out: *mut *mut c_char) -> SqkStatus {
    guard(|| {
        let g = handle(s)?.0.pi1().map_err(comp_err)?.group.invariant_factors();
        write_out(out, owned_string(g.to_string())?)
    })
}
