//! C interface to taucat. Algebras and contexts are opaque handles; results
//! are returned as JSON strings owned by the caller and released with
//! `taucat_string_free`. Every function returns a `TaucatStatus`; on failure
//! `taucat_last_error_message` describes the error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use taucat::algebra::{parse_algebra, BoundAlgebra};
use taucat::cli::{self, GraphArg, WhatArg};
use taucat::tautilt::{CompletionMethod, TauContext};
use taucat::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TaucatStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    UnknownMember = 4,
    InvalidArgument = 5,
    Precondition = 6,
    CapExceeded = 7,
    Failed = 8,
    Panic = 9,
}

/// A parsed bound quiver algebra.
pub struct TaucatAlgebra(Arc<BoundAlgebra>);

/// An algebra together with its inventory of indecomposables and caches.
pub struct TaucatContext(TauContext);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(TaucatStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse(_) | Error::UnknownVertex(_) | Error::Json(_) | Error::Io(_) => TaucatStatus::Parse,
            Error::UnknownMember(_) => TaucatStatus::UnknownMember,
            Error::Precondition(_) | Error::NotHereditary => TaucatStatus::Precondition,
            Error::InventoryCapExceeded { .. } | Error::EnumerationTooLarge(_) => TaucatStatus::CapExceeded,
            _ => TaucatStatus::Failed,
        };
        Failure(status, e.to_string())
    }
}

fn set_last_error(message: Option<String>) {
    let message = message.map(|m| CString::new(m.replace('\0', " ")).expect("no interior nul"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = message);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TaucatStatus {
    set_last_error(None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TaucatStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(Some(message));
            status
        }
        Err(_) => {
            set_last_error(Some("internal panic".into()));
            TaucatStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(TaucatStatus::NullArgument, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(TaucatStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn context<'a>(ctx: *const TaucatContext) -> Result<&'a TauContext, Failure> {
    ctx.as_ref().map(|c| &c.0).ok_or_else(|| null("context"))
}

unsafe fn write_string(out: *mut *mut c_char, value: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    let s = CString::new(value).map_err(|_| Failure(TaucatStatus::Failed, "output contains nul".into()))?;
    *out = s.into_raw();
    Ok(())
}

fn invalid(what: &str, value: &str) -> Failure {
    Failure(TaucatStatus::InvalidArgument, format!("unknown {what} `{value}`"))
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn taucat_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn taucat_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a quiver file.
///
/// # Safety
/// `source` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn taucat_algebra_parse(source: *const c_char, out: *mut *mut TaucatAlgebra) -> TaucatStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let algebra = parse_algebra(text(source, "source")?).map_err(Error::from)?;
        *out = Box::into_raw(Box::new(TaucatAlgebra(Arc::new(algebra))));
        Ok(())
    })
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `algebra` must be null or a handle from `taucat_algebra_parse`.
#[no_mangle]
pub unsafe extern "C" fn taucat_algebra_vertex_count(algebra: *const TaucatAlgebra) -> usize {
    algebra.as_ref().map_or(0, |a| a.0.vertex_count())
}

/// Dimension of the algebra, or 0 for a null handle.
///
/// # Safety
/// `algebra` must be null or a handle from `taucat_algebra_parse`.
#[no_mangle]
pub unsafe extern "C" fn taucat_algebra_dim(algebra: *const TaucatAlgebra) -> usize {
    algebra.as_ref().map_or(0, |a| a.0.dim())
}

/// # Safety
/// `algebra` must be null or a handle from `taucat_algebra_parse` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn taucat_algebra_free(algebra: *mut TaucatAlgebra) {
    if !algebra.is_null() {
        drop(Box::from_raw(algebra));
    }
}

/// Builds the inventory of indecomposables, giving up beyond `cap` members.
///
/// # Safety
/// `algebra` must be a live algebra handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn taucat_context_build(
    algebra: *const TaucatAlgebra,
    cap: usize,
    out: *mut *mut TaucatContext,
) -> TaucatStatus {
    guard(|| {
        let algebra = algebra.as_ref().ok_or_else(|| null("algebra"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let ctx = TauContext::build(&algebra.0, cap)?;
        *out = Box::into_raw(Box::new(TaucatContext(ctx)));
        Ok(())
    })
}

/// # Safety
/// `ctx` must be null or a handle from `taucat_context_build` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn taucat_context_free(ctx: *mut TaucatContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Number of indecomposables, or 0 for a null handle.
///
/// # Safety
/// `ctx` must be null or a live context handle.
#[no_mangle]
pub unsafe extern "C" fn taucat_inventory_len(ctx: *const TaucatContext) -> usize {
    ctx.as_ref().map_or(0, |c| c.0.len())
}

/// Name of the indecomposable with the given index.
///
/// # Safety
/// `ctx` must be a live context handle and `out` a valid pointer. The string
/// written to `out` must be released with `taucat_string_free`.
#[no_mangle]
pub unsafe extern "C" fn taucat_inventory_name(
    ctx: *const TaucatContext,
    index: usize,
    out: *mut *mut c_char,
) -> TaucatStatus {
    guard(|| {
        let ctx = context(ctx)?;
        if index >= ctx.len() {
            return Err(Failure(TaucatStatus::InvalidArgument, format!("index {index} out of range")));
        }
        write_string(out, ctx.name(index).to_string())
    })
}

/// Predicates of the subcategory named by `members`, as JSON.
///
/// # Safety
/// `ctx` must be a live context handle, `members` a nul-terminated string and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn taucat_check(
    ctx: *const TaucatContext,
    members: *const c_char,
    out: *mut *mut c_char,
) -> TaucatStatus {
    guard(|| {
        let ctx = context(ctx)?;
        let s = cli::parse_members(ctx, text(members, "members")?)?;
        write_string(out, cli::check_result(ctx, &s)?.to_string())
    })
}

/// Completes the subcategory named by `members`. `method` is `fac`,
/// `tau-perp` or `tilting`.
///
/// # Safety
/// `ctx` must be a live context handle, `members` and `method` nul-terminated
/// strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn taucat_complete(
    ctx: *const TaucatContext,
    members: *const c_char,
    method: *const c_char,
    out: *mut *mut c_char,
) -> TaucatStatus {
    guard(|| {
        let ctx = context(ctx)?;
        let method = match text(method, "method")? {
            "fac" => CompletionMethod::FacCokernel,
            "tau-perp" => CompletionMethod::TauPerp,
            "tilting" => CompletionMethod::TiltingPerp,
            other => return Err(invalid("method", other)),
        };
        let s = cli::parse_members(ctx, text(members, "members")?)?;
        let (_, value) = cli::complete_result(ctx, &s, method)?;
        write_string(out, value.to_string())
    })
}

/// Lists subcategories of one kind: `stt`, `tors`, `tilting` or `tau-rigid`.
///
/// # Safety
/// `ctx` must be a live context handle, `what` a nul-terminated string and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn taucat_enumerate(
    ctx: *const TaucatContext,
    what: *const c_char,
    out: *mut *mut c_char,
) -> TaucatStatus {
    guard(|| {
        let ctx = context(ctx)?;
        let what = match text(what, "what")? {
            "stt" => WhatArg::Stt,
            "tors" => WhatArg::Tors,
            "tilting" => WhatArg::Tilting,
            "tau-rigid" => WhatArg::TauRigid,
            other => return Err(invalid("enumeration", other)),
        };
        write_string(out, cli::enumerate_result(ctx, what)?.to_string())
    })
}

/// Runs checks, selected as on the command line: `all`, a key such as `3.4`
/// or a check name. `passed` (may be null) receives 1 if every check passed.
///
/// # Safety
/// `ctx` must be a live context handle, `selection` a nul-terminated string,
/// `out` a valid pointer and `passed` null or valid.
#[no_mangle]
pub unsafe extern "C" fn taucat_verify(
    ctx: *const TaucatContext,
    selection: *const c_char,
    passed: *mut i32,
    out: *mut *mut c_char,
) -> TaucatStatus {
    guard(|| {
        let ctx = context(ctx)?;
        let name = text(selection, "selection")?;
        let selection = cli::parse_selection(name).map_err(|_| invalid("check", name))?;
        let (ok, value) = cli::verify_result(ctx, selection)?;
        if let Some(p) = passed.as_mut() {
            *p = ok as i32;
        }
        write_string(out, value.to_string())
    })
}

/// DOT source of a graph: `tors-hasse` or `stt-exchange`.
///
/// # Safety
/// `ctx` must be a live context handle, `kind` a nul-terminated string and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn taucat_export_dot(
    ctx: *const TaucatContext,
    kind: *const c_char,
    out: *mut *mut c_char,
) -> TaucatStatus {
    guard(|| {
        let ctx = context(ctx)?;
        let kind = match text(kind, "graph")? {
            "tors-hasse" => GraphArg::TorsHasse,
            "stt-exchange" => GraphArg::SttExchange,
            other => return Err(invalid("graph", other)),
        };
        write_string(out, cli::graph(ctx, kind)?.dot)
    })
}

/// Releases a string returned through an `out` parameter.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn taucat_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
