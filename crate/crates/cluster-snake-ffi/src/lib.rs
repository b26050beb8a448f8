//! C ABI for the expansion engine.
//!
//! Surfaces and expansions are opaque handles created and destroyed through
//! this interface. Every fallible call returns a [`CsStatus`]; on failure the
//! message is available from [`cs_last_error`] on the same thread. Strings
//! returned through out-parameters are owned by the caller and released with
//! [`cs_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cluster_snake::cli::{self, CliError};
use cluster_snake::expand::{self, Expansion};
use cluster_snake::surface::Triangulation;

/// Result of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CsStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An input string was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Malformed JSON, unknown labels or fields.
    Parse = 3,
    /// Well-formed input that violates the surface or arc rules.
    Validation = 4,
    /// The input is valid but the computation failed or is unsupported.
    Computation = 5,
    /// An output buffer is too small; the required length is reported.
    BufferTooSmall = 6,
    /// An internal error was caught at the boundary.
    Internal = 7,
}

/// A triangulated surface.
pub struct CsSurface {
    t: Triangulation,
}

/// The expansion of a tagged arc on a surface.
pub struct CsExpansion {
    e: Expansion,
    g: Result<Vec<i64>, String>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: CsStatus, msg: &str) -> CsStatus {
    set_error(msg);
    status
}

fn cli_status(e: &CliError) -> CsStatus {
    match e {
        CliError::Parse(_) => CsStatus::Parse,
        CliError::Validation(_) => CsStatus::Validation,
        CliError::Computation(_) | CliError::Mismatch(_) => CsStatus::Computation,
    }
}

fn guard<F: FnOnce() -> CsStatus>(f: F) -> CsStatus {
    set_error("");
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(CsStatus::Internal, "internal error"))
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, CsStatus> {
    if p.is_null() {
        return Err(fail(CsStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(CsStatus::InvalidUtf8, "string argument is not valid UTF-8"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> CsStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            CsStatus::Ok
        }
        Err(_) => fail(CsStatus::Internal, "output contains a NUL byte"),
    }
}

/// Message of the last failed call on this thread, or an empty string. The
/// pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn cs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Version of the file formats accepted by this library.
#[no_mangle]
pub extern "C" fn cs_format_version() -> u32 {
    cli::FORMAT_VERSION
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates a surface file given as JSON text.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cs_surface_parse(json: *const c_char, out: *mut *mut CsSurface) -> CsStatus {
    guard(|| {
        if out.is_null() {
            return fail(CsStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match cli::parse_surface(text) {
            Ok(t) => {
                *out = Box::into_raw(Box::new(CsSurface { t }));
                CsStatus::Ok
            }
            Err(e) => fail(cli_status(&e), &e.to_string()),
        }
    })
}

/// Releases a surface. Null is ignored.
///
/// # Safety
/// `s` must be null or a handle from [`cs_surface_parse`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cs_surface_free(s: *mut CsSurface) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of internal arcs, which is the rank and the g-vector length.
///
/// # Safety
/// `s` must be null or a live surface handle; null gives 0.
#[no_mangle]
pub unsafe extern "C" fn cs_surface_rank(s: *const CsSurface) -> usize {
    s.as_ref().map_or(0, |s| s.t.n())
}

/// Expands the tagged arc described by an arc file given as JSON text.
///
/// # Safety
/// `s` must be a live surface handle, `arc_json` a NUL-terminated string and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cs_expand(
    s: *const CsSurface,
    arc_json: *const c_char,
    out: *mut *mut CsExpansion,
) -> CsStatus {
    guard(|| {
        if out.is_null() {
            return fail(CsStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let Some(s) = s.as_ref() else {
            return fail(CsStatus::NullPointer, "null surface");
        };
        let text = match read_str(arc_json) {
            Ok(t) => t,
            Err(st) => return st,
        };
        let a = match cli::parse_arc(text, &s.t) {
            Ok(a) => a,
            Err(e) => return fail(cli_status(&e), &e.to_string()),
        };
        match expand::expand(&s.t, &a.arc, a.orientation) {
            Ok(e) => {
                let g = expand::g_vector(&s.t, &s.t.signed_adjacency(), &e).map_err(|e| e.to_string());
                *out = Box::into_raw(Box::new(CsExpansion { e, g }));
                CsStatus::Ok
            }
            Err(e) => fail(CsStatus::Computation, &e.to_string()),
        }
    })
}

/// Releases an expansion. Null is ignored.
///
/// # Safety
/// `e` must be null or a handle from [`cs_expand`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cs_expansion_free(e: *mut CsExpansion) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

unsafe fn with_expansion<F: FnOnce(&CsExpansion) -> String>(
    e: *const CsExpansion,
    out: *mut *mut c_char,
    f: F,
) -> CsStatus {
    guard(|| {
        if out.is_null() {
            return fail(CsStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        match e.as_ref() {
            Some(e) => write_string(out, f(e)),
            None => fail(CsStatus::NullPointer, "null expansion"),
        }
    })
}

/// The expansion as `(numerator) / (denominator)` with common factors
/// cancelled.
///
/// # Safety
/// `e` must be a live expansion handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cs_expansion_text(e: *const CsExpansion, out: *mut *mut c_char) -> CsStatus {
    with_expansion(e, out, |e| e.e.render(true))
}

/// The F-polynomial in canonical text form.
///
/// # Safety
/// `e` must be a live expansion handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cs_expansion_fpoly(e: *const CsExpansion, out: *mut *mut c_char) -> CsStatus {
    with_expansion(e, out, |e| expand::f_polynomial(&e.e).canonical_text())
}

/// Number of matchings (or compatible pairs) summed over.
///
/// # Safety
/// `e` must be null or a live expansion handle; null gives 0.
#[no_mangle]
pub unsafe extern "C" fn cs_expansion_terms(e: *const CsExpansion) -> usize {
    e.as_ref().map_or(0, |e| e.e.matchings_used)
}

/// Writes the g-vector into `buf`, which holds `cap` entries. The length is
/// stored in `len` in every case, so a first call with `cap = 0` sizes the
/// buffer.
///
/// # Safety
/// `e` must be a live expansion handle, `len` a valid pointer and `buf`
/// valid for `cap` writes.
#[no_mangle]
pub unsafe extern "C" fn cs_expansion_gvector(
    e: *const CsExpansion,
    buf: *mut i64,
    cap: usize,
    len: *mut usize,
) -> CsStatus {
    guard(|| {
        let (Some(e), false) = (e.as_ref(), len.is_null()) else {
            return fail(CsStatus::NullPointer, "null argument");
        };
        let g = match &e.g {
            Ok(g) => g,
            Err(msg) => return fail(CsStatus::Computation, msg),
        };
        *len = g.len();
        if cap < g.len() {
            return fail(CsStatus::BufferTooSmall, &format!("g-vector needs {} entries", g.len()));
        }
        if !g.is_empty() {
            if buf.is_null() {
                return fail(CsStatus::NullPointer, "null buffer");
            }
            ptr::copy_nonoverlapping(g.as_ptr(), buf, g.len());
        }
        CsStatus::Ok
    })
}
