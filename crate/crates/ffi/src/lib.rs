//! C interface to the signature compiler: opaque handles over compiled
//! signatures, status codes, and owned strings. Every entry point catches
//! panics; the last error message is kept per thread and stays valid until
//! the next call on that thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use sigforge::inner::Style;
use sigforge::pipeline::{self, Compiled};

/// Status of a call: `OK` on success, `DIAGNOSTIC` for well-formed input
/// failures (see `sf_last_error`), `USAGE` for misuse of the interface,
/// and `PANIC` for internal errors.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum SfStatus {
    Ok = 0,
    Diagnostic = 1,
    Usage = 2,
    Panic = 3,
}

/// Output dialect of emitted interpretations.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum SfStyle {
    Agda = 0,
    Ascii = 1,
}

/// An elaborated signature; create with `sf_compile`, release with
/// `sf_free`.
pub struct SfCompiled {
    inner: Compiled,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: String) {
    let cleaned = msg.replace('\0', " ");
    LAST_ERROR.with(|e| {
        *e.borrow_mut() = CString::new(cleaned).unwrap();
    });
}

/// The message of the most recent failure on this thread. The pointer is
/// valid until the next sigforge call on the same thread.
#[no_mangle]
pub extern "C" fn sf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

unsafe fn cstr_arg<'a>(p: *const c_char) -> Result<&'a str, SfStatus> {
    if p.is_null() {
        set_error("null string argument".into());
        return Err(SfStatus::Usage);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8".into());
        SfStatus::Usage
    })
}

fn guard(f: impl FnOnce() -> SfStatus) -> SfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic".into());
            SfStatus::Panic
        }
    }
}

fn owned_string_out(s: String, out: *mut *mut c_char) -> SfStatus {
    let cleaned = s.replace('\0', " ");
    match CString::new(cleaned) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            SfStatus::Ok
        }
        Err(_) => {
            set_error("output contained an interior nul".into());
            SfStatus::Panic
        }
    }
}

/// Parses and elaborates a signature source buffer. On success stores a
/// handle in `out_handle`; the caller owns it and must release it with
/// `sf_free`.
///
/// # Safety
/// `source` and `file_name` must be valid nul-terminated strings and
/// `out_handle` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_compile(
    source: *const c_char,
    file_name: *const c_char,
    out_handle: *mut *mut SfCompiled,
) -> SfStatus {
    guard(|| {
        if out_handle.is_null() {
            set_error("null output handle".into());
            return SfStatus::Usage;
        }
        let src = match cstr_arg(source) {
            Ok(s) => s.to_string(),
            Err(st) => return st,
        };
        let name = match cstr_arg(file_name) {
            Ok(s) => s.to_string(),
            Err(st) => return st,
        };
        match pipeline::compile_source(&name, src) {
            Ok(inner) => {
                *out_handle = Box::into_raw(Box::new(SfCompiled { inner }));
                SfStatus::Ok
            }
            Err(d) => {
                set_error(format!("{d}"));
                SfStatus::Diagnostic
            }
        }
    })
}

/// Releases a handle returned by `sf_compile`. A null handle is ignored.
///
/// # Safety
/// `handle` must come from `sf_compile` and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sf_free(handle: *mut SfCompiled) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Releases a string returned by this interface.
///
/// # Safety
/// `s` must come from a sigforge call and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Number of entries of the elaborated signature.
///
/// # Safety
/// `handle` must be a live handle from `sf_compile`.
#[no_mangle]
pub unsafe extern "C" fn sf_entry_count(handle: *const SfCompiled) -> usize {
    if handle.is_null() {
        return 0;
    }
    (*handle).inner.ctx.len()
}

/// The profile token of the signature (`simple`, `fqii`, `hiit-strict`,
/// `hiit-weak`); a static string, do not free.
///
/// # Safety
/// `handle` must be a live handle from `sf_compile`.
#[no_mangle]
pub unsafe extern "C" fn sf_profile(handle: *const SfCompiled) -> *const c_char {
    if handle.is_null() {
        return std::ptr::null();
    }
    let token: &'static str = match (*handle).inner.ctx.profile {
        sigforge::Profile::Simple => "simple\0",
        sigforge::Profile::Fqii => "fqii\0",
        sigforge::Profile::HiitStrict => "hiit-strict\0",
        sigforge::Profile::HiitWeak => "hiit-weak\0",
    };
    token.as_ptr() as *const c_char
}

/// Emits the interpretations named by `what` (a comma list of
/// `a,m,d,s,ind,rec`) in the given style. On success `out_text` receives
/// an owned string; free it with `sf_string_free`.
///
/// # Safety
/// `handle` must be live, `what` a valid string, `out_text` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_emit(
    handle: *const SfCompiled,
    what: *const c_char,
    style: SfStyle,
    out_text: *mut *mut c_char,
) -> SfStatus {
    guard(|| {
        if handle.is_null() || out_text.is_null() {
            set_error("null argument".into());
            return SfStatus::Usage;
        }
        let what = match cstr_arg(what) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let kinds = match pipeline::parse_what(what) {
            Ok(k) => k,
            Err(m) => {
                set_error(m);
                return SfStatus::Usage;
            }
        };
        let style = match style {
            SfStyle::Agda => Style::Agda,
            SfStyle::Ascii => Style::Ascii,
        };
        match pipeline::emit(&(*handle).inner, &kinds, style) {
            Ok(text) => owned_string_out(text, out_text),
            Err(d) => {
                set_error(format!("{d}"));
                SfStatus::Diagnostic
            }
        }
    })
}

/// Evaluates a closed simple-profile term. Exactly one of `algebra_json`
/// and `dalgebra_json` must be non-null; the result lands in `out_value`.
///
/// # Safety
/// `handle` must be live; string arguments, when non-null, must be valid;
/// `out_value` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_eval(
    handle: *const SfCompiled,
    algebra_json: *const c_char,
    dalgebra_json: *const c_char,
    term: *const c_char,
    out_value: *mut i64,
) -> SfStatus {
    guard(|| {
        if handle.is_null() || out_value.is_null() {
            set_error("null argument".into());
            return SfStatus::Usage;
        }
        let term = match cstr_arg(term) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let alg = if algebra_json.is_null() {
            None
        } else {
            match cstr_arg(algebra_json) {
                Ok(s) => Some(s),
                Err(st) => return st,
            }
        };
        let dalg = if dalgebra_json.is_null() {
            None
        } else {
            match cstr_arg(dalgebra_json) {
                Ok(s) => Some(s),
                Err(st) => return st,
            }
        };
        match pipeline::eval_term(&(*handle).inner, alg, dalg, term) {
            Ok(v) => {
                *out_value = v;
                SfStatus::Ok
            }
            Err(d) => {
                set_error(format!("{d}"));
                SfStatus::Diagnostic
            }
        }
    })
}

/// Enumerates the term algebra to the given depth as a newline-separated
/// owned string; free it with `sf_string_free`.
///
/// # Safety
/// `handle` must be live and `out_text` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_enumerate(
    handle: *const SfCompiled,
    max_depth: usize,
    out_text: *mut *mut c_char,
) -> SfStatus {
    guard(|| {
        if handle.is_null() || out_text.is_null() {
            set_error("null argument".into());
            return SfStatus::Usage;
        }
        match pipeline::enumerate(&(*handle).inner, max_depth) {
            Ok(terms) => owned_string_out(terms.join("\n"), out_text),
            Err(d) => {
                set_error(format!("{d}"));
                SfStatus::Diagnostic
            }
        }
    })
}
