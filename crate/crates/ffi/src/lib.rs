//! C ABI over the `tmodl` command layer.
//!
//! Handles are opaque. Every function returns one of the `TL_*` codes; on failure the message
//! is available from `tl_last_error` until the next call on the same thread. Strings returned
//! through out-parameters are owned by the caller and released with `tl_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use tmod_lvalues::cli::{self, Format, Report, RunConfig, Status};
use tmod_lvalues::Error;

pub const TL_OK: i32 = 0;
/// The command ran and the identity it checks does not hold; the value is still produced.
pub const TL_IDENTITY_FAIL: i32 = 1;
pub const TL_CONFIG_ERROR: i32 = 2;
pub const TL_NULL_POINTER: i32 = 3;
pub const TL_INVALID_UTF8: i32 = 4;
pub const TL_COMPUTE_ERROR: i32 = 5;
pub const TL_PANIC: i32 = 6;

pub const TL_FORMAT_TEXT: i32 = 0;
pub const TL_FORMAT_JSONL: i32 = 1;

/// A validated run configuration.
pub struct TlConfig {
    cfg: RunConfig,
}

/// The report of one command.
pub struct TlValue {
    report: Report,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Fail(i32, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = if e.is_input_error() { TL_CONFIG_ERROR } else { TL_COMPUTE_ERROR };
        Fail(code, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<i32, Fail>) -> i32 {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(code)) => code,
        Ok(Err(Fail(code, msg))) => {
            set_error(&msg);
            code
        }
        Err(_) => {
            set_error("internal panic");
            TL_PANIC
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(TL_NULL_POINTER, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(TL_INVALID_UTF8, format!("{what} is not valid UTF-8")))
}

fn check_out<T>(p: *mut T, what: &str) -> Result<(), Fail> {
    if p.is_null() {
        Err(Fail(TL_NULL_POINTER, format!("{what} is null")))
    } else {
        Ok(())
    }
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

/// Parses a configuration text into a new handle.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tl_config_parse(text: *const c_char, out: *mut *mut TlConfig) -> i32 {
    guard(|| {
        check_out(out, "out")?;
        let text = read_str(text, "text")?;
        let cfg = cli::parse_config(text)?;
        *out = Box::into_raw(Box::new(TlConfig { cfg }));
        Ok(TL_OK)
    })
}

/// The default configuration: Carlitz over F_2, trivial extension, N = 4.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tl_config_default(out: *mut *mut TlConfig) -> i32 {
    guard(|| {
        check_out(out, "out")?;
        *out = Box::into_raw(Box::new(TlConfig { cfg: RunConfig::default() }));
        Ok(TL_OK)
    })
}

/// Sets the precision N.
///
/// # Safety
/// `cfg` must be a handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn tl_config_set_precision(cfg: *mut TlConfig, n: u32) -> i32 {
    guard(|| {
        let c = cfg.as_mut().ok_or_else(|| Fail(TL_NULL_POINTER, "cfg is null".into()))?;
        let ov = cli::Overrides { precision: Some(n as usize), ..Default::default() };
        c.cfg = cli::apply_overrides(c.cfg.clone(), &ov)?;
        Ok(TL_OK)
    })
}

/// The canonical text form of a configuration.
///
/// # Safety
/// `cfg` must be a handle from this library; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tl_config_serialize(cfg: *const TlConfig, out: *mut *mut c_char) -> i32 {
    guard(|| {
        check_out(out, "out")?;
        let c = cfg.as_ref().ok_or_else(|| Fail(TL_NULL_POINTER, "cfg is null".into()))?;
        *out = to_c(c.cfg.serialize());
        Ok(TL_OK)
    })
}

/// # Safety
/// `cfg` must be a handle from this library or null; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn tl_config_free(cfg: *mut TlConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// Runs a command (e.g. "theta0", "etnf-check"). On TL_OK and TL_IDENTITY_FAIL `*out` holds the report.
///
/// # Safety
/// `cfg` must be a handle from this library, `command` NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn tl_run(cfg: *const TlConfig, command: *const c_char, out: *mut *mut TlValue) -> i32 {
    guard(|| {
        check_out(out, "out")?;
        let c = cfg.as_ref().ok_or_else(|| Fail(TL_NULL_POINTER, "cfg is null".into()))?;
        let command = read_str(command, "command")?;
        let report = cli::run(command, &c.cfg)?;
        let code = if report.status == Status::Fail { TL_IDENTITY_FAIL } else { TL_OK };
        *out = Box::into_raw(Box::new(TlValue { report }));
        Ok(code)
    })
}

/// The primary value of a report (e.g. the Laurent series for theta0), or the empty string.
///
/// # Safety
/// `v` must be a handle from this library; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tl_value_primary(v: *const TlValue, out: *mut *mut c_char) -> i32 {
    guard(|| {
        check_out(out, "out")?;
        let v = v.as_ref().ok_or_else(|| Fail(TL_NULL_POINTER, "value is null".into()))?;
        *out = to_c(v.report.value.clone().unwrap_or_default());
        Ok(TL_OK)
    })
}

/// The full report rendered as TL_FORMAT_TEXT or TL_FORMAT_JSONL.
///
/// # Safety
/// `v` must be a handle from this library; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tl_value_render(v: *const TlValue, format: i32, out: *mut *mut c_char) -> i32 {
    guard(|| {
        check_out(out, "out")?;
        let v = v.as_ref().ok_or_else(|| Fail(TL_NULL_POINTER, "value is null".into()))?;
        let f = match format {
            TL_FORMAT_TEXT => Format::Text,
            TL_FORMAT_JSONL => Format::Jsonl,
            other => return Err(Fail(TL_CONFIG_ERROR, format!("unknown format code {other}"))),
        };
        *out = to_c(v.report.render(f));
        Ok(TL_OK)
    })
}

/// # Safety
/// `v` must be a handle from this library or null; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn tl_value_free(v: *mut TlValue) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// # Safety
/// `s` must be a string returned by this library or null.
#[no_mangle]
pub unsafe extern "C" fn tl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The message of the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn tl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_handles_are_reported() {
        let mut v: *mut TlValue = std::ptr::null_mut();
        let code = unsafe { tl_run(std::ptr::null(), c"theta0".as_ptr(), &mut v) };
        assert_eq!(code, TL_NULL_POINTER);
        assert!(!tl_last_error().is_null());
    }
}
