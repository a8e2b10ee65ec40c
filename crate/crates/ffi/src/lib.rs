//! C interface to the check runner and the E8 Weyl group.
//!
//! Every function returns a [`G2dblStatus`] or a nullable pointer. On an
//! error the message is kept per thread and read with [`g2dbl_last_error`].
//! Strings handed out by this library are released with
//! [`g2dbl_string_free`], handles with their own `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;

use g2dbl::checks::{self, CheckError, Entry, RunConfig};
use g2dbl::report::{CheckReport, Status};
use g2dbl::weyl::{WeylGroup, WeylWord};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum G2dblStatus {
    /// Success; for runs, every check with a verdict passed.
    Ok = 0,
    /// A check failed.
    Fail = 1,
    /// Unknown check id, bad manifest or bad argument.
    Usage = 2,
    /// Arithmetic or internal error inside a check.
    Internal = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    Panic = 6,
}

/// Reports of one run.
pub struct G2dblReports {
    reports: Vec<CheckReport>,
}

/// The Weyl group of E8.
pub struct G2dblWeylGroup {
    group: WeylGroup,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', "")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn guard<F: FnOnce() -> G2dblStatus + UnwindSafe>(f: F) -> G2dblStatus {
    clear_error();
    match catch_unwind(f) {
        Ok(s) => s,
        Err(_) => {
            set_error("panic inside g2dbl");
            G2dblStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, G2dblStatus> {
    if s.is_null() {
        set_error("null pointer argument");
        return Err(G2dblStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        G2dblStatus::InvalidUtf8
    })
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', "")).expect("nul bytes removed").into_raw()
}

fn check_error(e: CheckError) -> G2dblStatus {
    set_error(e.to_string());
    match e.exit_code() {
        3 => G2dblStatus::Internal,
        _ => G2dblStatus::Usage,
    }
}

fn finish(entries: Vec<Entry>, degree: u32, jobs: u32, out: *mut *mut G2dblReports) -> G2dblStatus {
    let cfg = RunConfig { degree, jobs: jobs as usize };
    match checks::run(&entries, &cfg) {
        Ok(reports) => {
            let code = checks::exit_status(&reports);
            unsafe { *out = Box::into_raw(Box::new(G2dblReports { reports })) };
            if code == 0 {
                G2dblStatus::Ok
            } else {
                G2dblStatus::Fail
            }
        }
        Err(e) => check_error(e),
    }
}

/// Runs a JSON manifest `[{"id": ..., "params": {...}}]`. On `Ok` or `Fail`
/// `*out` receives a handle to free with [`g2dbl_reports_free`].
/// `jobs = 0` uses one worker per core.
///
/// # Safety
/// `manifest` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn g2dbl_run_manifest(
    manifest: *const c_char,
    degree: u32,
    jobs: u32,
    out: *mut *mut G2dblReports,
) -> G2dblStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return G2dblStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let text = match read_str(manifest) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match checks::parse_manifest(text) {
            Ok(entries) => finish(entries, degree, jobs, out),
            Err(e) => check_error(e),
        }
    })
}

/// Runs one check with default parameters.
///
/// # Safety
/// As for [`g2dbl_run_manifest`].
#[no_mangle]
pub unsafe extern "C" fn g2dbl_run_check(id: *const c_char, degree: u32, out: *mut *mut G2dblReports) -> G2dblStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return G2dblStatus::NullPointer;
        }
        *out = ptr::null_mut();
        match read_str(id) {
            Ok(id) => finish(vec![Entry::new(id)], degree, 1, out),
            Err(s) => s,
        }
    })
}

/// Number of reports; 0 for a null handle.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn g2dbl_reports_len(r: *const G2dblReports) -> usize {
    r.as_ref().map_or(0, |r| r.reports.len())
}

/// 0 pass, 1 fail, 2 report-only; -1 if out of range.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn g2dbl_reports_status(r: *const G2dblReports, i: usize) -> i32 {
    match r.as_ref().and_then(|r| r.reports.get(i)) {
        Some(rep) => match rep.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::ReportOnly => 2,
        },
        None => -1,
    }
}

/// The reports as a JSON array; null on a null handle.
///
/// # Safety
/// `r` must be null or a live handle. Free the result with [`g2dbl_string_free`].
#[no_mangle]
pub unsafe extern "C" fn g2dbl_reports_json(r: *const G2dblReports) -> *mut c_char {
    match r.as_ref() {
        Some(r) => match serde_json::to_string(&r.reports) {
            Ok(s) => to_c(s),
            Err(e) => {
                set_error(e.to_string());
                ptr::null_mut()
            }
        },
        None => {
            set_error("null handle");
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `r` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn g2dbl_reports_free(r: *mut G2dblReports) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Number of registered checks.
#[no_mangle]
pub extern "C" fn g2dbl_check_count() -> usize {
    checks::REGISTRY.len()
}

/// Id of the `i`-th registered check, or null. Free with [`g2dbl_string_free`].
#[no_mangle]
pub extern "C" fn g2dbl_check_id(i: usize) -> *mut c_char {
    checks::REGISTRY.get(i).map_or(ptr::null_mut(), |c| to_c(c.id.to_string()))
}

#[no_mangle]
pub extern "C" fn g2dbl_weyl_e8_new() -> *mut G2dblWeylGroup {
    match catch_unwind(WeylGroup::e8) {
        Ok(group) => Box::into_raw(Box::new(G2dblWeylGroup { group })),
        Err(_) => {
            set_error("panic inside g2dbl");
            ptr::null_mut()
        }
    }
}

/// Length of the element given by a word in the simple reflections, e.g.
/// `"345678243546576"`.
///
/// # Safety
/// `g` must be a live handle, `word` a NUL-terminated string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn g2dbl_weyl_length(
    g: *const G2dblWeylGroup,
    word: *const c_char,
    out: *mut usize,
) -> G2dblStatus {
    guard(|| {
        let Some(g) = g.as_ref() else {
            set_error("null handle");
            return G2dblStatus::NullPointer;
        };
        if out.is_null() {
            set_error("null output pointer");
            return G2dblStatus::NullPointer;
        }
        let w = match read_str(word) {
            Ok(w) => w,
            Err(s) => return s,
        };
        match WeylWord::parse(w).and_then(|w| g.group.evaluate(&w)) {
            Ok(e) => {
                *out = e.length();
                G2dblStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                G2dblStatus::Usage
            }
        }
    })
}

/// # Safety
/// `g` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn g2dbl_weyl_free(g: *mut G2dblWeylGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Copy of this thread's last error message, or null if the last call
/// succeeded. Free with [`g2dbl_string_free`].
#[no_mangle]
pub extern "C" fn g2dbl_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |s| s.clone().into_raw()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn g2dbl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn last_error() -> Option<String> {
        let p = g2dbl_last_error();
        if p.is_null() {
            return None;
        }
        let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
        unsafe { g2dbl_string_free(p) };
        Some(s)
    }

    #[test]
    fn null_arguments() {
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { g2dbl_run_check(ptr::null(), 10, &mut out) }, G2dblStatus::NullPointer);
        assert!(out.is_null());
        assert_eq!(last_error().as_deref(), Some("null pointer argument"));
        assert_eq!(unsafe { g2dbl_reports_len(ptr::null()) }, 0);
        assert_eq!(unsafe { g2dbl_reports_status(ptr::null(), 0) }, -1);
        unsafe { g2dbl_reports_free(ptr::null_mut()) };
        unsafe { g2dbl_string_free(ptr::null_mut()) };
    }

    #[test]
    fn unknown_id_is_usage() {
        let id = CString::new("weyl.nope").unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { g2dbl_run_check(id.as_ptr(), 10, &mut out) }, G2dblStatus::Usage);
        assert!(last_error().unwrap().contains("weyl.nope"));
    }

    #[test]
    fn registry_is_listed() {
        assert!(g2dbl_check_count() > 20);
        let p = g2dbl_check_id(0);
        assert_eq!(unsafe { CStr::from_ptr(p) }.to_str().unwrap(), checks::REGISTRY[0].id);
        unsafe { g2dbl_string_free(p) };
        assert!(g2dbl_check_id(10_000).is_null());
    }
}
