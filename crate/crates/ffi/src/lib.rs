//! C ABI over `qcanon`. Every function returns a [`QcStatus`]; results come
//! back through out-pointers. Handles are opaque and owned by the caller
//! once returned, strings are NUL-terminated UTF-8 and must be released
//! with [`qc_string_free`]. The message of the last failure on the calling
//! thread is available from [`qc_last_error`].

use qcanon::cartan::build_cartan;
use qcanon::cli::{self, Check, VerifyConfig};
use qcanon::pbw::Pbw;
use qcanon::Error;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QcStatus {
    Ok = 0,
    /// A verification ran and found counterexamples.
    VerificationFailed = 1,
    /// Bad type, word, check name or range.
    InvalidInput = 2,
    ResourceLimit = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    /// Any other library error.
    Internal = 6,
    Panic = 7,
}

/// A Cartan datum with its PBW and canonical-basis caches.
pub struct QcDatum {
    pbw: Pbw,
}

/// The outcome of a verification run.
pub struct QcReport {
    passed: bool,
    json: String,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> QcStatus {
    match cli::exit_code(e) {
        cli::EXIT_USAGE => QcStatus::InvalidInput,
        cli::EXIT_RESOURCE => QcStatus::ResourceLimit,
        _ => QcStatus::Internal,
    }
}

fn fail(e: Error) -> QcStatus {
    let s = status_of(&e);
    set_error(e.to_string());
    s
}

/// Runs `f`, turning panics into [`QcStatus::Panic`].
fn guard(f: impl FnOnce() -> QcStatus) -> QcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("panic inside qcanon".into());
            QcStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, QcStatus> {
    if p.is_null() {
        set_error("null string argument".into());
        return Err(QcStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not UTF-8".into());
        QcStatus::InvalidUtf8
    })
}

fn to_c(s: String) -> *mut c_char {
    // JSON and error messages never contain NUL
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Creates a datum for `A1`, `A1xA1`, `A2`, `A3`, `B2`, `D4` or `G2`.
///
/// # Safety
/// `tag` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qc_datum_new(tag: *const c_char, out: *mut *mut QcDatum) -> QcStatus {
    guard(|| {
        if out.is_null() {
            set_error("null out pointer".into());
            return QcStatus::NullPointer;
        }
        let tag = match read_str(tag) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match build_cartan(tag) {
            Ok(d) => {
                *out = Box::into_raw(Box::new(QcDatum { pbw: Pbw::new(d) }));
                QcStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `datum` must come from [`qc_datum_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qc_datum_free(datum: *mut QcDatum) {
    if !datum.is_null() {
        drop(Box::from_raw(datum));
    }
}

/// # Safety
/// `datum` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qc_datum_rank(datum: *const QcDatum, out: *mut usize) -> QcStatus {
    if datum.is_null() || out.is_null() {
        set_error("null pointer".into());
        return QcStatus::NullPointer;
    }
    *out = (*datum).pbw.datum().rank();
    QcStatus::Ok
}

/// Canonical basis elements of weight height at most `max_height` in the
/// PBW basis of `word` (comma-separated labels), as the JSON document of
/// `qcanon basis`.
///
/// # Safety
/// `datum` must be a live handle, `word` a NUL-terminated string and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qc_basis_json(
    datum: *mut QcDatum,
    word: *const c_char,
    max_height: i32,
    out: *mut *mut c_char,
) -> QcStatus {
    guard(|| {
        if datum.is_null() || out.is_null() {
            set_error("null pointer".into());
            return QcStatus::NullPointer;
        }
        let word = match read_str(word) {
            Ok(w) => w,
            Err(s) => return s,
        };
        match cli::basis_json(&mut (*datum).pbw, word, max_height) {
            Ok(doc) => {
                *out = to_c(doc.to_string());
                QcStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

fn parse_checks(s: &str) -> Result<Vec<Check>, QcStatus> {
    s.split(',').map(|t| t.parse::<Check>().map_err(fail)).collect()
}

/// Runs the comma-separated `checks` as `qcanon verify` would. `tag` may be
/// null for the default types; `max_height < 0` and `grid == 0` select the
/// defaults. Returns [`QcStatus::Ok`] whenever a report was produced, also
/// when it records failures; see [`qc_report_passed`].
///
/// # Safety
/// `checks` must be a NUL-terminated string, `tag` null or one, and `out`
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qc_verify(
    checks: *const c_char,
    tag: *const c_char,
    max_height: i32,
    grid: u32,
    seed: u64,
    out: *mut *mut QcReport,
) -> QcStatus {
    guard(|| {
        if out.is_null() {
            set_error("null out pointer".into());
            return QcStatus::NullPointer;
        }
        let checks = match read_str(checks).and_then(parse_checks) {
            Ok(c) => c,
            Err(s) => return s,
        };
        let tag = if tag.is_null() {
            None
        } else {
            match read_str(tag) {
                Ok(t) => Some(t.to_string()),
                Err(s) => return s,
            }
        };
        let cfg = VerifyConfig {
            checks,
            tag,
            max_height: (max_height >= 0).then_some(max_height),
            grid: (grid > 0).then_some(grid),
            seed,
        };
        let jobs = match cli::plan(&cfg) {
            Ok(j) => j,
            Err(e) => return fail(e),
        };
        let results = cli::run_jobs(&jobs, 1);
        let (report, code) = cli::verify_report(&jobs, results);
        if code == cli::EXIT_RESOURCE {
            set_error("resource limit exceeded".into());
            return QcStatus::ResourceLimit;
        }
        *out = Box::into_raw(Box::new(QcReport { passed: code == cli::EXIT_PASS, json: report.to_string() }));
        QcStatus::Ok
    })
}

/// [`QcStatus::Ok`] if every check passed, else
/// [`QcStatus::VerificationFailed`].
///
/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn qc_report_passed(report: *const QcReport) -> QcStatus {
    if report.is_null() {
        return QcStatus::NullPointer;
    }
    if (*report).passed {
        QcStatus::Ok
    } else {
        QcStatus::VerificationFailed
    }
}

/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qc_report_json(report: *const QcReport, out: *mut *mut c_char) -> QcStatus {
    if report.is_null() || out.is_null() {
        set_error("null pointer".into());
        return QcStatus::NullPointer;
    }
    *out = to_c((*report).json.clone());
    QcStatus::Ok
}

/// # Safety
/// `report` must come from [`qc_verify`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qc_report_free(report: *mut QcReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// The B2 label map from `(1,2,1,2)` to `(2,1,2,1)`, or its inverse.
///
/// # Safety
/// `input` and `output` must point to four `int64_t` each.
#[no_mangle]
pub unsafe extern "C" fn qc_phi_b2(input: *const i64, inverse: bool, output: *mut i64) -> QcStatus {
    if input.is_null() || output.is_null() {
        set_error("null pointer".into());
        return QcStatus::NullPointer;
    }
    let x: [i64; 4] = std::slice::from_raw_parts(input, 4).try_into().unwrap();
    let y = if inverse { qcanon::tropical::phi_b2_inv(x) } else { qcanon::tropical::phi_b2(x) };
    std::slice::from_raw_parts_mut(output, 4).copy_from_slice(&y);
    QcStatus::Ok
}

/// Copy of the last error message on this thread, empty if none.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qc_last_error(out: *mut *mut c_char) -> QcStatus {
    if out.is_null() {
        return QcStatus::NullPointer;
    }
    *out = to_c(LAST_ERROR.with(|e| e.borrow().clone()));
    QcStatus::Ok
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
