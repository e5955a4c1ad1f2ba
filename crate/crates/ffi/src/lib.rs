//! C interface. Reports are opaque handles; strings returned through `out` pointers are owned
//! by the caller and released with `kostant_string_free`. Every entry point returns a status
//! code, and on failure `kostant_last_error` describes what went wrong on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kostant::cli::{build_datum, check_report, troots_json, DatumArgs};
use kostant::report::{paper_report, Report, Verdict};
use kostant::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KostantStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    CapExceeded = 5,
    Unsupported = 6,
    Internal = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KostantVerdict {
    ParabolicExists = 0,
    NoParabolicConeCertificate = 1,
    NoParabolicCycle = 2,
    InconclusiveAtDegreeD = 3,
}

impl From<Verdict> for KostantVerdict {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::ParabolicExists => KostantVerdict::ParabolicExists,
            Verdict::NoParabolicConeCertificate => KostantVerdict::NoParabolicConeCertificate,
            Verdict::NoParabolicCycle => KostantVerdict::NoParabolicCycle,
            Verdict::InconclusiveAtDegreeD => KostantVerdict::InconclusiveAtDegreeD,
        }
    }
}

/// Opaque report handle.
pub struct KostantReport {
    report: Report,
    json: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> KostantStatus {
    match e {
        Error::Parse(_) => KostantStatus::Parse,
        Error::InvalidType(_) | Error::InvalidDatum(_) | Error::NotARoot(_) | Error::NotATRoot(_) => {
            KostantStatus::InvalidInput
        }
        Error::CapExceeded { .. } => KostantStatus::CapExceeded,
        Error::Unsupported(_) => KostantStatus::Unsupported,
        Error::NotDominant(_) | Error::NotAModuleCharacter(_) | Error::Internal(_) => KostantStatus::Internal,
    }
}

struct Failure(KostantStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guarded(f: impl FnOnce() -> Result<(), Failure>) -> KostantStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => KostantStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            KostantStatus::Panic
        }
    }
}

/// Required string argument.
unsafe fn text(p: *const c_char, name: &str) -> Result<String, Failure> {
    if p.is_null() {
        return Err(Failure(KostantStatus::NullArgument, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map(str::to_owned)
        .map_err(|_| Failure(KostantStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

/// Optional string argument: null means absent.
unsafe fn opt_text(p: *const c_char, name: &str) -> Result<Option<String>, Failure> {
    if p.is_null() {
        Ok(None)
    } else {
        text(p, name).map(Some)
    }
}

unsafe fn datum_args(
    lie_type: *const c_char,
    rank: usize,
    parts: *const c_char,
    i0: *const c_char,
    signs: *const c_char,
) -> Result<DatumArgs, Failure> {
    Ok(DatumArgs {
        lie_type: text(lie_type, "lie_type")?,
        rank: (rank > 0).then_some(rank),
        parts: opt_text(parts, "parts")?.unwrap_or_default(),
        i0: opt_text(i0, "i0")?,
        signs: opt_text(signs, "signs")?,
    })
}

fn into_handle(report: Report, out: *mut *mut KostantReport) {
    let json = CString::new(report.to_json()).expect("JSON has no nul bytes");
    unsafe { *out = Box::into_raw(Box::new(KostantReport { report, json })) };
}

fn require_out<T>(out: *mut *mut T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(KostantStatus::NullArgument, "out is null".into()));
    }
    unsafe { *out = ptr::null_mut() };
    Ok(())
}

/// Decides whether `s` lies in a parabolic with the given reductive part.
///
/// `parts`, `i0` and `signs` use the command-line syntax and may be null. `rank` is ignored
/// for G2. A negative `max_degree` selects the default bound.
///
/// # Safety
/// String arguments must be null or nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kostant_check(
    lie_type: *const c_char,
    rank: usize,
    parts: *const c_char,
    i0: *const c_char,
    signs: *const c_char,
    s: *const c_char,
    max_degree: c_int,
    out: *mut *mut KostantReport,
) -> KostantStatus {
    guarded(|| {
        require_out(out)?;
        let args = datum_args(lie_type, rank, parts, i0, signs)?;
        let s = opt_text(s, "s")?.unwrap_or_default();
        let bound = usize::try_from(max_degree).ok();
        into_handle(check_report(&args, &s, bound)?, out);
        Ok(())
    })
}

/// One of the fixed examples: B, C, D-nonsat, G2-sat, G2-nonsat, F4, E6, E7, E8.
///
/// # Safety
/// `id` must be nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kostant_paper(id: *const c_char, out: *mut *mut KostantReport) -> KostantStatus {
    guarded(|| {
        require_out(out)?;
        into_handle(paper_report(&text(id, "id")?)?, out);
        Ok(())
    })
}

/// The t-roots of a classical datum as JSON; free the string with `kostant_string_free`.
///
/// # Safety
/// String arguments must be null or nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kostant_troots_json(
    lie_type: *const c_char,
    rank: usize,
    parts: *const c_char,
    i0: *const c_char,
    signs: *const c_char,
    out: *mut *mut c_char,
) -> KostantStatus {
    guarded(|| {
        require_out(out)?;
        let datum = build_datum(&datum_args(lie_type, rank, parts, i0, signs)?)?;
        *out = CString::new(troots_json(&datum)).expect("JSON has no nul bytes").into_raw();
        Ok(())
    })
}

/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn kostant_report_verdict(report: *const KostantReport) -> KostantVerdict {
    (*report).report.verdict.into()
}

/// Exit code the command-line tool would use for this report.
///
/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn kostant_report_exit_code(report: *const KostantReport) -> c_int {
    (*report).report.verdict.exit_code()
}

/// The report as JSON. The string belongs to the handle and dies with it.
///
/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn kostant_report_json(report: *const KostantReport) -> *const c_char {
    (*report).json.as_ptr()
}

/// First degree with a nonzero invariant, or -1 if there is none up to the bound.
///
/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn kostant_report_first_invariant_degree(report: *const KostantReport) -> c_int {
    (*report).report.invariants.first_nonzero().map_or(-1, |k| k as c_int)
}

/// # Safety
/// `report` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kostant_report_free(report: *mut KostantReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kostant_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn kostant_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version, static.
#[no_mangle]
pub extern "C" fn kostant_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
