//! C ABI over `halflat`. Every object crosses the boundary as an opaque
//! handle, every call returns an [`HlStatus`], and every returned string is
//! released with [`hl_string_free`].
//!
//! Elements and specs are exchanged as the same JSON documents the CLI reads.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use halflat::assoc::{is_a_module_spec, iso_decide, OmegaSpec};
use halflat::config::Config;
use halflat::fock::VElement;
use halflat::json::{parse_omega_spec, parse_velement, velement_to_json, zhu_to_json};
use halflat::lattice::LatticeConfig;
use halflat::suites::{run_verification, SuiteReport};
use halflat::vertex::nth_product;
use halflat::zhu::zhu_reduce;
use halflat::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HlStatus {
    Ok = 0,
    /// A null pointer or a string that is not UTF-8.
    InvalidArgument = 1,
    /// A JSON document violated its schema.
    ParseError = 2,
    InvalidConfig = 3,
    /// A mathematical precondition failed (pairing, rank, cutoff, …).
    Invariant = 4,
    UnknownSuite = 5,
    /// The computation panicked; this is a bug.
    Internal = 6,
}

pub struct HlContext {
    config: Config,
    lattice: LatticeConfig,
}

pub struct HlElement(VElement);

pub struct HlOmegaSpec(OmegaSpec);

pub struct HlReport(SuiteReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> HlStatus {
    match e {
        Error::Schema { .. } => HlStatus::ParseError,
        Error::InvalidConfig(_) => HlStatus::InvalidConfig,
        Error::UnknownSuite(_) => HlStatus::UnknownSuite,
        _ => HlStatus::Invariant,
    }
}

type Outcome<T> = Result<T, (HlStatus, String)>;

fn lift<T>(r: halflat::Result<T>) -> Outcome<T> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

/// Runs `f`, records any failure message, and converts panics to `Internal`.
fn guard(f: impl FnOnce() -> Outcome<()>) -> HlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HlStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            HlStatus::Internal
        }
    }
}

unsafe fn text<'a>(s: *const c_char) -> Outcome<&'a str> {
    if s.is_null() {
        return Err((HlStatus::InvalidArgument, "null string".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (HlStatus::InvalidArgument, "string is not UTF-8".into()))
}

unsafe fn handle<'a, T>(p: *const T) -> Outcome<&'a T> {
    p.as_ref().ok_or_else(|| (HlStatus::InvalidArgument, "null handle".into()))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Outcome<()> {
    if out.is_null() {
        return Err((HlStatus::InvalidArgument, "null output pointer".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Outcome<()> {
    if out.is_null() {
        return Err((HlStatus::InvalidArgument, "null output pointer".into()));
    }
    *out = CString::new(s).expect("JSON has no nul bytes").into_raw();
    Ok(())
}

fn json_doc(s: &str) -> Outcome<serde_json::Value> {
    serde_json::from_str(s).map_err(|e| (HlStatus::ParseError, format!("invalid JSON: {e}")))
}

/// The message of the last failed call on this thread, or null. Valid until
/// the next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn hl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn hl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates a context from a JSON config; `config_json` may be null for the defaults.
///
/// # Safety
/// `config_json` must be null or a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hl_context_new(config_json: *const c_char, out: *mut *mut HlContext) -> HlStatus {
    guard(|| {
        let config =
            if config_json.is_null() { Config::default() } else { lift(Config::from_json(text(config_json)?))? };
        lift(config.validate())?;
        let lattice = lift(config.lattice())?;
        put(out, HlContext { config, lattice })
    })
}

/// # Safety
/// `ctx` must be null or a handle from [`hl_context_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hl_context_free(ctx: *mut HlContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// # Safety
/// Pointers must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hl_element_parse(
    ctx: *const HlContext,
    json: *const c_char,
    out: *mut *mut HlElement,
) -> HlStatus {
    guard(|| {
        let ctx = handle(ctx)?;
        let doc = json_doc(text(json)?)?;
        put(out, HlElement(lift(parse_velement(&doc, &ctx.lattice))?))
    })
}

/// # Safety
/// `el` must be null or a live element handle.
#[no_mangle]
pub unsafe extern "C" fn hl_element_free(el: *mut HlElement) {
    if !el.is_null() {
        drop(Box::from_raw(el));
    }
}

/// # Safety
/// Pointers must be valid; free the result with [`hl_string_free`].
#[no_mangle]
pub unsafe extern "C" fn hl_element_to_json(el: *const HlElement, out: *mut *mut c_char) -> HlStatus {
    guard(|| put_string(out, velement_to_json(&handle(el)?.0).to_string()))
}

/// `u_n v`.
///
/// # Safety
/// Pointers must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hl_nth_product(
    ctx: *const HlContext,
    u: *const HlElement,
    n: i64,
    v: *const HlElement,
    out: *mut *mut HlElement,
) -> HlStatus {
    guard(|| {
        let ctx = handle(ctx)?;
        put(out, HlElement(nth_product(&ctx.lattice, &handle(u)?.0, n, &handle(v)?.0)))
    })
}

/// The Zhu normal form of `el` as JSON.
///
/// # Safety
/// Pointers must be valid; free the result with [`hl_string_free`].
#[no_mangle]
pub unsafe extern "C" fn hl_zhu_reduce(ctx: *const HlContext, el: *const HlElement, out: *mut *mut c_char) -> HlStatus {
    guard(|| {
        let ctx = handle(ctx)?;
        put_string(out, zhu_to_json(&zhu_reduce(&ctx.lattice, &handle(el)?.0)).to_string())
    })
}

/// # Safety
/// Pointers must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hl_omega_parse(
    ctx: *const HlContext,
    json: *const c_char,
    out: *mut *mut HlOmegaSpec,
) -> HlStatus {
    guard(|| {
        let ctx = handle(ctx)?;
        let doc = json_doc(text(json)?)?;
        put(out, HlOmegaSpec(lift(parse_omega_spec(&doc, ctx.lattice.nu))?))
    })
}

/// # Safety
/// `spec` must be null or a live spec handle.
#[no_mangle]
pub unsafe extern "C" fn hl_omega_free(spec: *mut HlOmegaSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// Writes whether `M_ω` is an `A`-module. On `false`, `(i, j)` is the
/// 0-based pair with `D_i f_j ≠ D_j f_i`; otherwise both are −1.
///
/// # Safety
/// Pointers must be valid and writable.
#[no_mangle]
pub unsafe extern "C" fn hl_omega_is_a_module(
    spec: *const HlOmegaSpec,
    is_a_module: *mut bool,
    i: *mut i64,
    j: *mut i64,
) -> HlStatus {
    guard(|| {
        let v = is_a_module_spec(&handle(spec)?.0);
        if is_a_module.is_null() || i.is_null() || j.is_null() {
            return Err((HlStatus::InvalidArgument, "null output pointer".into()));
        }
        let (a, b) = v.witness.map_or((-1, -1), |(a, b)| (a as i64, b as i64));
        (*is_a_module, *i, *j) = (v.is_a_module, a, b);
        Ok(())
    })
}

/// Decides `M_ω(s1) ≅ M_ω(s2)`; writes the shift vector as a JSON array,
/// or `null` when not isomorphic.
///
/// # Safety
/// Pointers must be valid; free the result with [`hl_string_free`].
#[no_mangle]
pub unsafe extern "C" fn hl_omega_iso(
    s1: *const HlOmegaSpec,
    s2: *const HlOmegaSpec,
    out: *mut *mut c_char,
) -> HlStatus {
    guard(|| {
        let iso = iso_decide(&handle(s1)?.0, &handle(s2)?.0);
        put_string(out, serde_json::to_string(&iso.map(|i| i.shifts)).expect("serializable"))
    })
}

/// Runs a verification suite. The report is produced even when checks fail.
///
/// # Safety
/// Pointers must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hl_verify(ctx: *const HlContext, suite: *const c_char, out: *mut *mut HlReport) -> HlStatus {
    guard(|| {
        let ctx = handle(ctx)?;
        put(out, HlReport(lift(run_verification(text(suite)?, &ctx.config))?))
    })
}

/// # Safety
/// `report` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn hl_report_passed(report: *const HlReport) -> bool {
    report.as_ref().is_some_and(|r| r.0.passed())
}

/// # Safety
/// Pointers must be valid; free the result with [`hl_string_free`].
#[no_mangle]
pub unsafe extern "C" fn hl_report_to_json(report: *const HlReport, out: *mut *mut c_char) -> HlStatus {
    guard(|| put_string(out, handle(report)?.0.to_json().to_string()))
}

/// # Safety
/// `report` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn hl_report_free(report: *mut HlReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}
