//! C ABI over artin-comm.
//!
//! Every fallible call returns an [`ArtinStatus`]; on anything but
//! `ARTIN_STATUS_OK` the message is available from [`artin_last_error`] on the
//! same thread. Strings returned by the library are owned by the caller and
//! released with [`artin_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use artin_comm::catalog::GraphSpec;
use artin_comm::classify::classify;
use artin_comm::garside::{decide_equal, EngineRegistry};
use artin_comm::homsearch::{solve_classes, SearchQuery};
use artin_comm::verify::{run_verify, LemmaId, Options, Report};
use artin_comm::{CatalogEntry, CoxeterType, Error, Word};

#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArtinStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidParameter = 4,
    NotSpherical = 5,
    BoundExceeded = 6,
    ResourceBound = 7,
    CorruptCache = 8,
    Io = 9,
    Internal = 10,
}

impl From<&Error> for ArtinStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse(_) => ArtinStatus::Parse,
            Error::NotSpherical(_) => ArtinStatus::NotSpherical,
            Error::BoundExceeded { .. } => ArtinStatus::BoundExceeded,
            Error::ResourceBound(_) => ArtinStatus::ResourceBound,
            Error::CorruptCache(_) => ArtinStatus::CorruptCache,
            Error::Io(_) => ArtinStatus::Io,
            Error::DegreeMismatch(..)
            | Error::DegreeTooLarge(_)
            | Error::InvalidParameter(_)
            | Error::MissingAssignment(_)
            | Error::CaseViolated(_) => ArtinStatus::InvalidParameter,
        }
    }
}

/// Opaque verification report.
pub struct ArtinReport {
    inner: Report,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: ArtinStatus, msg: impl Into<String>) -> ArtinStatus {
    set_error(msg);
    status
}

fn from_err(e: Error) -> ArtinStatus {
    fail((&e).into(), e.to_string())
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, ArtinStatus> {
    if p.is_null() {
        return Err(fail(ArtinStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(ArtinStatus::InvalidUtf8, "argument is not UTF-8"))
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Runs `f`, turning panics into `ARTIN_STATUS_INTERNAL`.
fn guard(f: impl FnOnce() -> Result<(), ArtinStatus>) -> ArtinStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ArtinStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(ArtinStatus::Internal, "internal panic"),
    }
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn artin_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn artin_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn artin_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// |W| of a catalog type such as `"F4"` or `"I2(7)"`.
///
/// # Safety
/// `ty` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn artin_catalog_order(ty: *const c_char, out: *mut u64) -> ArtinStatus {
    guard(|| {
        let ty: CoxeterType = read_str(ty)?.parse().map_err(from_err)?;
        if out.is_null() {
            return Err(fail(ArtinStatus::NullPointer, "null output"));
        }
        *out = CatalogEntry::new(ty).w_order;
        Ok(())
    })
}

/// Commensurability verdict for two graph specs as a JSON string.
///
/// # Safety
/// `left` and `right` must be NUL-terminated; `out` writable. The result is
/// freed with [`artin_string_free`].
#[no_mangle]
pub unsafe extern "C" fn artin_classify(
    left: *const c_char,
    right: *const c_char,
    out: *mut *mut c_char,
) -> ArtinStatus {
    guard(|| {
        let l = GraphSpec::parse(read_str(left)?).map_err(from_err)?;
        let r = GraphSpec::parse(read_str(right)?).map_err(from_err)?;
        if out.is_null() {
            return Err(fail(ArtinStatus::NullPointer, "null output"));
        }
        let v = classify(&l, &r);
        let json =
            serde_json::to_string(&v).map_err(|e| fail(ArtinStatus::Internal, e.to_string()))?;
        *out = to_c(json);
        Ok(())
    })
}

/// Whether two words are equal in A[Γ] for a graph spec such as `"F4"`.
/// `DELTA` in a word stands for the Garside element of the whole graph.
///
/// # Safety
/// String arguments must be NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn artin_words_equal(
    graph: *const c_char,
    w1: *const c_char,
    w2: *const c_char,
    out: *mut bool,
) -> ArtinStatus {
    guard(|| {
        let g = GraphSpec::parse(read_str(graph)?)
            .map_err(from_err)?
            .graph();
        let comps = g.component_words().map_err(from_err)?;
        let big = Word::concat(&comps.iter().map(|c| &c.1).collect::<Vec<_>>());
        let parse = |t: &str| Word::parse_with(t, |a| (a == "DELTA").then(|| big.clone()));
        let a = parse(read_str(w1)?).map_err(from_err)?;
        let b = parse(read_str(w2)?).map_err(from_err)?;
        if out.is_null() {
            return Err(fail(ArtinStatus::NullPointer, "null output"));
        }
        *out = decide_equal(&a, &b, &g, EngineRegistry::global())
            .map_err(from_err)?
            .holds;
        Ok(())
    })
}

/// Counts homomorphisms A[Γ] → S_degree (optionally through the central
/// quotient, optionally non-cyclic only) and their conjugacy classes.
///
/// # Safety
/// `ty` must be NUL-terminated; `total` and `classes` writable.
#[no_mangle]
pub unsafe extern "C" fn artin_count_homs(
    ty: *const c_char,
    degree: usize,
    mod_center: bool,
    non_cyclic: bool,
    total: *mut u64,
    classes: *mut u64,
) -> ArtinStatus {
    guard(|| {
        let ty: CoxeterType = read_str(ty)?.parse().map_err(from_err)?;
        if total.is_null() || classes.is_null() {
            return Err(fail(ArtinStatus::NullPointer, "null output"));
        }
        let q = SearchQuery::for_entry(&CatalogEntry::new(ty), degree, mod_center)
            .non_cyclic(non_cyclic);
        let res = solve_classes(&q).map_err(from_err)?;
        *total = res.total;
        *classes = res.classes.len() as u64;
        Ok(())
    })
}

/// Runs a lemma driver such as `"d4"` or `"dn(6)"`. With `reproducible`
/// the runtime and cache fields are zeroed.
///
/// # Safety
/// `lemma` must be NUL-terminated; `out` writable. The report is released
/// with [`artin_report_free`].
#[no_mangle]
pub unsafe extern "C" fn artin_verify(
    lemma: *const c_char,
    reproducible: bool,
    out: *mut *mut ArtinReport,
) -> ArtinStatus {
    guard(|| {
        let id: LemmaId = read_str(lemma)?.parse().map_err(from_err)?;
        if out.is_null() {
            return Err(fail(ArtinStatus::NullPointer, "null output"));
        }
        let opts = Options {
            reproducible,
            ..Options::default()
        };
        let report = run_verify(id, &opts).map_err(from_err)?;
        *out = Box::into_raw(Box::new(ArtinReport { inner: report }));
        Ok(())
    })
}

/// # Safety
/// `report` must be NULL or a live handle from [`artin_verify`].
#[no_mangle]
pub unsafe extern "C" fn artin_report_passed(report: *const ArtinReport) -> bool {
    report.as_ref().is_some_and(|r| r.inner.passed())
}

/// Number of checks in the report, 0 for NULL.
///
/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn artin_report_check_count(report: *const ArtinReport) -> usize {
    report.as_ref().map_or(0, |r| r.inner.checks.len())
}

/// The report as JSON, or NULL for a NULL handle.
///
/// # Safety
/// `report` must be NULL or a live handle. Free the result with
/// [`artin_string_free`].
#[no_mangle]
pub unsafe extern "C" fn artin_report_json(report: *const ArtinReport) -> *mut c_char {
    report
        .as_ref()
        .map_or(ptr::null_mut(), |r| to_c(r.inner.to_json()))
}

/// # Safety
/// `report` must be NULL or a handle from [`artin_verify`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn artin_report_free(report: *mut ArtinReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}
