//! C ABI over matroidlab.
//!
//! Matroids live behind an opaque `MlMatroid` handle. Every function returns
//! an `MlStatus`; on failure the message is available from
//! `ml_last_error` until the next call on the same thread. Strings handed
//! out by the library must be released with `ml_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use matroidlab::cli::parse_matroid;
use matroidlab::complex::f_h_vectors;
use matroidlab::constructions::{named_by_str, phi_matroid, theta_matroid};
use matroidlab::linalg::FieldTag;
use matroidlab::matroid::io::to_json;
use matroidlab::matroid::Matroid;
use matroidlab::nbc::{nbc_check, search_orderings, CheckOptions, Policy, SearchOptions, Shard};
use matroidlab::ordering::{Ordering, StandardOrdering, StandardOrderings};
use matroidlab::Error;

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    BadParams = 4,
    UnknownLabel = 5,
    NotStandard = 6,
    NotRegular = 7,
    NotArtinian = 8,
    Overbudget = 9,
    UnknownName = 10,
    Io = 11,
    Panic = 12,
    Other = 13,
}

/// A matroid together with the ordering it was generated with, if any.
pub struct MlMatroid {
    matroid: Matroid,
    ordering: Option<Vec<String>>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> MlStatus {
    match e {
        Error::Parse(_) => MlStatus::Parse,
        Error::UnknownLabel(_) | Error::DuplicateLabels(_) => MlStatus::UnknownLabel,
        Error::NotStandard(_) | Error::NotABasis(_) => MlStatus::NotStandard,
        Error::NotRegular(_) => MlStatus::NotRegular,
        Error::NotArtinian(_) | Error::InfiniteLowerIdeal(_) => MlStatus::NotArtinian,
        Error::Overbudget(_) | Error::TooLarge(_) => MlStatus::Overbudget,
        Error::UnknownName(_) => MlStatus::UnknownName,
        Error::Io(_) => MlStatus::Io,
        Error::BadParams(_) | Error::BadSize { .. } | Error::BadRank { .. } | Error::NotPrime(_) => MlStatus::BadParams,
        _ => MlStatus::Other,
    }
}

enum Fail {
    Status(MlStatus, String),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

impl From<serde_json::Error> for Fail {
    fn from(e: serde_json::Error) -> Self {
        Fail::Lib(Error::from(e))
    }
}

type FfiResult = Result<(), Fail>;

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> FfiResult) -> MlStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MlStatus::Ok,
        Ok(Err(Fail::Status(s, msg))) => {
            set_error(msg);
            s
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            MlStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail::Status(MlStatus::NullPointer, format!("{what} is null"))
}

/// # Safety
/// `p` must be null or a valid NUL-terminated string.
unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::Status(MlStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// # Safety
/// `p` must be null or a valid NUL-terminated string.
unsafe fn opt_str_arg<'a>(p: *const c_char, what: &str) -> Result<Option<&'a str>, Fail> {
    if p.is_null() {
        Ok(None)
    } else {
        str_arg(p, what).map(Some)
    }
}

/// # Safety
/// `out` must be null or valid for a pointer write.
unsafe fn put_string(out: *mut *mut c_char, s: String) -> FfiResult {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|_| Fail::Status(MlStatus::Other, "interior NUL in output".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// # Safety
/// `out` must be null or valid for a pointer write.
unsafe fn put_handle(out: *mut *mut MlMatroid, m: Matroid, ordering: Option<Vec<String>>) -> FfiResult {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(MlMatroid { matroid: m, ordering }));
    Ok(())
}

/// # Safety
/// `h` must be null or a handle returned by this library and not yet freed.
unsafe fn handle<'a>(h: *const MlMatroid) -> Result<&'a MlMatroid, Fail> {
    h.as_ref().ok_or_else(|| null("matroid"))
}

fn labels_of(m: &Matroid, so: &StandardOrdering) -> Vec<String> {
    so.ordering().labels(m).into_iter().map(String::from).collect()
}

fn standard(h: &MlMatroid, ordering: Option<&str>) -> Result<StandardOrdering, Fail> {
    let m = &h.matroid;
    Ok(match (ordering, &h.ordering) {
        (Some(s), _) => StandardOrdering::new(m, Ordering::parse(m, s)?)?,
        (None, Some(l)) => StandardOrdering::from_labels(m, l)?,
        (None, None) => StandardOrderings::new(m)?.decode(0)?,
    })
}

/// Message of the last failed call on this thread, or null. Valid until
/// the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn ml_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn ml_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Releases a matroid handle. Null is ignored.
///
/// # Safety
/// `m` must be null or a handle returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn ml_matroid_free(m: *mut MlMatroid) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Parses a matroid from JSON, matrix text or an edge list.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn ml_matroid_parse(text: *const c_char, out: *mut *mut MlMatroid) -> MlStatus {
    guard(|| {
        let (m, ord) = parse_matroid(str_arg(text, "text")?)?;
        put_handle(out, m, ord)
    })
}

/// A named fixture: R10, DualK33, K33 or K4.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn ml_matroid_named(name: *const c_char, out: *mut *mut MlMatroid) -> MlStatus {
    guard(|| {
        let (m, so) = named_by_str(str_arg(name, "name")?)?;
        let ord = so.map(|so| labels_of(&m, &so));
        put_handle(out, m, ord)
    })
}

/// Theta (`chain == 0`) or phi (`chain != 0`) matroid for component sizes
/// `sizes[0..len]`, carrying its labelling.
///
/// # Safety
/// `sizes` must point to `len` readable values and `out` be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn ml_matroid_parallel_circuits(
    sizes: *const usize,
    len: usize,
    chain: i32,
    out: *mut *mut MlMatroid,
) -> MlStatus {
    guard(|| {
        if sizes.is_null() && len > 0 {
            return Err(null("sizes"));
        }
        let s: &[usize] = if len == 0 { &[] } else { std::slice::from_raw_parts(sizes, len) };
        let (m, so) = if chain != 0 { phi_matroid(s)? } else { theta_matroid(s)? };
        let ord = Some(labels_of(&m, &so));
        put_handle(out, m, ord)
    })
}

/// Ground set size and rank.
///
/// # Safety
/// `m` must be a live handle; `n` and `rank` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn ml_matroid_size(m: *const MlMatroid, n: *mut usize, rank: *mut usize) -> MlStatus {
    guard(|| {
        let h = handle(m)?;
        if n.is_null() || rank.is_null() {
            return Err(null("out"));
        }
        *n = h.matroid.n();
        *rank = h.matroid.rank();
        Ok(())
    })
}

/// Number of bases.
///
/// # Safety
/// `m` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn ml_matroid_bases(m: *const MlMatroid, out: *mut u64) -> MlStatus {
    guard(|| {
        let h = handle(m)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = h.matroid.bases()?.len() as u64;
        Ok(())
    })
}

/// The matroid as JSON, with its ordering when it carries one.
///
/// # Safety
/// `m` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn ml_matroid_json(m: *const MlMatroid, out: *mut *mut c_char) -> MlStatus {
    guard(|| {
        let h = handle(m)?;
        put_string(out, to_json(&h.matroid, h.ordering.as_deref()))
    })
}

/// f- and h-vector JSON of the broken circuit complex. `ordering` is a
/// comma-separated label list, or null for the carried/identity ordering.
///
/// # Safety
/// `m` must be a live handle, `ordering` null or NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ml_hvector(m: *const MlMatroid, ordering: *const c_char, out: *mut *mut c_char) -> MlStatus {
    guard(|| {
        let h = handle(m)?;
        let mat = &h.matroid;
        let ord = match (opt_str_arg(ordering, "ordering")?, &h.ordering) {
            (Some(s), _) => Ordering::parse(mat, s)?,
            (None, Some(l)) => Ordering::from_labels(mat, l)?,
            (None, None) => Ordering::identity(mat.n()),
        };
        put_string(out, serde_json::to_string(&f_h_vectors(mat, &ord)?)?)
    })
}

/// Full NBC check. Writes 1 or 0 to `is_basis` and the JSON report to
/// `report` (either may be null). `field` is e.g. "gf2", "gf3" or "q".
///
/// # Safety
/// `m` must be a live handle; string arguments null or NUL-terminated;
/// non-null outputs valid for writing.
#[no_mangle]
pub unsafe extern "C" fn ml_nbc_check(
    m: *const MlMatroid,
    ordering: *const c_char,
    field: *const c_char,
    is_basis: *mut i32,
    report: *mut *mut c_char,
) -> MlStatus {
    guard(|| {
        let h = handle(m)?;
        let so = standard(h, opt_str_arg(ordering, "ordering")?)?;
        let field: FieldTag = opt_str_arg(field, "field")?.unwrap_or("gf2").parse()?;
        let r = nbc_check(&h.matroid, &so, field, &CheckOptions::default())?;
        if !is_basis.is_null() {
            *is_basis = i32::from(r.is_basis());
        }
        if !report.is_null() {
            put_string(report, serde_json::to_string(&r)?)?;
        }
        Ok(())
    })
}

/// Ordering search; `policy` is "exhaustive", "sample:N:SEED" or
/// "first-hit", `shard` is "i/m" or null. Writes the JSON report.
///
/// # Safety
/// `m` must be a live handle; strings null or NUL-terminated; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ml_search(
    m: *const MlMatroid,
    field: *const c_char,
    policy: *const c_char,
    shard: *const c_char,
    workers: usize,
    out: *mut *mut c_char,
) -> MlStatus {
    guard(|| {
        let h = handle(m)?;
        let field: FieldTag = opt_str_arg(field, "field")?.unwrap_or("gf2").parse()?;
        let policy: Policy = opt_str_arg(policy, "policy")?.unwrap_or("exhaustive").parse()?;
        let shard: Shard = match opt_str_arg(shard, "shard")? {
            Some(s) => s.parse()?,
            None => Shard::default(),
        };
        let opts = SearchOptions {
            workers: workers.max(1),
            shard,
            ..SearchOptions::default()
        };
        let r = search_orderings(&h.matroid, field, policy, &opts)?;
        put_string(out, serde_json::to_string(&r)?)
    })
}
