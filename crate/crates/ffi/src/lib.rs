//! C ABI for building and verifying graph covers.
//!
//! Graphs and covers are opaque handles owned by the caller and released
//! with the matching `_free` function. Every fallible call returns an
//! [`AsdimStatus`]; on failure `asdim_last_error` describes the cause on the
//! calling thread. Strings handed out by the library are released with
//! `asdim_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use asdim::covers::{cactus_cover, coarse_cactus_cover, planar_cover, Cover};
use asdim::verify::{verify_cover_with, Bounds};
use asdim::{Graph, Subspace};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AsdimStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    Panic = 4,
}

/// A graph loaded from JSON.
pub struct AsdimGraph {
    inner: Graph,
}

/// A cover of some graph.
pub struct AsdimCover {
    inner: Cover,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), (AsdimStatus, String)>) -> AsdimStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AsdimStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".to_string());
            AsdimStatus::Panic
        }
    }
}

fn input(e: asdim::Error) -> (AsdimStatus, String) {
    (AsdimStatus::InvalidInput, e.to_string())
}

fn null(what: &str) -> (AsdimStatus, String) {
    (AsdimStatus::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (AsdimStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, (AsdimStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (AsdimStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), (AsdimStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), (AsdimStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = CString::new(s).expect("JSON has no nul bytes").into_raw();
    Ok(())
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn asdim_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses graph JSON `{"n":..,"edges":[[u,v],..],"weights":[..]?}`.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn asdim_graph_from_json(
    json: *const c_char,
    out: *mut *mut AsdimGraph,
) -> AsdimStatus {
    guard(|| {
        let g = Graph::from_json_str(text(json, "json")?).map_err(input)?;
        put(out, AsdimGraph { inner: g })
    })
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn asdim_graph_vertex_count(graph: *const AsdimGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.inner.vertex_count())
}

/// # Safety
/// `graph` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn asdim_graph_free(graph: *mut AsdimGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Cactus cover at scale `m` around `base`.
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn asdim_cactus_cover(
    graph: *const AsdimGraph,
    base: u32,
    m: f64,
    out: *mut *mut AsdimCover,
) -> AsdimStatus {
    guard(|| {
        let g = deref(graph, "graph")?;
        let c = cactus_cover(&g.inner, base, m).map_err(input)?;
        put(out, AsdimCover { inner: c })
    })
}

/// Coarse-cactus cover at scale `m` with fatness parameter `big_m`.
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn asdim_coarse_cactus_cover(
    graph: *const AsdimGraph,
    base: u32,
    m: f64,
    big_m: f64,
    out: *mut *mut AsdimCover,
) -> AsdimStatus {
    guard(|| {
        let g = deref(graph, "graph")?;
        let c = coarse_cactus_cover(&Subspace::whole(&g.inner), base, m, big_m).map_err(input)?;
        put(out, AsdimCover { inner: c })
    })
}

/// Planar-pipeline cover for ball radius `rho`.
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn asdim_planar_cover(
    graph: *const AsdimGraph,
    base: u32,
    rho: f64,
    out: *mut *mut AsdimCover,
) -> AsdimStatus {
    guard(|| {
        let g = deref(graph, "graph")?;
        let c = planar_cover(&g.inner, base, rho).map_err(input)?;
        put(out, AsdimCover { inner: c })
    })
}

/// Parses cover JSON as written by `asdim_cover_to_json`.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn asdim_cover_from_json(
    json: *const c_char,
    out: *mut *mut AsdimCover,
) -> AsdimStatus {
    guard(|| {
        let c = Cover::from_json_str(text(json, "json")?).map_err(input)?;
        put(out, AsdimCover { inner: c })
    })
}

/// Number of sets, or 0 for a null handle.
///
/// # Safety
/// `cover` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn asdim_cover_len(cover: *const AsdimCover) -> usize {
    cover.as_ref().map_or(0, |c| c.inner.len())
}

/// Writes the cover's JSON to `*out`; release it with `asdim_string_free`.
///
/// # Safety
/// `cover` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn asdim_cover_to_json(
    cover: *const AsdimCover,
    out: *mut *mut c_char,
) -> AsdimStatus {
    guard(|| {
        let c = deref(cover, "cover")?;
        put_string(out, c.inner.to_json_string())
    })
}

/// # Safety
/// `cover` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn asdim_cover_free(cover: *mut AsdimCover) {
    if !cover.is_null() {
        drop(Box::from_raw(cover));
    }
}

/// Verifies `cover` on `graph` exactly. A negative bound means "use the
/// bound recorded in the cover". Sets `*passed` to 1 or 0 and, if
/// `report_json` is not null, stores the full report there.
///
/// # Safety
/// Handles must be live; `passed` must be writable; `report_json` may be null.
#[no_mangle]
pub unsafe extern "C" fn asdim_verify_cover(
    graph: *const AsdimGraph,
    cover: *const AsdimCover,
    diameter_bound: f64,
    radius: f64,
    multiplicity_bound: i64,
    passed: *mut i32,
    report_json: *mut *mut c_char,
) -> AsdimStatus {
    guard(|| {
        let g = deref(graph, "graph")?;
        let c = deref(cover, "cover")?;
        if passed.is_null() {
            return Err(null("passed"));
        }
        let recorded = Bounds::from_params(&c.inner);
        let pick = |given: f64, field: fn(&Bounds) -> f64| -> Result<f64, (AsdimStatus, String)> {
            if given >= 0.0 {
                Ok(given)
            } else {
                recorded
                    .as_ref()
                    .map(field)
                    .map_err(|e| (AsdimStatus::InvalidInput, e.to_string()))
            }
        };
        let bounds = Bounds {
            diameter: pick(diameter_bound, |b| b.diameter)?,
            radius: pick(radius, |b| b.radius)?,
            multiplicity: pick(multiplicity_bound as f64, |b| b.multiplicity as f64)? as usize,
            per_annulus: recorded.as_ref().ok().and_then(|b| b.per_annulus),
        };
        let report = verify_cover_with(&Subspace::whole(&g.inner), &c.inner, &bounds);
        *passed = report.passed as i32;
        if !report_json.is_null() {
            let s = serde_json::to_string(&report).expect("report serialization cannot fail");
            put_string(report_json, s)?;
        }
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn asdim_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
