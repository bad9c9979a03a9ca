//! C ABI for `qpcollapse`.
//!
//! Polygons cross the boundary as opaque `QpPolygon` handles created from the
//! JSON interchange format and released with [`qp_polygon_free`]. Every
//! fallible call returns a [`QpStatus`]; on failure a description is available
//! from [`qp_last_error`] on the same thread. Strings handed out by the
//! library are released with [`qp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qpcollapse::collapse::analyze;
use qpcollapse::ehrhart::{quasi_period, quasi_polynomial, PointCounter};
use qpcollapse::error::Error;
use qpcollapse::fano::{validate_fano, FanoPolygon};
use qpcollapse::format::{parse_polygon, to_json};
use qpcollapse::markov::{verify_markov, MarkovTriple};
use qpcollapse::mutation::{mutate, MutationData};

/// Result codes of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Bad JSON, bad rational strings or a degenerate vertex list.
    Malformed = 3,
    /// Well-formed polygon that is not Fano.
    NotFano = 4,
    /// Mutation data rejected or not a factor.
    InvalidMutation = 5,
    /// Not a Markov triple.
    InvalidTriple = 6,
    /// An internal consistency check failed.
    Internal = 7,
    Panic = 8,
}

/// Opaque handle to a Fano polygon.
pub struct QpPolygon {
    inner: FanoPolygon,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl ToString) {
    let c = CString::new(msg.to_string().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(QpStatus, String);

impl Failure {
    fn internal(e: impl Into<Error>) -> Self {
        Failure(QpStatus::Internal, e.into().to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> QpStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QpStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside qpcollapse");
            QpStatus::Panic
        }
    }
}

unsafe fn polygon_ref<'a>(p: *const QpPolygon) -> Result<&'a FanoPolygon, Failure> {
    p.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| Failure(QpStatus::NullPointer, "null polygon handle".into()))
}

unsafe fn out_ptr<'a, T>(out: *mut T) -> Result<&'a mut T, Failure> {
    out.as_mut()
        .ok_or_else(|| Failure(QpStatus::NullPointer, "null output pointer".into()))
}

fn new_handle(p: FanoPolygon) -> *mut QpPolygon {
    Box::into_raw(Box::new(QpPolygon { inner: p }))
}

fn new_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON output has no nul bytes").into_raw()
}

/// Parses `{"vertices": [["p/q","r/s"], ...]}` and validates it as Fano.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn qp_polygon_from_json(json: *const c_char, out: *mut *mut QpPolygon) -> QpStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        if json.is_null() {
            return Err(Failure(QpStatus::NullPointer, "null json string".into()));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Failure(QpStatus::InvalidUtf8, e.to_string()))?;
        let polygon = parse_polygon(text).map_err(|e| Failure(QpStatus::Malformed, e.to_string()))?;
        let fano = validate_fano(polygon).map_err(|e| Failure(QpStatus::NotFano, e.to_string()))?;
        *out = new_handle(fano);
        Ok(())
    })
}

/// Builds a Fano polygon from `n` integer vertices `xy[2i], xy[2i+1]` given
/// in cyclic order.
///
/// # Safety
/// `xy` must point to `2 n` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qp_polygon_from_vertices(xy: *const i64, n: usize, out: *mut *mut QpPolygon) -> QpStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        if xy.is_null() {
            return Err(Failure(QpStatus::NullPointer, "null vertex array".into()));
        }
        let flat = std::slice::from_raw_parts(xy, 2 * n);
        let vertices: Vec<[i64; 2]> = flat.chunks_exact(2).map(|c| [c[0], c[1]]).collect();
        let polygon = qpcollapse::geometry::Polygon::from_ints(&vertices)
            .map_err(|e| Failure(QpStatus::Malformed, e.to_string()))?;
        let fano = validate_fano(polygon).map_err(|e| Failure(QpStatus::NotFano, e.to_string()))?;
        *out = new_handle(fano);
        Ok(())
    })
}

/// # Safety
/// `p` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qp_polygon_free(p: *mut QpPolygon) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn qp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qp_polygon_to_json(p: *const QpPolygon, out: *mut *mut c_char) -> QpStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = new_string(to_json(polygon_ref(p)?));
        Ok(())
    })
}

/// The dual polygon in the JSON interchange format.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qp_polygon_dual_json(p: *const QpPolygon, out: *mut *mut c_char) -> QpStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = new_string(to_json(&polygon_ref(p)?.dual()));
        Ok(())
    })
}

/// Denominator of the dual polygon.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qp_dual_denominator(p: *const QpPolygon, out: *mut u64) -> QpStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = polygon_ref(p)?.dual().denominator();
        Ok(())
    })
}

/// Number of lattice points in `k` times the dual polygon.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qp_dual_count_points(p: *const QpPolygon, k: u64, out: *mut u64) -> QpStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = PointCounter::new(&polygon_ref(p)?.dual()).count(k);
        Ok(())
    })
}

/// Minimal period of the Ehrhart quasi-polynomial of the dual.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qp_dual_quasi_period(p: *const QpPolygon, out: *mut u64) -> QpStatus {
    guard(|| {
        let out = out_ptr(out)?;
        let qp = quasi_polynomial(&polygon_ref(p)?.dual()).map_err(Failure::internal)?;
        *out = quasi_period(&qp);
        Ok(())
    })
}

/// A new handle holding the `GL_2(Z)` normal form.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qp_polygon_normal_form(p: *const QpPolygon, out: *mut *mut QpPolygon) -> QpStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        *out = new_handle(polygon_ref(p)?.normal_form());
        Ok(())
    })
}

/// Mutation with covector `(w0, w1)` and factor `conv{0, m (f0, f1)}`. The
/// result is the exact hull; `normal_form` selects the normal form instead.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qp_polygon_mutate(
    p: *const QpPolygon,
    w0: i64,
    w1: i64,
    f0: i64,
    f1: i64,
    m: u64,
    normal_form: bool,
    out: *mut *mut QpPolygon,
) -> QpStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        let polygon = polygon_ref(p)?;
        let bad = |e: qpcollapse::error::MutationError| Failure(QpStatus::InvalidMutation, e.to_string());
        let data = MutationData::new([w0, w1], [f0, f1], m).map_err(bad)?;
        let mutant = mutate(polygon, &data).map_err(bad)?;
        *out = new_handle(if normal_form { mutant.normal_form() } else { mutant });
        Ok(())
    })
}

/// Full collapse analysis as JSON.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qp_analyze_json(p: *const QpPolygon, out: *mut *mut c_char) -> QpStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        let analysis = analyze(polygon_ref(p)?).map_err(Failure::internal)?;
        *out = new_string(to_json(&analysis));
        Ok(())
    })
}

/// Report for the Markov triple `(a, b, c)` as JSON.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qp_markov_report_json(a: u64, b: u64, c: u64, out: *mut *mut c_char) -> QpStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        let t = MarkovTriple::new(a, b, c).map_err(|e| Failure(QpStatus::InvalidTriple, e.to_string()))?;
        let report = verify_markov(&t).map_err(Failure::internal)?;
        *out = new_string(to_json(&report));
        Ok(())
    })
}
