//! C ABI over the `xigraph` library.
//!
//! Graphs are returned as opaque [`XiGraph`] handles owned by the caller and
//! released with [`xi_graph_free`]. Strings returned by this library are
//! released with [`xi_string_free`]. Every fallible function returns an
//! [`XiStatus`]; on failure [`xi_last_error_message`] describes the error.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use xigraph::cli::{parse_group_json, ConjArg, GraphDocument};
use xigraph::families::{genus, predict, Curve};
use xigraph::groups::{Conjugation, DEFAULT_BUDGET};
use xigraph::modgraph::VertexKind;
use xigraph::modring::RingCtx;
use xigraph::xicore::build_xi;
use xigraph::Error;

/// Status codes. The nonzero values follow the command-line exit codes
/// where they overlap.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XiStatus {
    Ok = 0,
    InvalidArgument = 2,
    Budget = 3,
    Invariant = 4,
    NullPointer = 5,
    Internal = 6,
}

/// Use the family's usual conjugation.
pub const XI_CONJ_DEFAULT: i32 = -1;
/// `diag(1, -1)`.
pub const XI_CONJ_STD: i32 = 0;
/// `[[0, 1], [1, 0]]`.
pub const XI_CONJ_INV: i32 = 1;

/// A computed graph. Opaque to C.
pub struct XiGraph {
    doc: GraphDocument,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct XiCounts {
    pub components: u64,
    pub parabolic: u64,
    pub elliptic: u64,
    pub edges: u64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct XiPrediction {
    pub components: u64,
    pub cusps: u64,
    pub elliptic: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> XiStatus {
    match e {
        Error::InvalidInput(_) | Error::Precondition(_) | Error::Guard(_) => {
            XiStatus::InvalidArgument
        }
        Error::Budget { .. } => XiStatus::Budget,
        Error::Valence { .. } | Error::Invariant(_) => XiStatus::Invariant,
    }
}

enum Fail {
    Lib(Error),
    Null(&'static str),
    Arg(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Run `f`, recording any error or panic.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> XiStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            XiStatus::Ok
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("{what} is null"));
            XiStatus::NullPointer
        }
        Ok(Err(Fail::Arg(msg))) => {
            set_error(msg);
            XiStatus::InvalidArgument
        }
        Err(_) => {
            set_error("internal error (panic)".into());
            XiStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::Arg(format!("{what} is not UTF-8")))
}

fn curve(tag: &str) -> Result<Curve, Fail> {
    tag.parse::<Curve>().map_err(Fail::Lib)
}

fn conjugation(curve: Curve, n: u32, code: i32) -> Result<Conjugation, Fail> {
    match code {
        XI_CONJ_DEFAULT => Ok(curve.conjugation(n)),
        XI_CONJ_STD => Ok(Conjugation::std(n)),
        XI_CONJ_INV => Ok(Conjugation::inv(n)),
        other => Err(Fail::Arg(format!("unknown conjugation code {other}"))),
    }
}

fn emit(out: *mut *mut XiGraph, doc: GraphDocument) {
    unsafe { *out = Box::into_raw(Box::new(XiGraph { doc })) };
}

/// Compute the graph for a named family (`full`, `gamma`, `gamma-minus`,
/// `gamma1`, `gamma0`, `split`) at `level`. `conjugation` is one of the
/// `XI_CONJ_*` constants.
///
/// # Safety
/// `family` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn xi_compute(
    family: *const c_char,
    level: u32,
    conjugation: i32,
    out: *mut *mut XiGraph,
) -> XiStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        let c = curve(read_str(family, "family")?)?;
        let spec = c.group(&RingCtx::new(level)?);
        let conj = self::conjugation(c, level, conjugation)?;
        let xi = build_xi(&spec, conj)?;
        emit(out, GraphDocument::from_xi(&xi, &spec, conj)?);
        Ok(())
    })
}

/// Compute the graph for a custom group given as JSON:
/// `{"level": N, "conjugation": "std" | "inv" | [[a,b],[c,d]], "generators": [...]}`.
/// `budget` caps the closure size; 0 selects the default.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn xi_from_group_json(
    json: *const c_char,
    budget: usize,
    out: *mut *mut XiGraph,
) -> XiStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        let budget = if budget == 0 { DEFAULT_BUDGET } else { budget };
        let (spec, conj) = parse_group_json(read_str(json, "json")?, None::<ConjArg>, budget)?;
        let xi = build_xi(&spec, conj)?;
        emit(out, GraphDocument::from_xi(&xi, &spec, conj)?);
        Ok(())
    })
}

/// Component, vertex and edge counts.
///
/// # Safety
/// `graph` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn xi_graph_counts(graph: *const XiGraph, out: *mut XiCounts) -> XiStatus {
    guard(|| {
        let g = graph.as_ref().ok_or(Fail::Null("graph"))?;
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        let parabolic = g
            .doc
            .vertices
            .iter()
            .filter(|v| v.kind == VertexKind::Parabolic)
            .count();
        *out = XiCounts {
            components: g.doc.components.len() as u64,
            parabolic: parabolic as u64,
            elliptic: (g.doc.vertices.len() - parabolic) as u64,
            edges: g.doc.edges.len() as u64,
        };
        Ok(())
    })
}

unsafe fn render(
    graph: *const XiGraph,
    out: *mut *mut c_char,
    f: impl FnOnce(&GraphDocument) -> String,
) -> XiStatus {
    guard(|| {
        let g = graph.as_ref().ok_or(Fail::Null("graph"))?;
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        let s = CString::new(f(&g.doc)).map_err(|_| Fail::Arg("output contains nul".into()))?;
        *out = s.into_raw();
        Ok(())
    })
}

/// The graph as a JSON document. Free with [`xi_string_free`].
///
/// # Safety
/// `graph` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn xi_graph_to_json(
    graph: *const XiGraph,
    out: *mut *mut c_char,
) -> XiStatus {
    render(graph, out, GraphDocument::to_json)
}

/// The graph in Graphviz DOT. Free with [`xi_string_free`].
///
/// # Safety
/// `graph` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn xi_graph_to_dot(graph: *const XiGraph, out: *mut *mut c_char) -> XiStatus {
    render(graph, out, GraphDocument::to_dot)
}

/// A short text summary of the cycles. Free with [`xi_string_free`].
///
/// # Safety
/// `graph` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn xi_graph_to_text(
    graph: *const XiGraph,
    out: *mut *mut c_char,
) -> XiStatus {
    render(graph, out, GraphDocument::to_text)
}

/// Genus of the curve for a named family at `level`.
///
/// # Safety
/// `family` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn xi_genus(family: *const c_char, level: u32, out: *mut u64) -> XiStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        let c = curve(read_str(family, "family")?)?;
        *out = genus(&c.group(&RingCtx::new(level)?))?.genus;
        Ok(())
    })
}

/// Closed-form counts for families that have one (not `split`).
///
/// # Safety
/// `family` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn xi_predict(
    family: *const c_char,
    level: u32,
    out: *mut XiPrediction,
) -> XiStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        let p = predict(curve(read_str(family, "family")?)?, level)?;
        *out = XiPrediction {
            components: p.components,
            cusps: p.cusps,
            elliptic: p.elliptic,
        };
        Ok(())
    })
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn xi_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Release a graph. Null is ignored.
///
/// # Safety
/// `graph` must be null or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn xi_graph_free(graph: *mut XiGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn xi_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
