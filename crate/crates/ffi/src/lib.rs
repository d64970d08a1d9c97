//! C interface to `cclosed`.
//!
//! Graphs and clique sets are opaque handles created and destroyed through
//! this interface. Every fallible call returns a [`CcStatus`]; the message of
//! the most recent failure on the calling thread is available from
//! [`cc_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cclosed::bounds::{evaluate, CertifyOptions, Magnitude};
use cclosed::cliques::{cclosed_cliques_exact, count_maximal_cliques, Algorithm, CliqueSet};
use cclosed::closure::{a_bound, c_closure, weak_closure};
use cclosed::graph::{load_edge_list_path, parse_edge_list};
use cclosed::{Error, Graph, Vertex};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    Io = 3,
    InvalidArgument = 4,
    OutOfRange = 5,
    SubcallTooLarge = 6,
    BudgetExceeded = 7,
    BoundViolation = 8,
    BufferTooSmall = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcAlgorithm {
    Pivot = 0,
    CClosed = 1,
}

/// Opaque graph handle.
pub struct CcGraph(Graph);

/// Opaque handle to a canonical set of maximal cliques.
pub struct CcCliqueSet(Vec<Vec<Vertex>>);

/// Clique-count bounds as base-10 logarithms; a zero bound is `-inf`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CcBounds {
    pub n: u64,
    pub m: u64,
    pub c_closure: u32,
    pub weak_c_closure: u32,
    pub a_bound: f64,
    pub count_available: bool,
    pub observed_maximal_cliques: u64,
    pub log10_bound_init: f64,
    pub log10_bound_improved: f64,
    pub log10_bound_abound: f64,
    pub log10_bound_stats: f64,
    /// Number of bounds below the observed count.
    pub violations: u32,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CcStatus {
    match e {
        Error::Parse { .. } => CcStatus::Parse,
        Error::Io(_) => CcStatus::Io,
        Error::VertexOutOfRange { .. } => CcStatus::OutOfRange,
        Error::SubcallTooLarge { .. } => CcStatus::SubcallTooLarge,
        Error::BudgetExceeded(_) => CcStatus::BudgetExceeded,
        Error::BoundViolation { .. } => CcStatus::BoundViolation,
        _ => CcStatus::InvalidArgument,
    }
}

/// Runs `f`, recording any error or panic as the thread's last error.
fn guard<F: FnOnce() -> Result<(), (CcStatus, String)>>(f: F) -> CcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CcStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            CcStatus::Panic
        }
    }
}

fn lib(e: Error) -> (CcStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (CcStatus, String) {
    (CcStatus::NullPointer, format!("{what} is null"))
}

unsafe fn graph_ref<'a>(g: *const CcGraph) -> Result<&'a Graph, (CcStatus, String)> {
    // SAFETY: caller passes null or a live handle from this library.
    unsafe { g.as_ref() }.map(|h| &h.0).ok_or_else(|| null("graph"))
}

unsafe fn c_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (CcStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    // SAFETY: caller promises a NUL-terminated string.
    unsafe { CStr::from_ptr(s) }
        .to_str()
        .map_err(|_| (CcStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), (CcStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    // SAFETY: non-null and, per the caller contract, writable.
    unsafe { out.write(value) };
    Ok(())
}

/// Message describing the last failure on this thread, or null. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses an edge list held in a NUL-terminated string.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_from_edge_list(text: *const c_char, out: *mut *mut CcGraph) -> CcStatus {
    guard(|| {
        let text = unsafe { c_str(text, "text") }?;
        let g = parse_edge_list(text).map_err(lib)?;
        unsafe { write_out(out, Box::into_raw(Box::new(CcGraph(g)))) }
    })
}

/// Loads an edge-list file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_load(path: *const c_char, out: *mut *mut CcGraph) -> CcStatus {
    guard(|| {
        let path = unsafe { c_str(path, "path") }?;
        let g = load_edge_list_path(path).map_err(lib)?;
        unsafe { write_out(out, Box::into_raw(Box::new(CcGraph(g)))) }
    })
}

/// Builds a graph on `n` vertices from `edge_count` pairs stored flat in
/// `edges` (`2 * edge_count` entries). Self-loops and repeats are dropped.
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable values (or be null when
/// `edge_count` is 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_from_edges(
    n: usize,
    edges: *const u32,
    edge_count: usize,
    out: *mut *mut CcGraph,
) -> CcStatus {
    guard(|| {
        let flat: &[u32] = if edge_count == 0 {
            &[]
        } else if edges.is_null() {
            return Err(null("edges"));
        } else {
            // SAFETY: caller guarantees 2 * edge_count readable entries.
            unsafe { std::slice::from_raw_parts(edges, 2 * edge_count) }
        };
        let g = Graph::from_edges(n, flat.chunks_exact(2).map(|p| (p[0], p[1]))).map_err(lib)?;
        unsafe { write_out(out, Box::into_raw(Box::new(CcGraph(g)))) }
    })
}

/// Releases a graph. Null is ignored.
///
/// # Safety
/// `g` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_free(g: *mut CcGraph) {
    if !g.is_null() {
        // SAFETY: created by Box::into_raw in this library.
        drop(unsafe { Box::from_raw(g) });
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_vertex_count(g: *const CcGraph) -> usize {
    unsafe { g.as_ref() }.map_or(0, |h| h.0.n())
}

/// Edge count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_edge_count(g: *const CcGraph) -> usize {
    unsafe { g.as_ref() }.map_or(0, |h| h.0.m())
}

/// Original label of internal vertex `v` (the id itself for graphs built
/// from arrays).
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_label(g: *const CcGraph, v: u32, out: *mut u64) -> CcStatus {
    guard(|| {
        let g = unsafe { graph_ref(g) }?;
        g.check_vertex(v).map_err(lib)?;
        unsafe { write_out(out, g.label(v)) }
    })
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cc_c_closure(g: *const CcGraph, out: *mut u32) -> CcStatus {
    guard(|| {
        let g = unsafe { graph_ref(g) }?;
        unsafe { write_out(out, c_closure(g).0) }
    })
}

/// Weak closure and, if `ordering` is non-null, the elimination ordering
/// as internal ids. `ordering_len` must be at least the vertex count.
///
/// # Safety
/// `g` must be a live handle, `out_c` writable, and `ordering` null or
/// writable for `ordering_len` entries.
#[no_mangle]
pub unsafe extern "C" fn cc_weak_closure(
    g: *const CcGraph,
    out_c: *mut u32,
    ordering: *mut u32,
    ordering_len: usize,
) -> CcStatus {
    guard(|| {
        let g = unsafe { graph_ref(g) }?;
        if !ordering.is_null() && ordering_len < g.n() {
            return Err((
                CcStatus::BufferTooSmall,
                format!("ordering buffer holds {ordering_len}, need {}", g.n()),
            ));
        }
        let r = weak_closure(g);
        if !ordering.is_null() {
            // SAFETY: checked length above; caller guarantees writability.
            unsafe { std::slice::from_raw_parts_mut(ordering, g.n()) }.copy_from_slice(&r.ordering);
        }
        unsafe { write_out(out_c, r.weak_c_closure) }
    })
}

/// Greedy A-bound.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cc_a_bound(g: *const CcGraph, out: *mut f64) -> CcStatus {
    guard(|| {
        let g = unsafe { graph_ref(g) }?;
        unsafe { write_out(out, a_bound(g).value) }
    })
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cc_count_maximal_cliques(
    g: *const CcGraph,
    algorithm: CcAlgorithm,
    out: *mut u64,
) -> CcStatus {
    guard(|| {
        let g = unsafe { graph_ref(g) }?;
        let alg = match algorithm {
            CcAlgorithm::Pivot => Algorithm::Pivot,
            CcAlgorithm::CClosed => Algorithm::CClosed,
        };
        let count = count_maximal_cliques(g, alg).map_err(lib)?;
        unsafe { write_out(out, count) }
    })
}

/// All maximal cliques, canonically ordered, computed over the weak-closure
/// ordering.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cc_cliques_exact(g: *const CcGraph, out: *mut *mut CcCliqueSet) -> CcStatus {
    guard(|| {
        let g = unsafe { graph_ref(g) }?;
        let set: CliqueSet = cclosed_cliques_exact(g, &weak_closure(g).ordering).map_err(lib)?;
        let cliques = set.iter().map(|k| k.as_slice().to_vec()).collect();
        unsafe { write_out(out, Box::into_raw(Box::new(CcCliqueSet(cliques)))) }
    })
}

/// Number of cliques, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cc_clique_set_len(s: *const CcCliqueSet) -> usize {
    unsafe { s.as_ref() }.map_or(0, |h| h.0.len())
}

/// Borrows clique `index` as an ascending array of internal ids. The
/// array lives as long as the set.
///
/// # Safety
/// `s` must be a live handle; `members` and `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_clique_set_get(
    s: *const CcCliqueSet,
    index: usize,
    members: *mut *const u32,
    len: *mut usize,
) -> CcStatus {
    guard(|| {
        let s = unsafe { s.as_ref() }.ok_or_else(|| null("clique set"))?;
        let k = s.0.get(index).ok_or_else(|| {
            (
                CcStatus::OutOfRange,
                format!("index {index} out of range for {} cliques", s.0.len()),
            )
        })?;
        unsafe { write_out(members, k.as_ptr()) }?;
        unsafe { write_out(len, k.len()) }
    })
}

/// Releases a clique set. Null is ignored.
///
/// # Safety
/// `s` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cc_clique_set_free(s: *mut CcCliqueSet) {
    if !s.is_null() {
        // SAFETY: created by Box::into_raw in this library.
        drop(unsafe { Box::from_raw(s) });
    }
}

fn log10(m: Magnitude) -> f64 {
    if m.is_zero() {
        f64::NEG_INFINITY
    } else {
        m.log10()
    }
}

/// Evaluates every bound; with `skip_count` the exact count is not
/// computed and `count_available` is false.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cc_bounds(g: *const CcGraph, skip_count: bool, out: *mut CcBounds) -> CcStatus {
    guard(|| {
        let g = unsafe { graph_ref(g) }?;
        let opts = CertifyOptions {
            skip_count,
            ..Default::default()
        };
        let r = evaluate(g, &opts).map_err(lib)?;
        let b = CcBounds {
            n: r.n as u64,
            m: r.m as u64,
            c_closure: r.c_closure,
            weak_c_closure: r.weak_c_closure,
            a_bound: r.a_bound,
            count_available: r.count_available,
            observed_maximal_cliques: r.observed_maximal_cliques.unwrap_or(0),
            log10_bound_init: log10(r.bound_init),
            log10_bound_improved: log10(r.bound_improved),
            log10_bound_abound: log10(r.bound_abound_certified),
            log10_bound_stats: log10(r.bound_stats_certified),
            violations: r.violations.len() as u32,
        };
        unsafe { write_out(out, b) }
    })
}

/// `log10(3^((c-1)/3) * n^2)`; NaN unless `n >= 1` and `c >= 1`.
#[no_mangle]
pub extern "C" fn cc_bound_init_log10(n: u64, c: u32) -> f64 {
    if n == 0 || c == 0 {
        return f64::NAN;
    }
    cclosed::bounds::bound_init(n, c).log10()
}

/// `log10(4^((c+4)(c-1)/2) * n^(2-2^(1-c)))`; NaN unless `n >= 1` and `c >= 1`.
#[no_mangle]
pub extern "C" fn cc_bound_improved_log10(n: u64, c: u32) -> f64 {
    if n == 0 || c == 0 {
        return f64::NAN;
    }
    cclosed::bounds::bound_improved(n, c).log10()
}
