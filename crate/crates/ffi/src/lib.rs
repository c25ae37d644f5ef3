//! C ABI for `csp-core`.
//!
//! Hypergraphs are opaque heap handles created by `csp_hypergraph_*`
//! constructors and released with [`csp_hypergraph_free`]. Every fallible
//! call returns a [`CspStatus`]; on failure the message is available from
//! [`csp_last_error_message`] on the same thread until the next failing call.
//! Matrices cross the boundary column-major.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use csp_core::{CspError, Hypergraph, IdMaps, PropagationConfig, SignalMatrix, Variant};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CspStatus {
    Ok = 0,
    NullPointer = 1,
    EmptyGraph = 2,
    Shape = 3,
    InvalidConfig = 4,
    DegenerateLabels = 5,
    MissingClass = 6,
    Io = 7,
    Parse = 8,
    UnknownNode = 9,
    Panic = 99,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CspVariant {
    Row = 0,
    Column = 1,
    Symmetric = 2,
    Alpha = 3,
}

impl From<CspVariant> for Variant {
    fn from(v: CspVariant) -> Self {
        match v {
            CspVariant::Row => Variant::Row,
            CspVariant::Column => Variant::Column,
            CspVariant::Symmetric => Variant::Symmetric,
            CspVariant::Alpha => Variant::Alpha,
        }
    }
}

/// Opaque hypergraph handle.
pub struct CspHypergraph {
    graph: Hypergraph,
    ids: Option<IdMaps>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &CspError) -> CspStatus {
    match e {
        CspError::EmptyGraph | CspError::EmptyEdge(_) => CspStatus::EmptyGraph,
        CspError::Shape(_) | CspError::SizeGuard { .. } => CspStatus::Shape,
        CspError::InvalidConfig(_) | CspError::InvalidFolds(_) => CspStatus::InvalidConfig,
        CspError::DegenerateLabels => CspStatus::DegenerateLabels,
        CspError::MissingClass(_) => CspStatus::MissingClass,
        CspError::Io(_) => CspStatus::Io,
        CspError::Parse { .. } | CspError::MissingColumn { .. } | CspError::Json(_) => CspStatus::Parse,
        CspError::UnknownNode(_) | CspError::UnlabeledNode(_) | CspError::UnknownClass(_) => CspStatus::UnknownNode,
    }
}

fn guard(f: impl FnOnce() -> Result<(), CspError>) -> CspStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CspStatus::Ok,
        Ok(Err(e)) => {
            let status = status_of(&e);
            set_error(e.to_string());
            status
        }
        Err(_) => {
            set_error("panic inside csp".into());
            CspStatus::Panic
        }
    }
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            set_error(concat!("null pointer: ", stringify!($p)).into());
            return CspStatus::NullPointer;
        })+
    };
}

/// Slice view that tolerates a null pointer when `len == 0`.
unsafe fn slice<'a, T>(p: *const T, len: usize) -> &'a [T] {
    if len == 0 {
        &[]
    } else {
        std::slice::from_raw_parts(p, len)
    }
}

unsafe fn path_arg<'a>(p: *const c_char) -> Result<&'a Path, CspError> {
    CStr::from_ptr(p)
        .to_str()
        .map(Path::new)
        .map_err(|_| CspError::InvalidConfig("path is not valid UTF-8".into()))
}

/// Message of the last failed call on this thread, or NULL. Owned by the
/// library; valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn csp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Build a hypergraph from `n_pairs` dense `(nodes[k], edges[k])` incidences.
///
/// # Safety
/// `nodes` and `edges` must point to `n_pairs` readable `uint32_t` each and
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn csp_hypergraph_from_pairs(
    n_nodes: usize,
    n_edges: usize,
    nodes: *const u32,
    edges: *const u32,
    n_pairs: usize,
    out: *mut *mut CspHypergraph,
) -> CspStatus {
    non_null!(out);
    if n_pairs > 0 {
        non_null!(nodes, edges);
    }
    guard(|| {
        let pairs: Vec<(u32, u32)> =
            slice(nodes, n_pairs).iter().copied().zip(slice(edges, n_pairs).iter().copied()).collect();
        let graph = Hypergraph::from_index_pairs(n_nodes, n_edges, &pairs)?;
        *out = Box::into_raw(Box::new(CspHypergraph { graph, ids: None }));
        Ok(())
    })
}

/// Load a `nodeId,edgeId` incidence file. `universe_path` may be NULL; when
/// set, its `nodeId` column adds isolated nodes.
///
/// # Safety
/// `incidence_path` (and `universe_path` if non-null) must be NUL-terminated
/// strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn csp_hypergraph_load(
    incidence_path: *const c_char,
    universe_path: *const c_char,
    out: *mut *mut CspHypergraph,
) -> CspStatus {
    non_null!(incidence_path, out);
    guard(|| {
        let universe = if universe_path.is_null() { None } else { Some(path_arg(universe_path)?) };
        let (graph, ids) = csp_core::io::load_incidence(path_arg(incidence_path)?, universe)?;
        *out = Box::into_raw(Box::new(CspHypergraph { graph, ids: Some(ids) }));
        Ok(())
    })
}

/// Release a handle. NULL is ignored.
///
/// # Safety
/// `h` must come from a `csp_hypergraph_*` constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn csp_hypergraph_free(h: *mut CspHypergraph) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle or NULL (returns 0).
#[no_mangle]
pub unsafe extern "C" fn csp_hypergraph_n_nodes(h: *const CspHypergraph) -> usize {
    h.as_ref().map_or(0, |h| h.graph.n_nodes())
}

/// # Safety
/// `h` must be a live handle or NULL (returns 0).
#[no_mangle]
pub unsafe extern "C" fn csp_hypergraph_n_edges(h: *const CspHypergraph) -> usize {
    h.as_ref().map_or(0, |h| h.graph.n_edges())
}

/// # Safety
/// `h` must be a live handle or NULL (returns 0).
#[no_mangle]
pub unsafe extern "C" fn csp_hypergraph_nnz(h: *const CspHypergraph) -> usize {
    h.as_ref().map_or(0, |h| h.graph.nnz())
}

/// Write all node degrees into `out[0..n_nodes]`.
///
/// # Safety
/// `out` must have room for `csp_hypergraph_n_nodes(h)` values.
#[no_mangle]
pub unsafe extern "C" fn csp_hypergraph_node_degrees(h: *const CspHypergraph, out: *mut usize) -> CspStatus {
    non_null!(h, out);
    guard(|| {
        let h = &(*h).graph;
        for i in 0..h.n_nodes() {
            *out.add(i) = h.node_degree(i);
        }
        Ok(())
    })
}

/// Dense index of an external node identifier of a loaded hypergraph.
///
/// # Safety
/// `id` must be NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn csp_hypergraph_node_index(
    h: *const CspHypergraph,
    id: *const c_char,
    out: *mut usize,
) -> CspStatus {
    non_null!(h, id, out);
    guard(|| {
        let id = CStr::from_ptr(id).to_str().map_err(|_| CspError::UnknownNode("<invalid utf-8>".into()))?;
        let ids = (*h)
            .ids
            .as_ref()
            .ok_or_else(|| CspError::InvalidConfig("hypergraph was built from indices, not identifiers".into()))?;
        *out = ids.nodes.get(id).ok_or_else(|| CspError::UnknownNode(id.to_owned()))?;
        Ok(())
    })
}

/// Run `layers` CSP layers on the column-major `n_rows × n_cols` signal `x`,
/// writing the result to `out` (same shape; may not alias `x`). `alpha` is
/// read only by `CSP_VARIANT_ALPHA`.
///
/// # Safety
/// `x` and `out` must each hold `n_rows * n_cols` doubles.
#[no_mangle]
pub unsafe extern "C" fn csp_propagate(
    h: *const CspHypergraph,
    variant: CspVariant,
    layers: usize,
    alpha: f64,
    x: *const f64,
    n_rows: usize,
    n_cols: usize,
    out: *mut f64,
) -> CspStatus {
    non_null!(h, x, out);
    guard(|| {
        let len = n_rows.checked_mul(n_cols).ok_or_else(|| CspError::Shape("n_rows * n_cols overflows".into()))?;
        let x0 = SignalMatrix::from_col_major(n_rows, n_cols, slice(x, len).to_vec())?;
        let cfg = PropagationConfig { variant: variant.into(), layers, alpha };
        let result = csp_core::propagate(&(*h).graph, &x0, &cfg)?;
        std::slice::from_raw_parts_mut(out, len).copy_from_slice(result.as_slice());
        Ok(())
    })
}

/// Naive Bayes positive-class log-odds: fit on `train_nodes` with 0/1
/// `train_labels`, score `score_nodes` into `out`.
///
/// # Safety
/// Array arguments must hold the stated number of elements.
#[no_mangle]
pub unsafe extern "C" fn csp_naive_bayes_scores(
    h: *const CspHypergraph,
    train_nodes: *const usize,
    train_labels: *const u8,
    n_train: usize,
    smoothing: f64,
    score_nodes: *const usize,
    n_score: usize,
    out: *mut f64,
) -> CspStatus {
    non_null!(h, out);
    if n_train > 0 {
        non_null!(train_nodes, train_labels);
    }
    if n_score > 0 {
        non_null!(score_nodes);
    }
    guard(|| {
        let h = &(*h).graph;
        let labels: Vec<bool> = slice(train_labels, n_train).iter().map(|&l| l != 0).collect();
        let model = csp_core::nb_fit(h, slice(train_nodes, n_train), &labels, smoothing)?;
        let scores = csp_core::nb_score(&model, h, slice(score_nodes, n_score))?;
        std::slice::from_raw_parts_mut(out, n_score).copy_from_slice(&scores);
        Ok(())
    })
}

/// ROC-AUC of `scores` against 0/1 `labels`, ties worth ½.
///
/// # Safety
/// `scores` and `labels` must hold `len` elements; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn csp_roc_auc(scores: *const f64, labels: *const u8, len: usize, out: *mut f64) -> CspStatus {
    non_null!(out);
    if len > 0 {
        non_null!(scores, labels);
    }
    guard(|| {
        let labels: Vec<bool> = slice(labels, len).iter().map(|&l| l != 0).collect();
        *out = csp_core::roc_auc(slice(scores, len), &labels)?;
        Ok(())
    })
}

/// Precision among the `min(k, len)` highest scores, ties by lower index.
///
/// # Safety
/// `scores` and `labels` must hold `len` elements; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn csp_precision_at_k(
    scores: *const f64,
    labels: *const u8,
    len: usize,
    k: usize,
    out: *mut f64,
) -> CspStatus {
    non_null!(out);
    if len > 0 {
        non_null!(scores, labels);
    }
    guard(|| {
        let labels: Vec<bool> = slice(labels, len).iter().map(|&l| l != 0).collect();
        *out = csp_core::precision_at_k(slice(scores, len), &labels, k)?;
        Ok(())
    })
}
