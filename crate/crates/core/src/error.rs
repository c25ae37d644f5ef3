use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CspError {
    #[error("incidence stream is empty")]
    EmptyGraph,

    #[error("hyperedge {0} has no member nodes")]
    EmptyEdge(usize),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid propagation config: {0}")]
    InvalidConfig(String),

    #[error("dense materialization of {n_nodes}x{n_edges} exceeds the guard of {limit} cells")]
    SizeGuard {
        n_nodes: usize,
        n_edges: usize,
        limit: usize,
    },

    #[error("class {0} has no training nodes")]
    MissingClass(u8),

    #[error("labels contain a single class; both positives and negatives are required")]
    DegenerateLabels,

    #[error("invalid fold configuration: {0}")]
    InvalidFolds(String),

    #[error("class {0:?} does not occur in the labels")]
    UnknownClass(String),

    #[error("node {0:?} is not part of the node universe")]
    UnknownNode(String),

    #[error("node {0:?} has no label")]
    UnlabeledNode(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("{path}: missing column {column:?}")]
    MissingColumn { path: PathBuf, column: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = CspError> = std::result::Result<T, E>;
