//! Convolutional signal propagation (CSP) on hypergraphs.
//!
//! A CSP layer averages a node signal over each hyperedge and then averages
//! the hyperedge values back onto the nodes. It has no parameters. The crate
//! provides the sparse engine with its row, column, symmetric and α
//! variants, a multinomial Naive Bayes baseline over the same incidence
//! structure, ranking metrics, and the transductive classification and
//! retrieval protocols used to evaluate them.
//!
//! ```
//! use csp_core::{build_hypergraph, propagate, PropagationConfig, SignalMatrix};
//!
//! let (h, _ids) = build_hypergraph([("a", "e1"), ("b", "e1"), ("b", "e2"), ("c", "e2")], None)?;
//! let x0 = SignalMatrix::from_column(vec![1.0, 0.0, 0.0])?;
//! let x1 = propagate(&h, &x0, &PropagationConfig::default())?;
//! assert_eq!(x1.as_slice(), &[0.5, 0.25, 0.0]);
//! # Ok::<(), csp_core::CspError>(())
//! ```

pub mod bench;
pub mod error;
pub mod eval;
pub mod hypergraph;
pub mod io;
pub mod labels;
pub mod metrics;
pub mod naive_bayes;
pub mod propagation;
pub mod signal;
pub mod synth;

pub use error::{CspError, Result};
pub use eval::{
    assign_folds, run_classification, run_retrieval, FoldAssignment, Method, MetricReport, Task, TaskSpec,
};
pub use hypergraph::{build_hypergraph, Hypergraph, HypergraphBuilder, IdMaps};
pub use labels::{binarize, Labels};
pub use metrics::{precision_at_k, roc_auc};
pub use naive_bayes::{nb_fit, nb_score, NaiveBayesModel};
pub use propagation::dense::dense_csp_layer;
pub use propagation::{csp_layer, edge_aggregate, node_aggregate, propagate, PropagationConfig, Propagator, Variant};
pub use signal::{EdgeSignal, SignalMatrix};
