//! Slow, literal reference implementations for cross-checking `csp-core`.
//!
//! Nothing here calls into the production metric, Naive Bayes or sparse
//! propagation code; only the `Hypergraph` container is shared.

use csp_core::{CspError, Hypergraph, Result};

pub use csp_core::propagation::dense::{dense_csp_layer, hypergraph_adjacency, layer_operator, DenseMatrix};

/// ROC-AUC by enumerating every positive–negative pair, ties worth ½.
pub fn oracle_auc(scores: &[f64], labels: &[bool]) -> Result<f64> {
    assert_eq!(scores.len(), labels.len());
    let mut wins = 0.0f64;
    let mut pairs = 0u64;
    for (i, &li) in labels.iter().enumerate() {
        if !li {
            continue;
        }
        for (j, &lj) in labels.iter().enumerate() {
            if lj {
                continue;
            }
            pairs += 1;
            if scores[i] > scores[j] {
                wins += 1.0;
            } else if scores[i] == scores[j] {
                wins += 0.5;
            }
        }
    }
    if pairs == 0 {
        return Err(CspError::DegenerateLabels);
    }
    Ok(wins / pairs as f64)
}

/// Precision at k where node `i` is in the top k iff fewer than k nodes beat
/// it (higher score, or equal score and smaller index).
pub fn oracle_precision_at_k(scores: &[f64], labels: &[bool], k: usize) -> f64 {
    assert!(!scores.is_empty() && k > 0);
    let n = scores.len();
    let cutoff = k.min(n);
    let mut hits = 0usize;
    for i in 0..n {
        let beaten_by = (0..n).filter(|&j| scores[j] > scores[i] || (scores[j] == scores[i] && j < i)).count();
        if beaten_by < cutoff && labels[i] {
            hits += 1;
        }
    }
    hits as f64 / cutoff as f64
}

/// Posterior `p(y=1 | ξ_u)` for every node from raw counts and plain products.
pub fn oracle_nb(h: &Hypergraph, train: &[usize], labels: &[bool], smoothing: f64) -> Result<Vec<f64>> {
    let m = h.n_edges();
    let mut count = [vec![0.0f64; m], vec![0.0f64; m]];
    let mut docs = [0.0f64; 2];
    for (&u, &y) in train.iter().zip(labels) {
        let c = usize::from(y);
        docs[c] += 1.0;
        for (j, slot) in count[c].iter_mut().enumerate() {
            if h.edge_nodes(j).contains(&(u as u32)) {
                *slot += 1.0;
            }
        }
    }
    for (c, &d) in docs.iter().enumerate() {
        if d == 0.0 {
            return Err(CspError::MissingClass(c as u8));
        }
    }
    let prior = [docs[0] / (docs[0] + docs[1]), docs[1] / (docs[0] + docs[1])];
    let word_total = [count[0].iter().sum::<f64>(), count[1].iter().sum::<f64>()];
    let p = |c: usize, j: usize| (count[c][j] + smoothing) / (word_total[c] + smoothing * m as f64);

    Ok((0..h.n_nodes())
        .map(|u| {
            let mut joint = [prior[0], prior[1]];
            for j in 0..m {
                if h.edge_nodes(j).contains(&(u as u32)) {
                    joint[0] *= p(0, j);
                    joint[1] *= p(1, j);
                }
            }
            joint[1] / (joint[0] + joint[1])
        })
        .collect())
}

/// `½ D⁻¹ A X + ½ X` for a simple graph given as an edge list, one column.
pub fn label_propagation_half(n: usize, edges: &[(u32, u32)], x: &[f64]) -> Vec<f64> {
    let mut adj = vec![vec![0.0f64; n]; n];
    for &(a, b) in edges {
        adj[a as usize][b as usize] += 1.0;
        adj[b as usize][a as usize] += 1.0;
    }
    (0..n)
        .map(|i| {
            let deg: f64 = adj[i].iter().sum();
            let ax: f64 = (0..n).map(|j| adj[i][j] * x[j]).sum();
            0.5 * ax / deg + 0.5 * x[i]
        })
        .collect()
}

/// `½ (A + D)` for a simple graph, dense row-major.
pub fn half_adjacency_plus_degree(n: usize, edges: &[(u32, u32)]) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(n, n);
    for &(a, b) in edges {
        let (a, b) = (a as usize, b as usize);
        m[(a, b)] += 0.5;
        m[(b, a)] += 0.5;
        m[(a, a)] += 0.5;
        m[(b, b)] += 0.5;
    }
    m
}
