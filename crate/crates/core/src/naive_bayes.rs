//! Binary multinomial Naive Bayes over hyperedge-incidence features.
//!
//! Every node is a document whose words are its incident hyperedges, each
//! occurring once. Scores are positive-class log-odds.

use serde::{Deserialize, Serialize};

use crate::error::{CspError, Result};
use crate::hypergraph::Hypergraph;

pub const DEFAULT_SMOOTHING: f64 = 1.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NaiveBayesModel {
    /// `[log p(y=0), log p(y=1)]`
    pub class_log_prior: [f64; 2],
    /// `feature_log_likelihood[c][j] = log p(ξ_j | y=c)`; `-inf` where the
    /// smoothed count is zero.
    pub feature_log_likelihood: [Vec<f64>; 2],
    pub smoothing: f64,
}

/// Fit on `train` nodes with aligned binary `labels`.
pub fn nb_fit(h: &Hypergraph, train: &[usize], labels: &[bool], smoothing: f64) -> Result<NaiveBayesModel> {
    if train.len() != labels.len() {
        return Err(CspError::Shape(format!("{} training nodes but {} labels", train.len(), labels.len())));
    }
    if !(smoothing >= 0.0 && smoothing.is_finite()) {
        return Err(CspError::InvalidConfig(format!("smoothing {smoothing} must be finite and >= 0")));
    }
    let m = h.n_edges();
    let mut counts = [vec![0.0f64; m], vec![0.0f64; m]];
    let mut class_nodes = [0usize; 2];
    for (&node, &label) in train.iter().zip(labels) {
        if node >= h.n_nodes() {
            return Err(CspError::Shape(format!("training node {node} out of range {}", h.n_nodes())));
        }
        let c = label as usize;
        class_nodes[c] += 1;
        for &j in h.node_edges(node) {
            counts[c][j as usize] += 1.0;
        }
    }
    if let Some(c) = class_nodes.iter().position(|&n| n == 0) {
        return Err(CspError::MissingClass(c as u8));
    }

    let total = class_nodes[0] + class_nodes[1];
    let class_log_prior = [
        (class_nodes[0] as f64 / total as f64).ln(),
        (class_nodes[1] as f64 / total as f64).ln(),
    ];
    let feature_log_likelihood = counts.map(|row| {
        let denom: f64 = row.iter().sum::<f64>() + smoothing * m as f64;
        row.into_iter()
            .map(|count| {
                let num = count + smoothing;
                if num == 0.0 || denom == 0.0 {
                    f64::NEG_INFINITY
                } else {
                    (num / denom).ln()
                }
            })
            .collect()
    });
    Ok(NaiveBayesModel { class_log_prior, feature_log_likelihood, smoothing })
}

impl NaiveBayesModel {
    pub fn n_features(&self) -> usize {
        self.feature_log_likelihood[0].len()
    }

    pub fn prior_log_odds(&self) -> f64 {
        self.class_log_prior[1] - self.class_log_prior[0]
    }

    /// Log-odds of the positive class for a node with the given incident edges.
    ///
    /// Features that are impossible under both classes are ignored. A feature
    /// impossible under exactly one class drives the score to `±inf`; if both
    /// directions occur, only the finite evidence is kept.
    pub fn score_features(&self, edges: &[u32]) -> f64 {
        let [neg, pos] = &self.feature_log_likelihood;
        let mut finite = self.prior_log_odds();
        let (mut to_pos, mut to_neg) = (false, false);
        for &j in edges {
            let (lp, ln) = (pos[j as usize], neg[j as usize]);
            match (lp.is_finite(), ln.is_finite()) {
                (true, true) => finite += lp - ln,
                (true, false) => to_pos = true,
                (false, true) => to_neg = true,
                (false, false) => {}
            }
        }
        match (to_pos, to_neg) {
            (true, false) => f64::INFINITY,
            (false, true) => f64::NEG_INFINITY,
            _ => finite,
        }
    }
}

/// Positive-class log-odds for each of `nodes`.
pub fn nb_score(model: &NaiveBayesModel, h: &Hypergraph, nodes: &[usize]) -> Result<Vec<f64>> {
    if model.n_features() != h.n_edges() {
        return Err(CspError::Shape(format!(
            "model has {} features, hypergraph has {} edges",
            model.n_features(),
            h.n_edges()
        )));
    }
    nodes
        .iter()
        .map(|&u| {
            if u >= h.n_nodes() {
                Err(CspError::Shape(format!("node {u} out of range {}", h.n_nodes())))
            } else {
                Ok(model.score_features(h.node_edges(u)))
            }
        })
        .collect()
}
