//! Wall-clock micro-benchmark of CSP layers and the Naive Bayes baseline.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hypergraph::Hypergraph;
use crate::naive_bayes::{nb_fit, nb_score, DEFAULT_SMOOTHING};
use crate::propagation::{PropagationConfig, Propagator, Variant};

pub const DEFAULT_REPETITIONS: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub method: String,
    pub layers: usize,
    pub samples_micros: Vec<f64>,
    pub median_micros: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub dataset: String,
    pub n_nodes: usize,
    pub n_edges: usize,
    pub nnz: usize,
    pub repetitions: usize,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("method,layers,repetitions,median_micros\n");
        for r in &self.rows {
            s.push_str(&format!("{},{},{},{}\n", r.method, r.layers, r.samples_micros.len(), r.median_micros));
        }
        s
    }

    pub fn row(&self, method: &str, layers: usize) -> Option<&BenchRow> {
        self.rows.iter().find(|r| r.method == method && r.layers == layers)
    }
}

pub fn median(samples: &[f64]) -> f64 {
    let mut v = samples.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        f64::NAN
    } else if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Median microseconds of `f` over `reps` runs after one warm-up call.
pub fn time_micros(reps: usize, mut f: impl FnMut()) -> Vec<f64> {
    f();
    (0..reps)
        .map(|_| {
            let start = Instant::now();
            f();
            start.elapsed().as_secs_f64() * 1e6
        })
        .collect()
}

/// Times `layers` row-variant CSP layers on a single column with 10% known
/// positives. Returns the per-repetition samples.
pub fn time_csp(h: &Hypergraph, layers: usize, reps: usize, seed: u64) -> Result<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x0: Vec<f64> = (0..h.n_nodes()).map(|_| if rng.random_bool(0.1) { 1.0 } else { 0.0 }).collect();
    let mut prop = Propagator::new(h, PropagationConfig::new(Variant::Row, layers))?;
    let mut out = Vec::with_capacity(h.n_nodes());
    let mut err = None;
    let samples = time_micros(reps, || {
        if let Err(e) = prop.run_column(&x0, &mut out) {
            err = Some(e);
        }
        std::hint::black_box(&out);
    });
    err.map_or(Ok(samples), Err)
}

/// Times a Naive Bayes fit on all nodes with random labels plus scoring of every node.
pub fn time_naive_bayes(h: &Hypergraph, reps: usize, seed: u64) -> Result<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nodes: Vec<usize> = (0..h.n_nodes()).collect();
    let mut labels: Vec<bool> = nodes.iter().map(|_| rng.random_bool(0.5)).collect();
    // guarantee both classes
    labels[0] = true;
    if labels.len() > 1 {
        labels[1] = false;
    }
    let mut err = None;
    let samples = time_micros(reps, || match nb_fit(h, &nodes, &labels, DEFAULT_SMOOTHING) {
        Ok(model) => {
            std::hint::black_box(nb_score(&model, h, &nodes).ok());
        }
        Err(e) => err = Some(e),
    });
    err.map_or(Ok(samples), Err)
}

/// CSP with 1–3 layers and Naive Bayes, `reps` timed runs each.
pub fn run_bench(dataset: &str, h: &Hypergraph, reps: usize, seed: u64) -> Result<BenchReport> {
    let mut rows = Vec::new();
    for layers in 1..=3 {
        let samples = time_csp(h, layers, reps, seed)?;
        rows.push(BenchRow { method: "csp".into(), layers, median_micros: median(&samples), samples_micros: samples });
    }
    let samples = time_naive_bayes(h, reps, seed)?;
    rows.push(BenchRow {
        method: "naive-bayes".into(),
        layers: 0,
        median_micros: median(&samples),
        samples_micros: samples,
    });
    Ok(BenchReport {
        dataset: dataset.to_owned(),
        n_nodes: h.n_nodes(),
        n_edges: h.n_edges(),
        nnz: h.nnz(),
        repetitions: reps,
        rows,
    })
}
