#![allow(dead_code)]

use csp_core::{Hypergraph, SignalMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// n ≤ 50, m ≤ 30, inclusion probability 0.2; may contain isolated nodes.
pub fn small_hypergraph(rng: &mut ChaCha8Rng) -> Hypergraph {
    let n = rng.random_range(1..=50);
    let m = rng.random_range(1..=30);
    csp_core::synth::bernoulli_hypergraph(n, m, 0.2, rng)
}

/// Like [`small_hypergraph`] but every node belongs to at least one edge.
pub fn covered_hypergraph(rng: &mut ChaCha8Rng) -> Hypergraph {
    let h = small_hypergraph(rng);
    let mut pairs: Vec<(u32, u32)> = h.incidences().collect();
    for i in 0..h.n_nodes() {
        if h.node_degree(i) == 0 {
            pairs.push((i as u32, rng.random_range(0..h.n_edges() as u32)));
        }
    }
    Hypergraph::from_index_pairs(h.n_nodes(), h.n_edges(), &pairs).unwrap()
}

pub fn random_signal(rng: &mut ChaCha8Rng, n: usize, d: usize) -> SignalMatrix {
    let values = (0..n * d).map(|_| rng.random_range(-2.0..2.0)).collect();
    SignalMatrix::from_col_major(n, d, values).unwrap()
}

/// Write `incidence.csv` and `labels.csv` for `h` and `labels` into `dir`,
/// naming node `i` as `n{i}` and edge `e` as `e{e}`.
pub fn write_dataset(dir: &std::path::Path, h: &Hypergraph, labels: &csp_core::Labels) {
    let mut inc = String::from("nodeId,edgeId\n");
    for (i, e) in h.incidences() {
        inc.push_str(&format!("n{i},e{e}\n"));
    }
    std::fs::write(dir.join("incidence.csv"), inc).unwrap();
    let mut lab = String::from("nodeId,label\n");
    for i in 0..labels.n_nodes() {
        for &c in labels.classes_of(i) {
            lab.push_str(&format!("n{i},{}\n", labels.class_name(c as usize)));
        }
    }
    std::fs::write(dir.join("labels.csv"), lab).unwrap();
}
