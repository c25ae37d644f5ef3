//! Seeded synthetic hypergraphs and toy labelings for tests and benchmarks.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CspError, Result};
use crate::hypergraph::Hypergraph;
use crate::labels::Labels;

/// Exactly `nnz` distinct incidences over `n` nodes and `m` non-empty edges.
///
/// Edge `j` first receives one uniformly random member; the remaining
/// incidences are uniform over all `(node, edge)` cells.
pub fn random_hypergraph(n: usize, m: usize, nnz: usize, seed: u64) -> Result<Hypergraph> {
    if n == 0 || m == 0 {
        return Err(CspError::EmptyGraph);
    }
    if nnz < m || nnz as u128 > n as u128 * m as u128 {
        return Err(CspError::InvalidConfig(format!("nnz {nnz} must lie in [{m}, {}]", n as u128 * m as u128)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::with_capacity(nnz);
    let mut pairs = Vec::with_capacity(nnz);
    for j in 0..m as u32 {
        let i = rng.random_range(0..n as u32);
        seen.insert((i, j));
        pairs.push((i, j));
    }
    while pairs.len() < nnz {
        let p = (rng.random_range(0..n as u32), rng.random_range(0..m as u32));
        if seen.insert(p) {
            pairs.push(p);
        }
    }
    Hypergraph::from_index_pairs(n, m, &pairs)
}

/// Every `(node, edge)` cell included with probability `p`; empty edges are
/// dropped and the rest renumbered. Retries until at least one edge survives.
pub fn bernoulli_hypergraph(n: usize, m: usize, p: f64, rng: &mut impl Rng) -> Hypergraph {
    loop {
        let mut pairs = Vec::new();
        let mut next_edge = 0u32;
        for _ in 0..m {
            let before = pairs.len();
            for i in 0..n as u32 {
                if rng.random_bool(p) {
                    pairs.push((i, next_edge));
                }
            }
            if pairs.len() > before {
                next_edge += 1;
            }
        }
        if next_edge > 0 {
            return Hypergraph::from_index_pairs(n, next_edge as usize, &pairs).expect("edges are non-empty");
        }
    }
}

/// Simple graph on `n ≥ 2` nodes with `extra` edges beyond a random spanning
/// tree, as a hypergraph whose edges all have degree 2. No node is isolated.
pub fn random_ordinary_graph(n: usize, extra: usize, rng: &mut impl Rng) -> (Hypergraph, Vec<(u32, u32)>) {
    assert!(n >= 2, "need at least two nodes");
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut seen = HashSet::new();
    for i in 1..n as u32 {
        let j = rng.random_range(0..i);
        seen.insert((j, i));
        edges.push((j, i));
    }
    let max_edges = n * (n - 1) / 2;
    let target = (n - 1 + extra).min(max_edges);
    while edges.len() < target {
        let a = rng.random_range(0..n as u32);
        let b = rng.random_range(0..n as u32);
        if a == b {
            continue;
        }
        let e = (a.min(b), a.max(b));
        if seen.insert(e) {
            edges.push(e);
        }
    }
    let pairs: Vec<(u32, u32)> =
        edges.iter().enumerate().flat_map(|(k, &(a, b))| [(a, k as u32), (b, k as u32)]).collect();
    (Hypergraph::from_index_pairs(n, edges.len(), &pairs).expect("valid graph"), edges)
}

/// Two disjoint blocks of `block` nodes each, covered by `edges_per_block`
/// random hyperedges of size `edge_size` plus a chain that keeps every node
/// covered. Labels: block index.
pub fn separable_blocks(block: usize, edges_per_block: usize, edge_size: usize, seed: u64) -> (Hypergraph, Labels) {
    assert!(block >= 2 && edge_size >= 2 && edge_size <= block);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    let mut edge = 0u32;
    for b in 0..2 {
        let base = (b * block) as u32;
        for i in 0..block as u32 - 1 {
            pairs.push((base + i, edge));
            pairs.push((base + i + 1, edge));
            edge += 1;
        }
        let mut members: Vec<u32> = (0..block as u32).collect();
        for _ in 0..edges_per_block {
            members.shuffle(&mut rng);
            for &i in &members[..edge_size] {
                pairs.push((base + i, edge));
            }
            edge += 1;
        }
    }
    let h = Hypergraph::from_index_pairs(2 * block, edge as usize, &pairs).expect("valid blocks");
    let labels: Vec<usize> = (0..2 * block).map(|i| i / block).collect();
    (h, Labels::from_dense(&labels))
}

/// Uniform labels in `0..classes`, independent of any structure.
pub fn random_labels(n: usize, classes: usize, seed: u64) -> Labels {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let ids: Vec<usize> = (0..n).map(|_| rng.random_range(0..classes)).collect();
        let labels = Labels::from_dense(&ids);
        if labels.n_classes() == classes {
            return labels;
        }
    }
}

/// Binary labels with positives drawn at rate `positive_rate`.
pub fn bernoulli_labels(n: usize, positive_rate: f64, seed: u64) -> Labels {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ids: Vec<usize> = (0..n).map(|_| usize::from(rng.random_bool(positive_rate))).collect();
    Labels::new(
        vec!["0".into(), "1".into()],
        ids.into_iter().map(|c| vec![c as u32]).collect(),
    )
    .expect("two classes")
}
