//! Immutable hypergraph built from `(node, edge)` incidence pairs.
//!
//! Both views of the binary incidence matrix are kept in compressed form:
//! the node view lists the hyperedges incident to every node, the edge view
//! lists the member nodes of every hyperedge. Degrees are the slice lengths.

use std::collections::HashMap;

use crate::error::{CspError, Result};

/// Compressed sparse rows over `u32` column indices.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Adjacency {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Adjacency {
    #[inline]
    fn row(&self, i: usize) -> &[u32] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    #[inline]
    fn len_of(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    fn rows(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Transpose into an adjacency with `n_cols` rows. Rows of the result come
    /// out sorted because the source rows are visited in increasing order.
    fn transpose(&self, n_cols: usize) -> Adjacency {
        let mut counts = vec![0usize; n_cols + 1];
        for &t in &self.targets {
            counts[t as usize + 1] += 1;
        }
        for i in 0..n_cols {
            counts[i + 1] += counts[i];
        }
        let offsets = counts.clone();
        let mut cursor = counts;
        let mut targets = vec![0u32; self.targets.len()];
        for r in 0..self.rows() {
            for &t in self.row(r) {
                let slot = &mut cursor[t as usize];
                targets[*slot] = r as u32;
                *slot += 1;
            }
        }
        Adjacency { offsets, targets }
    }
}

/// Binary incidence structure `H` with its node degrees `D` and hyperedge
/// degrees `B`.
///
/// Hyperedges always have at least one member. Nodes may be isolated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    node_view: Adjacency,
    edge_view: Adjacency,
}

impl Hypergraph {
    /// Build from dense index pairs. Duplicates collapse, order does not matter.
    ///
    /// Every edge index in `0..n_edges` must occur in at least one pair and
    /// every index must be in range.
    pub fn from_index_pairs(n_nodes: usize, n_edges: usize, pairs: &[(u32, u32)]) -> Result<Self> {
        if pairs.is_empty() {
            return Err(CspError::EmptyGraph);
        }
        if n_nodes > u32::MAX as usize || n_edges > u32::MAX as usize {
            return Err(CspError::Shape("index space exceeds u32".into()));
        }
        // counting sort by edge, then sort + dedup each edge's members
        let mut offsets = vec![0usize; n_edges + 1];
        for &(node, edge) in pairs {
            if node as usize >= n_nodes {
                return Err(CspError::Shape(format!("node index {node} out of range {n_nodes}")));
            }
            if edge as usize >= n_edges {
                return Err(CspError::Shape(format!("edge index {edge} out of range {n_edges}")));
            }
            offsets[edge as usize + 1] += 1;
        }
        for j in 0..n_edges {
            offsets[j + 1] += offsets[j];
        }
        let mut cursor = offsets.clone();
        let mut targets = vec![0u32; pairs.len()];
        for &(node, edge) in pairs {
            let slot = &mut cursor[edge as usize];
            targets[*slot] = node;
            *slot += 1;
        }

        let mut write = 0usize;
        let mut compact_offsets = Vec::with_capacity(n_edges + 1);
        compact_offsets.push(0);
        for j in 0..n_edges {
            let (start, end) = (offsets[j], offsets[j + 1]);
            if start == end {
                return Err(CspError::EmptyEdge(j));
            }
            targets[start..end].sort_unstable();
            let mut prev = None;
            for k in start..end {
                let v = targets[k];
                if prev != Some(v) {
                    targets[write] = v;
                    write += 1;
                    prev = Some(v);
                }
            }
            compact_offsets.push(write);
        }
        targets.truncate(write);
        targets.shrink_to_fit();

        let edge_view = Adjacency { offsets: compact_offsets, targets };
        let node_view = edge_view.transpose(n_nodes);
        Ok(Self { node_view, edge_view })
    }

    pub fn n_nodes(&self) -> usize {
        self.node_view.rows()
    }

    pub fn n_edges(&self) -> usize {
        self.edge_view.rows()
    }

    /// Number of incidences, `Σ deg(u) = Σ deg(v)`.
    pub fn nnz(&self) -> usize {
        self.edge_view.targets.len()
    }

    /// Sorted hyperedges containing node `i`.
    #[inline]
    pub fn node_edges(&self, i: usize) -> &[u32] {
        self.node_view.row(i)
    }

    /// Sorted member nodes of hyperedge `j`.
    #[inline]
    pub fn edge_nodes(&self, j: usize) -> &[u32] {
        self.edge_view.row(j)
    }

    #[inline]
    pub fn node_degree(&self, i: usize) -> usize {
        self.node_view.len_of(i)
    }

    #[inline]
    pub fn edge_degree(&self, j: usize) -> usize {
        self.edge_view.len_of(j)
    }

    pub fn node_degrees(&self) -> Vec<usize> {
        (0..self.n_nodes()).map(|i| self.node_degree(i)).collect()
    }

    pub fn edge_degrees(&self) -> Vec<usize> {
        (0..self.n_edges()).map(|j| self.edge_degree(j)).collect()
    }

    pub fn isolated_nodes(&self) -> usize {
        (0..self.n_nodes()).filter(|&i| self.node_degree(i) == 0).count()
    }

    /// Iterate all incidences as `(node, edge)` in edge-major order.
    pub fn incidences(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n_edges()).flat_map(move |j| self.edge_nodes(j).iter().map(move |&i| (i, j as u32)))
    }

    pub fn summary(&self) -> HypergraphSummary {
        let n = self.n_nodes();
        let m = self.n_edges();
        let nnz = self.nnz();
        HypergraphSummary {
            n_nodes: n,
            n_edges: m,
            nnz,
            isolated_nodes: self.isolated_nodes(),
            mean_node_degree: if n == 0 { 0.0 } else { nnz as f64 / n as f64 },
            mean_edge_degree: if m == 0 { 0.0 } else { nnz as f64 / m as f64 },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypergraphSummary {
    pub n_nodes: usize,
    pub n_edges: usize,
    pub nnz: usize,
    pub isolated_nodes: usize,
    pub mean_node_degree: f64,
    pub mean_edge_degree: f64,
}

/// Bijection between external identifiers and dense indices, in order of
/// first appearance.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Interner {
    ids: Vec<String>,
    index: HashMap<String, u32>,
}

impl Interner {
    pub fn intern(&mut self, id: &str) -> u32 {
        if let Some(&ix) = self.index.get(id) {
            return ix;
        }
        let ix = self.ids.len() as u32;
        self.ids.push(id.to_owned());
        self.index.insert(id.to_owned(), ix);
        ix
    }

    pub fn get(&self, id: &str) -> Option<usize> {
        self.index.get(id).map(|&ix| ix as usize)
    }

    pub fn id(&self, ix: usize) -> &str {
        &self.ids[ix]
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IdMaps {
    pub nodes: Interner,
    pub edges: Interner,
}

/// Streaming construction from external identifiers.
#[derive(Debug, Default)]
pub struct HypergraphBuilder {
    ids: IdMaps,
    pairs: Vec<(u32, u32)>,
}

impl HypergraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_pair(&mut self, node: &str, edge: &str) {
        let n = self.ids.nodes.intern(node);
        let e = self.ids.edges.intern(edge);
        self.pairs.push((n, e));
    }

    /// Register a node that may not appear in any incidence pair.
    pub fn add_node(&mut self, node: &str) -> usize {
        self.ids.nodes.intern(node) as usize
    }

    pub fn build(self) -> Result<(Hypergraph, IdMaps)> {
        let h = Hypergraph::from_index_pairs(self.ids.nodes.len(), self.ids.edges.len(), &self.pairs)?;
        Ok((h, self.ids))
    }
}

/// Build a hypergraph from `(node, edge)` identifier pairs, optionally
/// extending the node universe with nodes that have no incidences.
///
/// Universe nodes not seen in `pairs` are appended after all incidence nodes.
pub fn build_hypergraph<I, N, E>(pairs: I, universe: Option<&[String]>) -> Result<(Hypergraph, IdMaps)>
where
    I: IntoIterator<Item = (N, E)>,
    N: AsRef<str>,
    E: AsRef<str>,
{
    let mut builder = HypergraphBuilder::new();
    for (node, edge) in pairs {
        builder.add_pair(node.as_ref(), edge.as_ref());
    }
    if let Some(universe) = universe {
        for node in universe {
            builder.add_node(node);
        }
    }
    builder.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn toy() -> (Hypergraph, IdMaps) {
        build_hypergraph([("a", "e1"), ("b", "e1"), ("b", "e2"), ("c", "e2")], None).unwrap()
    }

    #[test]
    fn toy_degrees() {
        let (h, ids) = toy();
        assert_eq!(h.n_nodes(), 3);
        assert_eq!(h.n_edges(), 2);
        assert_eq!(h.node_degrees(), vec![1, 2, 1]);
        assert_eq!(h.edge_degrees(), vec![2, 2]);
        assert_eq!(h.nnz(), 4);
        assert_eq!(ids.nodes.get("b"), Some(1));
        assert_eq!(ids.edges.id(1), "e2");
        assert_eq!(h.node_edges(1), &[0, 1]);
        assert_eq!(h.edge_nodes(1), &[1, 2]);
    }

    #[test]
    fn duplicates_collapse() {
        let (h, _) = build_hypergraph([("a", "e1"), ("a", "e1")], None).unwrap();
        assert_eq!((h.n_nodes(), h.n_edges(), h.nnz()), (1, 1, 1));
    }

    #[test]
    fn empty_stream_is_an_error() {
        let pairs: Vec<(&str, &str)> = vec![];
        assert!(matches!(build_hypergraph(pairs, None), Err(CspError::EmptyGraph)));
    }

    #[test]
    fn universe_adds_isolated_nodes() {
        let universe: Vec<String> = ["c", "d", "a"].iter().map(|s| s.to_string()).collect();
        let (h, ids) = build_hypergraph([("a", "e1"), ("c", "e1")], Some(&universe)).unwrap();
        assert_eq!(h.n_nodes(), 3);
        assert_eq!(ids.nodes.get("d"), Some(2));
        assert_eq!(h.node_degree(2), 0);
        assert_eq!(h.node_edges(2), &[] as &[u32]);
        assert_eq!(h.isolated_nodes(), 1);
    }

    #[test]
    fn index_pairs_reject_empty_edges_and_out_of_range() {
        assert!(matches!(Hypergraph::from_index_pairs(2, 2, &[(0, 0)]), Err(CspError::EmptyEdge(1))));
        assert!(matches!(Hypergraph::from_index_pairs(1, 1, &[(1, 0)]), Err(CspError::Shape(_))));
    }

    fn random_pairs() -> impl Strategy<Value = (usize, usize, Vec<(u32, u32)>)> {
        (1usize..=100, 1usize..=100).prop_flat_map(|(n, m)| {
            let pairs = proptest::collection::vec((0..n as u32, 0..m as u32), 1..400);
            (Just(n), Just(m), pairs)
        })
    }

    /// Relabel edges densely in first-appearance order so every edge is non-empty.
    fn compact(n: usize, pairs: &[(u32, u32)]) -> (usize, usize, Vec<(u32, u32)>) {
        let mut remap = HashMap::new();
        let out: Vec<_> = pairs
            .iter()
            .map(|&(u, e)| {
                let k = remap.len() as u32;
                (u, *remap.entry(e).or_insert(k))
            })
            .collect();
        (n, remap.len(), out)
    }

    proptest! {
        #[test]
        fn views_are_transposes((n, _m, raw) in random_pairs()) {
            let (n, m, pairs) = compact(n, &raw);
            let h = Hypergraph::from_index_pairs(n, m, &pairs).unwrap();
            for j in 0..m {
                for &i in h.edge_nodes(j) {
                    prop_assert!(h.node_edges(i as usize).binary_search(&(j as u32)).is_ok());
                }
            }
            for i in 0..n {
                for &j in h.node_edges(i) {
                    prop_assert!(h.edge_nodes(j as usize).binary_search(&(i as u32)).is_ok());
                }
            }
            let rebuilt = h.node_view.transpose(m);
            prop_assert_eq!(&rebuilt, &h.edge_view);
            let again = h.edge_view.transpose(n);
            prop_assert_eq!(&again, &h.node_view);
        }

        #[test]
        fn degree_sums_match((n, _m, raw) in random_pairs()) {
            let (n, m, pairs) = compact(n, &raw);
            let h = Hypergraph::from_index_pairs(n, m, &pairs).unwrap();
            let su: usize = h.node_degrees().iter().sum();
            let sv: usize = h.edge_degrees().iter().sum();
            prop_assert_eq!(su, h.nnz());
            prop_assert_eq!(sv, h.nnz());
            let mut uniq = pairs.clone();
            uniq.sort_unstable();
            uniq.dedup();
            prop_assert_eq!(uniq.len(), h.nnz());
        }

        #[test]
        fn order_insensitive((n, _m, raw) in random_pairs(), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let (n, m, pairs) = compact(n, &raw);
            let mut shuffled = pairs.clone();
            shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let a = Hypergraph::from_index_pairs(n, m, &pairs).unwrap();
            let b = Hypergraph::from_index_pairs(n, m, &shuffled).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
