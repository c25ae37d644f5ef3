//! Convolutional signal propagation (CSP).
//!
//! One layer averages the node signal into every hyperedge and then averages
//! the hyperedge signals back into the nodes, `X' = D⁻¹ H B⁻¹ Hᵀ X`. The
//! kernel works directly on the two compressed incidence views; `H B⁻¹ Hᵀ`
//! is never formed.
//!
//! Degree reciprocals follow the pseudo-inverse convention `1/0 = 0`, so an
//! isolated node always ends up with a zero row.

use serde::{Deserialize, Serialize};

use crate::error::{CspError, Result};
use crate::hypergraph::Hypergraph;
use crate::signal::{EdgeSignal, SignalMatrix};

pub mod dense;

/// Placement of the node-degree normalization around `H B⁻¹ Hᵀ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `D⁻¹ H B⁻¹ Hᵀ X`
    Row,
    /// `H B⁻¹ Hᵀ D⁻¹ X`
    Column,
    /// `D^{-1/2} H B⁻¹ Hᵀ D^{-1/2} X`
    Symmetric,
    /// `2α D⁻¹ H B⁻¹ Hᵀ X + (1 − 2α) X`
    Alpha,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::Row, Variant::Column, Variant::Symmetric, Variant::Alpha];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Row => "row",
            Variant::Column => "column",
            Variant::Symmetric => "symmetric",
            Variant::Alpha => "alpha",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = CspError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "row" => Ok(Variant::Row),
            "column" => Ok(Variant::Column),
            "symmetric" => Ok(Variant::Symmetric),
            "alpha" => Ok(Variant::Alpha),
            other => Err(CspError::InvalidConfig(format!("unknown variant {other:?}"))),
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PropagationConfig {
    pub variant: Variant,
    pub layers: usize,
    /// Only read by [`Variant::Alpha`]; must lie in `(0, 1)` there.
    pub alpha: f64,
}

impl Default for PropagationConfig {
    fn default() -> Self {
        Self { variant: Variant::Row, layers: 1, alpha: 0.5 }
    }
}

impl PropagationConfig {
    pub fn new(variant: Variant, layers: usize) -> Self {
        Self { variant, layers, ..Self::default() }
    }

    pub fn alpha(alpha: f64, layers: usize) -> Self {
        Self { variant: Variant::Alpha, layers, alpha }
    }

    pub fn validate(&self) -> Result<()> {
        if self.layers == 0 {
            return Err(CspError::InvalidConfig("layers must be at least 1".into()));
        }
        if self.variant == Variant::Alpha && !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(CspError::InvalidConfig(format!("alpha {} outside (0, 1)", self.alpha)));
        }
        Ok(())
    }
}

#[inline]
fn pinv(deg: usize) -> f64 {
    if deg == 0 {
        0.0
    } else {
        1.0 / deg as f64
    }
}

fn check_nodes(h: &Hypergraph, rows: usize) -> Result<()> {
    if rows != h.n_nodes() {
        return Err(CspError::Shape(format!("signal has {rows} rows, hypergraph has {} nodes", h.n_nodes())));
    }
    Ok(())
}

/// `r_j = mean_{i ∈ v_j} x_i`, one column at a time.
fn edge_mean_into(h: &Hypergraph, x: &[f64], out: &mut [f64]) {
    for (j, slot) in out.iter_mut().enumerate() {
        let members = h.edge_nodes(j);
        let sum: f64 = members.iter().map(|&i| x[i as usize]).fold(0.0, |a, b| a + b);
        *slot = sum / members.len() as f64;
    }
}

/// `out_k = Σ_{j ∋ u_k} r_j`, optionally scaled per node.
fn node_sum_into(h: &Hypergraph, r: &[f64], scale: Option<&[f64]>, out: &mut [f64]) {
    match scale {
        Some(scale) => {
            for (k, slot) in out.iter_mut().enumerate() {
                let sum: f64 = h.node_edges(k).iter().map(|&j| r[j as usize]).fold(0.0, |a, b| a + b);
                *slot = sum * scale[k];
            }
        }
        None => {
            for (k, slot) in out.iter_mut().enumerate() {
                *slot = h.node_edges(k).iter().map(|&j| r[j as usize]).fold(0.0, |a, b| a + b);
            }
        }
    }
}

/// Average each node signal column over the members of every hyperedge.
pub fn edge_aggregate(h: &Hypergraph, x: &SignalMatrix) -> Result<EdgeSignal> {
    check_nodes(h, x.n_rows())?;
    let mut r = EdgeSignal::zeros(h.n_edges(), x.n_cols());
    let m = h.n_edges();
    for (c, out) in r.values_mut().chunks_mut(m.max(1)).take(x.n_cols()).enumerate() {
        edge_mean_into(h, x.column(c), out);
    }
    Ok(r)
}

/// Average hyperedge signals back into their member nodes. Isolated nodes get 0.
pub fn node_aggregate(h: &Hypergraph, r: &EdgeSignal) -> Result<SignalMatrix> {
    if r.n_rows() != h.n_edges() {
        return Err(CspError::Shape(format!(
            "edge signal has {} rows, hypergraph has {} edges",
            r.n_rows(),
            h.n_edges()
        )));
    }
    let inv_deg: Vec<f64> = (0..h.n_nodes()).map(|i| pinv(h.node_degree(i))).collect();
    let n = h.n_nodes();
    let mut x = SignalMatrix::zeros(n, r.n_cols());
    for (c, out) in x.values_mut().chunks_mut(n.max(1)).take(r.n_cols()).enumerate() {
        node_sum_into(h, r.column(c), Some(&inv_deg), out);
    }
    Ok(x)
}

/// Reusable CSP evaluator bound to one hypergraph and one configuration.
///
/// Holds the per-node scale vectors and an `m`-length edge buffer so repeated
/// layers allocate nothing beyond the output matrix.
pub struct Propagator<'h> {
    h: &'h Hypergraph,
    cfg: PropagationConfig,
    /// `deg(u)^-1` for row/alpha and column, `deg(u)^-1/2` for symmetric.
    node_scale: Vec<f64>,
    edge_buf: Vec<f64>,
    node_buf: Vec<f64>,
}

impl<'h> Propagator<'h> {
    pub fn new(h: &'h Hypergraph, cfg: PropagationConfig) -> Result<Self> {
        cfg.validate()?;
        let node_scale = (0..h.n_nodes())
            .map(|i| {
                let inv = pinv(h.node_degree(i));
                if cfg.variant == Variant::Symmetric {
                    inv.sqrt()
                } else {
                    inv
                }
            })
            .collect();
        Ok(Self {
            h,
            cfg,
            node_scale,
            edge_buf: vec![0.0; h.n_edges()],
            node_buf: vec![0.0; h.n_nodes()],
        })
    }

    pub fn config(&self) -> &PropagationConfig {
        &self.cfg
    }

    /// One layer on a single column.
    fn layer_column(&mut self, x: &[f64], out: &mut [f64]) {
        let h = self.h;
        match self.cfg.variant {
            Variant::Row => {
                edge_mean_into(h, x, &mut self.edge_buf);
                node_sum_into(h, &self.edge_buf, Some(&self.node_scale), out);
            }
            Variant::Column => {
                for ((s, &v), &w) in self.node_buf.iter_mut().zip(x).zip(&self.node_scale) {
                    *s = v * w;
                }
                edge_mean_into(h, &self.node_buf, &mut self.edge_buf);
                node_sum_into(h, &self.edge_buf, None, out);
            }
            Variant::Symmetric => {
                for ((s, &v), &w) in self.node_buf.iter_mut().zip(x).zip(&self.node_scale) {
                    *s = v * w;
                }
                edge_mean_into(h, &self.node_buf, &mut self.edge_buf);
                node_sum_into(h, &self.edge_buf, Some(&self.node_scale), out);
            }
            Variant::Alpha => {
                edge_mean_into(h, x, &mut self.edge_buf);
                node_sum_into(h, &self.edge_buf, Some(&self.node_scale), out);
                let a = 2.0 * self.cfg.alpha;
                let b = 1.0 - a;
                for (o, &v) in out.iter_mut().zip(x) {
                    *o = a * *o + b * v;
                }
            }
        }
    }

    /// Apply `layers` CSP layers to `x`.
    pub fn run(&mut self, x: &SignalMatrix) -> Result<SignalMatrix> {
        check_nodes(self.h, x.n_rows())?;
        let n = x.n_rows();
        let mut current = x.clone();
        let mut next = SignalMatrix::zeros(n, x.n_cols());
        for _ in 0..self.cfg.layers {
            for c in 0..x.n_cols() {
                let out = &mut next.values_mut()[c * n..(c + 1) * n];
                self.layer_column(current.column(c), out);
            }
            std::mem::swap(&mut current, &mut next);
        }
        Ok(current)
    }

    /// Propagate a single column held in a plain slice, writing into `out`.
    ///
    /// Same arithmetic as [`Propagator::run`] on a one-column matrix; used by
    /// the evaluation harness to avoid per-cell matrix allocations.
    pub fn run_column(&mut self, x: &[f64], out: &mut Vec<f64>) -> Result<()> {
        check_nodes(self.h, x.len())?;
        let mut current = x.to_vec();
        out.clear();
        out.resize(x.len(), 0.0);
        for _ in 0..self.cfg.layers {
            self.layer_column(&current, out);
            std::mem::swap(&mut current, out);
        }
        std::mem::swap(&mut current, out);
        Ok(())
    }
}

/// A single CSP layer; `cfg.layers` is ignored.
pub fn csp_layer(h: &Hypergraph, x: &SignalMatrix, cfg: &PropagationConfig) -> Result<SignalMatrix> {
    let cfg = PropagationConfig { layers: 1, ..*cfg };
    Propagator::new(h, cfg)?.run(x)
}

/// `X⁽ᴸ⁾` from `X⁽⁰⁾ = x0` by `cfg.layers` applications of [`csp_layer`].
pub fn propagate(h: &Hypergraph, x0: &SignalMatrix, cfg: &PropagationConfig) -> Result<SignalMatrix> {
    Propagator::new(h, *cfg)?.run(x0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::build_hypergraph;

    fn toy() -> Hypergraph {
        build_hypergraph([("u1", "v1"), ("u2", "v1"), ("u2", "v2"), ("u3", "v2")], None).unwrap().0
    }

    fn toy_with_isolated() -> Hypergraph {
        let universe = vec!["u4".to_string()];
        build_hypergraph([("u1", "v1"), ("u2", "v1"), ("u2", "v2"), ("u3", "v2")], Some(&universe))
            .unwrap()
            .0
    }

    fn col(v: &[f64]) -> SignalMatrix {
        SignalMatrix::from_column(v.to_vec()).unwrap()
    }

    #[test]
    fn edge_aggregate_toy() {
        let h = toy();
        let r = edge_aggregate(&h, &col(&[1.0, 0.0, 0.0])).unwrap();
        assert_eq!(r.as_slice(), &[0.5, 0.0]);
        let r = edge_aggregate(&h, &col(&[1.0, 1.0, 1.0])).unwrap();
        assert_eq!(r.as_slice(), &[1.0, 1.0]);
        let r = edge_aggregate(&h, &col(&[0.0; 3])).unwrap();
        assert_eq!(r.as_slice(), &[0.0, 0.0]);
    }

    #[test]
    fn node_aggregate_toy() {
        let h = toy();
        let x = node_aggregate(&h, &EdgeSignal::from_column(vec![0.5, 0.0]).unwrap()).unwrap();
        assert_eq!(x.as_slice(), &[0.5, 0.25, 0.0]);
        let x = node_aggregate(&h, &EdgeSignal::from_column(vec![1.0, 1.0]).unwrap()).unwrap();
        assert_eq!(x.as_slice(), &[1.0, 1.0, 1.0]);
    }

    #[test]
    fn isolated_node_row_is_zero() {
        let h = toy_with_isolated();
        let x = node_aggregate(&h, &EdgeSignal::from_column(vec![3.0, -2.0]).unwrap()).unwrap();
        assert_eq!(x.get(3, 0).to_bits(), 0.0f64.to_bits());
        for v in Variant::ALL {
            // for alpha the residual keeps (1 - 2α)·x, which α = ½ zeroes
            let out = csp_layer(&h, &col(&[1.0, 2.0, 3.0, 4.0]), &PropagationConfig::new(v, 1)).unwrap();
            assert_eq!(out.get(3, 0).to_bits(), 0.0f64.to_bits(), "{v}");
        }
    }

    #[test]
    fn shape_errors() {
        let h = toy();
        assert!(matches!(edge_aggregate(&h, &col(&[1.0, 0.0])), Err(CspError::Shape(_))));
        assert!(matches!(
            node_aggregate(&h, &EdgeSignal::from_column(vec![1.0]).unwrap()),
            Err(CspError::Shape(_))
        ));
        assert!(matches!(csp_layer(&h, &col(&[1.0]), &PropagationConfig::default()), Err(CspError::Shape(_))));
    }

    #[test]
    fn config_validation() {
        let h = toy();
        let x = col(&[1.0, 0.0, 0.0]);
        for bad in [0.0, 1.0, -0.1, 1.5, f64::NAN] {
            let cfg = PropagationConfig::alpha(bad, 1);
            assert!(matches!(csp_layer(&h, &x, &cfg), Err(CspError::InvalidConfig(_))));
        }
        let cfg = PropagationConfig::new(Variant::Row, 0);
        assert!(matches!(propagate(&h, &x, &cfg), Err(CspError::InvalidConfig(_))));
        // alpha is not checked for the other variants
        let cfg = PropagationConfig { variant: Variant::Row, layers: 1, alpha: 7.0 };
        assert!(csp_layer(&h, &x, &cfg).is_ok());
    }

    #[test]
    fn row_layer_toy() {
        let out = csp_layer(&toy(), &col(&[1.0, 0.0, 0.0]), &PropagationConfig::default()).unwrap();
        assert_eq!(out.as_slice(), &[0.5, 0.25, 0.0]);
    }

    #[test]
    fn two_layers_toy() {
        let out = propagate(&toy(), &col(&[1.0, 0.0, 0.0]), &PropagationConfig::new(Variant::Row, 2)).unwrap();
        // M = [[.5,.5,0],[.25,.5,.25],[0,.5,.5]] applied twice to e1
        let expected = [0.375, 0.25, 0.125];
        for (a, b) in out.as_slice().iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn single_layer_propagate_is_bitwise_csp_layer() {
        let h = toy();
        let x = SignalMatrix::from_col_major(3, 2, vec![0.3, 0.9, -1.0, 2.0, 0.0, 5.5]).unwrap();
        for v in Variant::ALL {
            let cfg = PropagationConfig { variant: v, layers: 1, alpha: 0.3 };
            assert_eq!(propagate(&h, &x, &cfg).unwrap(), csp_layer(&h, &x, &cfg).unwrap());
        }
    }

    #[test]
    fn singleton_edges_are_identity() {
        let pairs: Vec<(String, String)> = (0..5).map(|i| (format!("n{i}"), format!("e{i}"))).collect();
        let (h, _) = build_hypergraph(pairs, None).unwrap();
        let x = col(&[0.1, -3.0, 2.5, 0.0, 7.0]);
        for v in [Variant::Row, Variant::Column, Variant::Symmetric] {
            let out = csp_layer(&h, &x, &PropagationConfig::new(v, 1)).unwrap();
            assert_eq!(out, x, "{v}");
        }
    }

    #[test]
    fn constant_signal_is_fixed_point() {
        let h = toy();
        let x = col(&[2.5; 3]);
        for layers in 1..=5 {
            let out = propagate(&h, &x, &PropagationConfig::new(Variant::Row, layers)).unwrap();
            assert!(out.max_abs_diff(&x) < 1e-12);
        }
    }

    #[test]
    fn run_column_matches_run() {
        let h = toy_with_isolated();
        let x = [0.2, 0.7, 0.0, 1.0];
        for v in Variant::ALL {
            let cfg = PropagationConfig { variant: v, layers: 3, alpha: 0.35 };
            let mut p = Propagator::new(&h, cfg).unwrap();
            let full = p.run(&col(&x)).unwrap();
            let mut out = Vec::new();
            p.run_column(&x, &mut out).unwrap();
            assert_eq!(full.as_slice(), out.as_slice());
        }
    }

    #[test]
    fn variant_parse_roundtrip() {
        for v in Variant::ALL {
            assert_eq!(v.name().parse::<Variant>().unwrap(), v);
        }
        assert!("diag".parse::<Variant>().is_err());
    }
}
