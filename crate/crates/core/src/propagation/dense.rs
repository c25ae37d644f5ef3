//! Dense matrix route to a CSP layer, for equivalence testing only.
//!
//! Materializes `H`, `D⁻¹`, `B⁻¹` (and `D^{-1/2}`) as dense matrices and
//! multiplies them out literally. It shares no code with the sparse kernel.

use crate::error::{CspError, Result};
use crate::hypergraph::Hypergraph;
use crate::propagation::{PropagationConfig, Variant};
use crate::signal::SignalMatrix;

/// Upper bound on `n·m` for dense materialization.
pub const DENSE_CELL_LIMIT: usize = 1_000_000;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * s).collect() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.data.iter().zip(&rhs.data).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    fn from_signal(x: &SignalMatrix) -> Self {
        let mut m = Self::zeros(x.n_rows(), x.n_cols());
        for i in 0..x.n_rows() {
            for j in 0..x.n_cols() {
                m[(i, j)] = x.get(i, j);
            }
        }
        m
    }

    fn into_signal(self) -> SignalMatrix {
        let mut x = SignalMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                x.set(i, j, self[(i, j)]);
            }
        }
        x
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

fn guard(h: &Hypergraph) -> Result<()> {
    let cells = h.n_nodes().saturating_mul(h.n_edges());
    if cells > DENSE_CELL_LIMIT {
        return Err(CspError::SizeGuard { n_nodes: h.n_nodes(), n_edges: h.n_edges(), limit: DENSE_CELL_LIMIT });
    }
    Ok(())
}

fn recip_or_zero(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        1.0 / v
    }
}

/// Dense incidence matrix `H ∈ {0,1}^{n×m}`.
pub fn incidence_matrix(h: &Hypergraph) -> Result<DenseMatrix> {
    guard(h)?;
    let mut m = DenseMatrix::zeros(h.n_nodes(), h.n_edges());
    for i in 0..h.n_nodes() {
        for &j in h.node_edges(i) {
            m[(i, j as usize)] = 1.0;
        }
    }
    Ok(m)
}

/// `(D, B)` as dense diagonals, recomputed from row and column sums of `H`.
fn degree_diagonals(hm: &DenseMatrix) -> (Vec<f64>, Vec<f64>) {
    let mut d = vec![0.0; hm.rows];
    let mut b = vec![0.0; hm.cols];
    for i in 0..hm.rows {
        for j in 0..hm.cols {
            d[i] += hm[(i, j)];
            b[j] += hm[(i, j)];
        }
    }
    (d, b)
}

/// `H B⁻¹ Hᵀ`, the hypergraph adjacency normalized by hyperedge degrees.
pub fn hypergraph_adjacency(h: &Hypergraph) -> Result<DenseMatrix> {
    let hm = incidence_matrix(h)?;
    let (_, b) = degree_diagonals(&hm);
    let b_inv = DenseMatrix::diagonal(&b.iter().map(|&v| recip_or_zero(v)).collect::<Vec<_>>());
    Ok(hm.matmul(&b_inv).matmul(&hm.transpose()))
}

/// The full `n×n` operator of one layer for `cfg.variant`.
pub fn layer_operator(h: &Hypergraph, cfg: &PropagationConfig) -> Result<DenseMatrix> {
    let hm = incidence_matrix(h)?;
    let (d, b) = degree_diagonals(&hm);
    let d_inv = DenseMatrix::diagonal(&d.iter().map(|&v| recip_or_zero(v)).collect::<Vec<_>>());
    let d_inv_sqrt = DenseMatrix::diagonal(&d.iter().map(|&v| recip_or_zero(v).sqrt()).collect::<Vec<_>>());
    let b_inv = DenseMatrix::diagonal(&b.iter().map(|&v| recip_or_zero(v)).collect::<Vec<_>>());
    let kernel = hm.matmul(&b_inv).matmul(&hm.transpose());
    Ok(match cfg.variant {
        Variant::Row => d_inv.matmul(&kernel),
        Variant::Column => kernel.matmul(&d_inv),
        Variant::Symmetric => d_inv_sqrt.matmul(&kernel).matmul(&d_inv_sqrt),
        Variant::Alpha => d_inv
            .matmul(&kernel)
            .scale(2.0 * cfg.alpha)
            .add(&DenseMatrix::identity(h.n_nodes()).scale(1.0 - 2.0 * cfg.alpha)),
    })
}

/// One CSP layer through explicit dense products. Reference only.
pub fn dense_csp_layer(h: &Hypergraph, x: &SignalMatrix, cfg: &PropagationConfig) -> Result<SignalMatrix> {
    cfg.validate()?;
    if x.n_rows() != h.n_nodes() {
        return Err(CspError::Shape(format!("signal has {} rows, hypergraph has {} nodes", x.n_rows(), h.n_nodes())));
    }
    let op = layer_operator(h, cfg)?;
    Ok(op.matmul(&DenseMatrix::from_signal(x)).into_signal())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::build_hypergraph;

    #[test]
    fn toy_operator() {
        let (h, _) = build_hypergraph([("u1", "v1"), ("u2", "v1"), ("u2", "v2"), ("u3", "v2")], None).unwrap();
        let op = layer_operator(&h, &PropagationConfig::default()).unwrap();
        let expected = [0.5, 0.5, 0.0, 0.25, 0.5, 0.25, 0.0, 0.5, 0.5];
        assert_eq!(op.data, expected);
    }

    #[test]
    fn identity_hypergraph() {
        let pairs: Vec<(String, String)> = (0..4).map(|i| (format!("n{i}"), format!("e{i}"))).collect();
        let (h, _) = build_hypergraph(pairs, None).unwrap();
        let op = layer_operator(&h, &PropagationConfig::default()).unwrap();
        assert_eq!(op, DenseMatrix::identity(4));
    }

    #[test]
    fn guard_trips() {
        let pairs: Vec<(u32, u32)> = (0..1001u32).map(|i| (i, i)).collect();
        let h = Hypergraph::from_index_pairs(1001, 1001, &pairs).unwrap();
        let x = SignalMatrix::zeros(1001, 1);
        assert!(matches!(
            dense_csp_layer(&h, &x, &PropagationConfig::default()),
            Err(CspError::SizeGuard { .. })
        ));
    }
}
