//! Dense column-major signals over nodes and hyperedges.

use crate::error::{CspError, Result};

macro_rules! column_major {
    ($name:ident, $rows:literal) => {
        impl $name {
            pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
                Self { n_rows, n_cols, values: vec![0.0; n_rows * n_cols] }
            }

            /// Column-major `values` of length `n_rows * n_cols`, all finite.
            pub fn from_col_major(n_rows: usize, n_cols: usize, values: Vec<f64>) -> Result<Self> {
                if values.len() != n_rows * n_cols {
                    return Err(CspError::Shape(format!(
                        "{} values for a {}x{} matrix",
                        values.len(),
                        n_rows,
                        n_cols
                    )));
                }
                if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
                    return Err(CspError::Shape(format!(
                        "non-finite entry at {} {}, column {}",
                        $rows,
                        pos % n_rows.max(1),
                        pos / n_rows.max(1)
                    )));
                }
                Ok(Self { n_rows, n_cols, values })
            }

            pub fn from_column(values: Vec<f64>) -> Result<Self> {
                let n = values.len();
                Self::from_col_major(n, 1, values)
            }

            pub fn n_rows(&self) -> usize {
                self.n_rows
            }

            pub fn n_cols(&self) -> usize {
                self.n_cols
            }

            #[inline]
            pub fn get(&self, row: usize, col: usize) -> f64 {
                self.values[col * self.n_rows + row]
            }

            #[inline]
            pub fn set(&mut self, row: usize, col: usize, v: f64) {
                self.values[col * self.n_rows + row] = v;
            }

            #[inline]
            pub fn column(&self, col: usize) -> &[f64] {
                &self.values[col * self.n_rows..(col + 1) * self.n_rows]
            }

            #[inline]
            pub fn column_mut(&mut self, col: usize) -> &mut [f64] {
                &mut self.values[col * self.n_rows..(col + 1) * self.n_rows]
            }

            pub fn columns(&self) -> impl Iterator<Item = &[f64]> {
                (0..self.n_cols).map(move |c| self.column(c))
            }

            pub fn as_slice(&self) -> &[f64] {
                &self.values
            }

            pub fn into_vec(self) -> Vec<f64> {
                self.values
            }

            /// Largest absolute elementwise difference; `inf` on shape mismatch.
            pub fn max_abs_diff(&self, other: &Self) -> f64 {
                if self.n_rows != other.n_rows || self.n_cols != other.n_cols {
                    return f64::INFINITY;
                }
                self.values
                    .iter()
                    .zip(&other.values)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            }
        }
    };
}

/// Node signal `X ∈ ℝ^{n×d}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalMatrix {
    n_rows: usize,
    n_cols: usize,
    values: Vec<f64>,
}

/// Hyperedge signal `R ∈ ℝ^{m×d}`, the per-edge averages of a node signal.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeSignal {
    n_rows: usize,
    n_cols: usize,
    values: Vec<f64>,
}

column_major!(SignalMatrix, "node");
column_major!(EdgeSignal, "edge");

impl SignalMatrix {
    /// Indicator column: 1 at `rows`, 0 elsewhere.
    pub fn indicator(n_rows: usize, rows: impl IntoIterator<Item = usize>) -> Self {
        let mut x = Self::zeros(n_rows, 1);
        for r in rows {
            x.values[r] = 1.0;
        }
        x
    }

    pub(crate) fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }
}

impl EdgeSignal {
    pub(crate) fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }
}
