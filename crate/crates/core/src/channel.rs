//! Shannon channels `P(y|x)` and semantic channels `T(θ|x)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::pmf::SUM_TOLERANCE;
use crate::truth::{truth_from_spec, TruthSpec};

/// Row-stochastic `n_x × n_y` matrix; row `i` is `P(y|x_i)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShannonChannel {
    n_x: usize,
    n_y: usize,
    data: Vec<f64>,
}

impl ShannonChannel {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n_x = rows.len();
        let n_y = rows.first().map_or(0, Vec::len);
        if n_x == 0 || n_y == 0 {
            return Err(Error::InvalidArgument("channel must be non-empty".into()));
        }
        let mut data = Vec::with_capacity(n_x * n_y);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n_y {
                return Err(Error::ShapeMismatch { expected: n_y, got: row.len() });
            }
            if row.iter().any(|v| !v.is_finite() || *v < 0.0) {
                return Err(Error::InvalidArgument(format!("channel row {i} has a negative entry")));
            }
            let total: f64 = row.iter().sum();
            if (total - 1.0).abs() > SUM_TOLERANCE {
                return Err(Error::InvalidArgument(format!("channel row {i} sums to {total}")));
            }
            data.extend(row);
        }
        Ok(Self { n_x, n_y, data })
    }

    /// Builds a channel from row-major data already known to be row-stochastic.
    pub(crate) fn from_raw(n_x: usize, n_y: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), n_x * n_y);
        Self { n_x, n_y, data }
    }

    /// Every row equal to `row`.
    pub fn constant(n_x: usize, row: &[f64]) -> Result<Self> {
        Self::from_rows(vec![row.to_vec(); n_x])
    }

    pub fn n_x(&self) -> usize {
        self.n_x
    }

    pub fn n_y(&self) -> usize {
        self.n_y
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n_y + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n_y..(i + 1) * self.n_y]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.n_y)
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows().map(|r| r[j]).collect()
    }
}

/// `n_x × n_y` matrix of truth values; column `j` is the truth function of goal `j`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SemanticChannel {
    n_x: usize,
    n_y: usize,
    data: Vec<f64>,
}

impl SemanticChannel {
    pub fn from_columns(columns: Vec<Vec<f64>>) -> Result<Self> {
        let n_y = columns.len();
        let n_x = columns.first().map_or(0, Vec::len);
        if n_x == 0 || n_y == 0 {
            return Err(Error::InvalidArgument("semantic channel must be non-empty".into()));
        }
        for (j, col) in columns.iter().enumerate() {
            if col.len() != n_x {
                return Err(Error::ShapeMismatch { expected: n_x, got: col.len() });
            }
            if col.iter().any(|v| !(0.0..=1.0).contains(v)) {
                return Err(Error::InvalidArgument(format!("truth column {j} leaves [0, 1]")));
            }
            if !col.iter().any(|v| *v > 0.0) {
                return Err(Error::UnsatisfiableGoal { goal: j });
            }
        }
        let mut data = vec![0.0; n_x * n_y];
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                data[i * n_y + j] = *v;
            }
        }
        Ok(Self { n_x, n_y, data })
    }

    pub fn from_specs(specs: &[TruthSpec], grid: &Grid) -> Result<Self> {
        let cols = specs.iter().map(|s| truth_from_spec(s, grid)).collect::<Result<Vec<_>>>()?;
        Self::from_columns(cols)
    }

    pub fn n_x(&self) -> usize {
        self.n_x
    }

    pub fn n_y(&self) -> usize {
        self.n_y
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n_y + j]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.n_x).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<f64>> {
        (0..self.n_y).map(|j| self.column(j)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn channel_rows_must_be_stochastic() {
        assert!(ShannonChannel::from_rows(vec![vec![0.5, 0.6]]).is_err());
        assert!(ShannonChannel::from_rows(vec![vec![1.0, 0.0], vec![0.5]]).is_err());
        let ch = ShannonChannel::from_rows(vec![vec![0.9, 0.1], vec![0.1, 0.9]]).unwrap();
        assert_eq!(ch.column(1), vec![0.1, 0.9]);
        assert_eq!(ch.row(1), &[0.1, 0.9]);
    }

    #[test]
    fn semantic_columns_checked() {
        assert_eq!(
            SemanticChannel::from_columns(vec![vec![1.0, 0.5], vec![0.0, 0.0]]),
            Err(Error::UnsatisfiableGoal { goal: 1 })
        );
        assert!(SemanticChannel::from_columns(vec![vec![1.2, 0.5]]).is_err());
        let sem = SemanticChannel::from_columns(vec![vec![1.0, 0.5, 0.0], vec![0.2, 0.3, 1.0]]).unwrap();
        assert_eq!(sem.get(2, 1), 1.0);
        assert_eq!(sem.column(0), vec![1.0, 0.5, 0.0]);
    }
}
