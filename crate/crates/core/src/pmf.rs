//! Probability mass functions, priors over the grid, and KL divergence.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Grid;

/// Tolerance for the sum-to-one invariant.
pub const SUM_TOLERANCE: f64 = 1e-9;

/// A probability mass function over a finite index set (grid points or actions).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Pmf {
    weights: Vec<f64>,
}

impl Pmf {
    /// Validates an already normalized weight vector.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidArgument("pmf must have at least one weight".into()));
        }
        if let Some(i) = weights.iter().position(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidArgument(format!(
                "pmf weight {i} is negative or non-finite: {}",
                weights[i]
            )));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidArgument(format!("pmf weights sum to {total}, not 1")));
        }
        Ok(Self { weights })
    }

    /// Normalizes nonnegative weights. Fails with [`Error::DegeneratePrior`] on zero mass.
    pub fn normalized(mut weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidArgument("pmf must have at least one weight".into()));
        }
        if let Some(i) = weights.iter().position(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidArgument(format!(
                "weight {i} is negative or non-finite: {}",
                weights[i]
            )));
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 || !total.is_finite() {
            return Err(Error::DegeneratePrior);
        }
        weights.iter_mut().for_each(|w| *w /= total);
        Ok(Self { weights })
    }

    /// Normalizes `exp(log_weights)` with a max shift.
    pub fn from_log_weights(log_weights: &[f64]) -> Result<Self> {
        let max = log_weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if !max.is_finite() {
            return Err(Error::DegeneratePrior);
        }
        Self::normalized(log_weights.iter().map(|l| (l - max).exp()).collect())
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("uniform pmf over zero outcomes".into()));
        }
        Ok(Self { weights: vec![1.0 / n as f64; n] })
    }

    pub fn point_mass(n: usize, at: usize) -> Result<Self> {
        if at >= n {
            return Err(Error::InvalidArgument(format!("point mass index {at} out of range {n}")));
        }
        let mut weights = vec![0.0; n];
        weights[at] = 1.0;
        Ok(Self { weights })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn into_weights(self) -> Vec<f64> {
        self.weights
    }

    pub(crate) fn check_len(&self, expected: usize) -> Result<()> {
        if self.len() != expected {
            return Err(Error::ShapeMismatch { expected, got: self.len() });
        }
        Ok(())
    }

    /// Mean of the grid values under this pmf.
    pub fn mean(&self, grid: &Grid) -> Result<f64> {
        self.check_len(grid.len())?;
        Ok(self.weights.iter().zip(grid.points()).map(|(w, x)| w * x).sum())
    }

    /// Population variance of the grid values under this pmf.
    pub fn variance(&self, grid: &Grid) -> Result<f64> {
        let mu = self.mean(grid)?;
        Ok(self.weights.iter().zip(grid.points()).map(|(w, x)| w * (x - mu).powi(2)).sum())
    }

    /// Shannon entropy in bits.
    pub fn entropy(&self) -> f64 {
        -self.weights.iter().filter(|w| **w > 0.0).map(|w| w * w.log2()).sum::<f64>()
    }

    /// L1 distance between two pmfs of equal length.
    pub fn l1_distance(&self, other: &Pmf) -> Result<f64> {
        other.check_len(self.len())?;
        Ok(self.weights.iter().zip(&other.weights).map(|(a, b)| (a - b).abs()).sum())
    }
}

impl<'de> Deserialize<'de> for Pmf {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            weights: Vec<f64>,
        }
        let raw = Raw::deserialize(d)?;
        Pmf::new(raw.weights).map_err(serde::de::Error::custom)
    }
}

/// How a prior over the grid is specified.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PriorSpec {
    /// Normal density sampled at the grid points, truncated to the grid and renormalized.
    NormalTruncated { mu: f64, sigma: f64 },
    /// Explicit nonnegative weights, normalized on use.
    Tabulated { weights: Vec<f64> },
}

pub fn pmf_from_spec(spec: &PriorSpec, grid: &Grid) -> Result<Pmf> {
    match spec {
        PriorSpec::NormalTruncated { mu, sigma } => normal_on_grid(*mu, *sigma, grid),
        PriorSpec::Tabulated { weights } => {
            if weights.len() != grid.len() {
                return Err(Error::ShapeMismatch { expected: grid.len(), got: weights.len() });
            }
            Pmf::normalized(weights.clone())
        }
    }
}

/// Normal density with the given moments, sampled on the grid and renormalized.
pub fn normal_on_grid(mu: f64, sigma: f64, grid: &Grid) -> Result<Pmf> {
    if !(sigma > 0.0 && sigma.is_finite() && mu.is_finite()) {
        return Err(Error::InvalidArgument(format!("normal needs finite mu and sigma > 0, got ({mu}, {sigma})")));
    }
    let log_w: Vec<f64> =
        grid.points().iter().map(|x| -(x - mu).powi(2) / (2.0 * sigma * sigma)).collect();
    // A grid far outside the support underflows every weight.
    let max = log_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max < -700.0 {
        return Err(Error::DegeneratePrior);
    }
    Pmf::from_log_weights(&log_w)
}

/// `D(p || q)` in bits, or `+inf` when `q` is zero somewhere `p` is positive.
pub fn kl_divergence(p: &Pmf, q: &Pmf) -> Result<f64> {
    match try_kl_divergence(p, q) {
        Err(Error::InfiniteDivergence { .. }) => Ok(f64::INFINITY),
        other => other,
    }
}

/// Like [`kl_divergence`] but reports the infinite case as an error.
pub fn try_kl_divergence(p: &Pmf, q: &Pmf) -> Result<f64> {
    q.check_len(p.len())?;
    let mut nats = 0.0;
    for (i, (&pi, &qi)) in p.weights().iter().zip(q.weights()).enumerate() {
        if pi == 0.0 {
            continue;
        }
        if qi == 0.0 {
            return Err(Error::InfiniteDivergence { index: i });
        }
        nats += pi * (pi / qi).ln();
    }
    // Rounding can push an identical pair a hair below zero.
    Ok((nats / std::f64::consts::LN_2).max(0.0))
}
