//! Logical probability, semantic Bayes, and the semantic information measure.
//!
//! All information quantities are returned in bits. Zero truth values are not
//! clamped here: a sample that puts mass where the truth function vanishes
//! yields `f64::NEG_INFINITY`, the signal for "infinitely false".

use serde::Serialize;

use crate::channel::{SemanticChannel, ShannonChannel};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::pmf::Pmf;
use crate::truth::{truth_from_spec, TruthFamily, TruthSpec};

const LN_2: f64 = std::f64::consts::LN_2;

fn check_truth(truth: &[f64], n: usize) -> Result<()> {
    if truth.len() != n {
        return Err(Error::ShapeMismatch { expected: n, got: truth.len() });
    }
    if truth.iter().any(|t| !(0.0..=1.0).contains(t)) {
        return Err(Error::InvalidArgument("truth values must lie in [0, 1]".into()));
    }
    Ok(())
}

/// `T(θ) = Σ_i P(x_i) T(θ|x_i)`.
pub fn logical_probability(truth: &[f64], prior: &Pmf) -> Result<f64> {
    check_truth(truth, prior.len())?;
    let t: f64 = prior.weights().iter().zip(truth).map(|(p, t)| p * t).sum();
    Ok(t.min(1.0))
}

/// Likelihood `P(x|θ) = T(θ|x) P(x) / T(θ)`.
pub fn semantic_bayes(truth: &[f64], prior: &Pmf) -> Result<Pmf> {
    let logical = logical_probability(truth, prior)?;
    if logical <= 0.0 {
        return Err(Error::UnsatisfiableGoal { goal: 0 });
    }
    Pmf::normalized(prior.weights().iter().zip(truth).map(|(p, t)| p * t / logical).collect())
}

/// Inverse of [`semantic_bayes`]: recovers the truth function whose maximum is 1,
/// together with its logical probability `1 / max_x P(x|θ)/P(x)`.
pub fn truth_from_likelihood(likelihood: &Pmf, prior: &Pmf) -> Result<(Vec<f64>, f64)> {
    likelihood.check_len(prior.len())?;
    let mut ratios = Vec::with_capacity(prior.len());
    for (i, (&l, &p)) in likelihood.weights().iter().zip(prior.weights()).enumerate() {
        match (l > 0.0, p > 0.0) {
            (true, false) => return Err(Error::UndefinedRatio { index: i }),
            (_, true) => ratios.push(l / p),
            (false, false) => ratios.push(0.0),
        }
    }
    // First maximum wins; only its value matters.
    let max = ratios.iter().copied().fold(0.0, f64::max);
    let logical = 1.0 / max;
    let truth = ratios.into_iter().map(|r| (r / max).min(1.0)).collect();
    Ok((truth, logical))
}

/// `I(x_i; θ) = log2 T(θ|x_i) / T(θ)`; `-inf` when the truth value is zero.
pub fn pointwise_info(truth: &[f64], prior: &Pmf, i: usize) -> Result<f64> {
    let logical = logical_probability(truth, prior)?;
    if logical <= 0.0 {
        return Err(Error::UnsatisfiableGoal { goal: 0 });
    }
    let t = *truth
        .get(i)
        .ok_or_else(|| Error::InvalidArgument(format!("index {i} out of range {}", truth.len())))?;
    Ok(if t == 0.0 { f64::NEG_INFINITY } else { (t / logical).log2() })
}

/// Average semantic information `Σ_i sample_i I(x_i; θ)` conveyed about a sample.
pub fn avg_semantic_info(sample: &Pmf, truth: &[f64], prior: &Pmf) -> Result<f64> {
    sample.check_len(prior.len())?;
    let logical = logical_probability(truth, prior)?;
    if logical <= 0.0 {
        return Err(Error::UnsatisfiableGoal { goal: 0 });
    }
    let mut nats = 0.0;
    for (&q, &t) in sample.weights().iter().zip(truth) {
        if q == 0.0 {
            continue;
        }
        if t == 0.0 {
            return Ok(f64::NEG_INFINITY);
        }
        nats += q * (t / logical).ln();
    }
    Ok(nats / LN_2)
}

/// Optimized truth function of label `j`: `P(y_j|x) / max_x P(y_j|x)`.
pub fn truth_from_channel(channel: &ShannonChannel, j: usize) -> Result<Vec<f64>> {
    if j >= channel.n_y() {
        return Err(Error::InvalidArgument(format!("label {j} out of range {}", channel.n_y())));
    }
    let col = channel.column(j);
    let max = col.iter().copied().fold(0.0, f64::max);
    if max <= 0.0 {
        return Err(Error::UnreachableLabel { label: j });
    }
    Ok(col.into_iter().map(|v| v / max).collect())
}

/// Semantic channel matched to a Shannon channel, one column per label.
pub fn matched_semantic_channel(channel: &ShannonChannel) -> Result<SemanticChannel> {
    let cols = (0..channel.n_y()).map(|j| truth_from_channel(channel, j)).collect::<Result<_>>()?;
    SemanticChannel::from_columns(cols)
}

/// Rectangle of parameter values searched by [`fit_truth`].
///
/// For [`TruthFamily::Logistic`] the axes are `(c, k)`, for bell-power `(c, w)`,
/// for the Gaussian bell `(c, sigma)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchBox {
    pub first: (f64, f64),
    pub second: (f64, f64),
}

/// Number of refinement levels in [`fit_truth`].
pub const FIT_LEVELS: usize = 3;
/// Candidates per axis per level in [`fit_truth`].
pub const FIT_POINTS_PER_AXIS: usize = 32;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TruthFit {
    pub spec: TruthSpec,
    /// Achieved objective in bits.
    pub objective: f64,
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let step = if n > 1 { (hi - lo) / (n - 1) as f64 } else { 0.0 };
    (0..n).map(move |i| lo + i as f64 * step)
}

/// Semantic information objective for a candidate truth function; `-inf` when infeasible.
pub fn fit_objective(sample: &Pmf, prior: &Pmf, grid: &Grid, spec: &TruthSpec) -> f64 {
    let Ok(truth) = truth_from_spec(spec, grid) else {
        return f64::NEG_INFINITY;
    };
    avg_semantic_info(sample, &truth, prior).unwrap_or(f64::NEG_INFINITY)
}

/// Fits truth-function parameters maximizing the average semantic information of
/// `sample` by deterministic coarse-to-fine grid search over `search`.
pub fn fit_truth(
    sample: &Pmf,
    prior: &Pmf,
    grid: &Grid,
    family: TruthFamily,
    search: &SearchBox,
) -> Result<TruthFit> {
    sample.check_len(grid.len())?;
    prior.check_len(grid.len())?;
    let ordered = |(a, b): (f64, f64)| a.is_finite() && b.is_finite() && a <= b;
    if !ordered(search.first) || !ordered(search.second) {
        return Err(Error::InvalidArgument("search box bounds must be finite and ordered".into()));
    }

    let (mut a_box, mut b_box) = (search.first, search.second);
    let mut best: Option<(f64, f64, f64)> = None;
    for _ in 0..FIT_LEVELS {
        for a in linspace(a_box.0, a_box.1, FIT_POINTS_PER_AXIS) {
            for b in linspace(b_box.0, b_box.1, FIT_POINTS_PER_AXIS) {
                let obj = fit_objective(sample, prior, grid, &family.instantiate(a, b));
                if obj > f64::NEG_INFINITY && best.is_none_or(|(_, _, o)| obj > o) {
                    best = Some((a, b, obj));
                }
            }
        }
        let Some((a, b, _)) = best else { break };
        let da = (a_box.1 - a_box.0) / (FIT_POINTS_PER_AXIS - 1) as f64;
        let db = (b_box.1 - b_box.0) / (FIT_POINTS_PER_AXIS - 1) as f64;
        // Two lattice steps either side: the objective can have a tilted ridge.
        a_box = ((a - 2.0 * da).max(search.first.0), (a + 2.0 * da).min(search.first.1));
        b_box = ((b - 2.0 * db).max(search.second.0), (b + 2.0 * db).min(search.second.1));
    }
    let (a, b, objective) = best.ok_or(Error::NoFeasibleFit)?;
    Ok(TruthFit { spec: family.instantiate(a, b), objective })
}

fn check_conformable(prior: &Pmf, channel: &ShannonChannel, sem: Option<&SemanticChannel>) -> Result<()> {
    if channel.n_x() != prior.len() {
        return Err(Error::ShapeMismatch { expected: prior.len(), got: channel.n_x() });
    }
    if let Some(sem) = sem {
        if sem.n_x() != prior.len() {
            return Err(Error::ShapeMismatch { expected: prior.len(), got: sem.n_x() });
        }
        if sem.n_y() != channel.n_y() {
            return Err(Error::ShapeMismatch { expected: channel.n_y(), got: sem.n_y() });
        }
    }
    Ok(())
}

/// Output marginal `P(y_j) = Σ_i P(x_i) P(y_j|x_i)` (unchecked normalization).
pub(crate) fn output_marginal(prior: &Pmf, channel: &ShannonChannel) -> Vec<f64> {
    let mut py = vec![0.0; channel.n_y()];
    for (p, row) in prior.weights().iter().zip(channel.rows()) {
        for (acc, v) in py.iter_mut().zip(row) {
            *acc += p * v;
        }
    }
    py
}

fn logical_probabilities(prior: &Pmf, sem: &SemanticChannel) -> Result<Vec<f64>> {
    (0..sem.n_y())
        .map(|j| {
            let t = logical_probability(&sem.column(j), prior)?;
            if t <= 0.0 {
                Err(Error::UnsatisfiableGoal { goal: j })
            } else {
                Ok(t)
            }
        })
        .collect()
}

/// Semantic mutual information `I(X; Y_θ)` in bits.
pub fn semantic_mi(prior: &Pmf, channel: &ShannonChannel, sem: &SemanticChannel) -> Result<f64> {
    Ok(decompose_info(prior, channel, sem)?.semantic_mi)
}

/// Shannon mutual information `I(X; Y)` in bits.
pub fn shannon_mi(prior: &Pmf, channel: &ShannonChannel) -> Result<f64> {
    check_conformable(prior, channel, None)?;
    let py = output_marginal(prior, channel);
    let mut nats = 0.0;
    for (p, row) in prior.weights().iter().zip(channel.rows()) {
        if *p == 0.0 {
            continue;
        }
        for (v, q) in row.iter().zip(&py) {
            if *v > 0.0 {
                nats += p * v * (v / q).ln();
            }
        }
    }
    Ok((nats / LN_2).max(0.0))
}

/// Distortion `d = ln(1/t)` in nats; `+inf` at `t = 0`.
pub fn truth_to_distortion(t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidArgument(format!("truth value {t} outside [0, 1]")));
    }
    Ok(if t == 0.0 { f64::INFINITY } else { -t.ln() })
}

/// Truth value `exp(-d)` for a distortion `d >= 0` in nats.
pub fn distortion_to_truth(d: f64) -> Result<f64> {
    if d.is_nan() || d < 0.0 {
        return Err(Error::InvalidArgument(format!("distortion {d} must be nonnegative")));
    }
    Ok((-d).exp())
}

/// Semantic mutual information split into a fuzzy-entropy term minus an average distortion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InfoDecomposition {
    /// `-Σ_j P(y_j) log2 T(θ_j)`.
    pub fuzzy_entropy_term: f64,
    /// `E_{P(x,y)} log2 1/T(θ_j|x)`, the average distortion expressed in bits.
    pub avg_distortion: f64,
    pub semantic_mi: f64,
}

pub fn decompose_info(prior: &Pmf, channel: &ShannonChannel, sem: &SemanticChannel) -> Result<InfoDecomposition> {
    check_conformable(prior, channel, Some(sem))?;
    let logical = logical_probabilities(prior, sem)?;
    let py = output_marginal(prior, channel);

    let fuzzy: f64 = -py.iter().zip(&logical).map(|(q, t)| q * t.ln()).sum::<f64>();
    let mut distortion = 0.0;
    let mut mi = 0.0;
    for (i, (p, row)) in prior.weights().iter().zip(channel.rows()).enumerate() {
        for (j, v) in row.iter().enumerate() {
            let mass = p * v;
            if mass == 0.0 {
                continue;
            }
            let t = sem.get(i, j);
            if t == 0.0 {
                return Ok(InfoDecomposition {
                    fuzzy_entropy_term: fuzzy / LN_2,
                    avg_distortion: f64::INFINITY,
                    semantic_mi: f64::NEG_INFINITY,
                });
            }
            distortion -= mass * t.ln();
            mi += mass * (t / logical[j]).ln();
        }
    }
    Ok(InfoDecomposition {
        fuzzy_entropy_term: fuzzy / LN_2,
        avg_distortion: distortion / LN_2,
        semantic_mi: mi / LN_2,
    })
}
