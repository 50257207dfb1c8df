//! Purposive information and range control.
//!
//! A control goal is a truth function over the state `x`; an action `a_j`
//! aimed at goal `j` produces a result distribution `P(x|a_j)`. Purposive
//! information measures how well the result accords with the goal using the
//! same formula as average semantic information, but here the result is moved
//! toward the goal rather than the goal toward the data.

use serde::{Deserialize, Serialize};

use crate::channel::SemanticChannel;
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::pmf::{kl_divergence, normal_on_grid, Pmf};
use crate::rate_fidelity::{
    build_tilt, efficiency_ratio, solve_with_workspace, tilted_posterior, SolverOptions,
};
use crate::semantics::{avg_semantic_info, pointwise_info};

const LN_2: f64 = std::f64::consts::LN_2;

/// Purposive information `Σ_i P(x_i|a) log2 T(θ|x_i)/T(θ)` of one control result.
pub fn purposive_info(result: &Pmf, truth: &[f64], prior: &Pmf) -> Result<f64> {
    avg_semantic_info(result, truth, prior)
}

fn check_plan_shapes(posteriors: &[Pmf], pa: &Pmf, sem: &SemanticChannel, prior: &Pmf) -> Result<()> {
    if posteriors.len() != sem.n_y() {
        return Err(Error::ShapeMismatch { expected: sem.n_y(), got: posteriors.len() });
    }
    pa.check_len(sem.n_y())?;
    if sem.n_x() != prior.len() {
        return Err(Error::ShapeMismatch { expected: prior.len(), got: sem.n_x() });
    }
    Ok(())
}

/// Multi-goal purposive information `Σ_j P(a_j) I(X; a_j/θ_j)` in bits.
pub fn multi_goal_purposive(posteriors: &[Pmf], pa: &Pmf, sem: &SemanticChannel, prior: &Pmf) -> Result<f64> {
    check_plan_shapes(posteriors, pa, sem, prior)?;
    let mut total = 0.0;
    for (j, (post, w)) in posteriors.iter().zip(pa.weights()).enumerate() {
        if *w == 0.0 {
            continue;
        }
        total += w * purposive_info(post, &sem.column(j), prior)?;
    }
    Ok(total)
}

/// Action information `Σ_j P(a_j) D(P(x|a_j) || P(x))` in bits.
///
/// Measured against the fixed prior; equals `I(X; A)` whenever the result
/// mixture reproduces the prior.
pub fn action_information(posteriors: &[Pmf], pa: &Pmf, prior: &Pmf) -> Result<f64> {
    pa.check_len(posteriors.len())?;
    let mut total = 0.0;
    for (post, w) in posteriors.iter().zip(pa.weights()) {
        if *w > 0.0 {
            total += w * kl_divergence(post, prior)?;
        }
    }
    Ok(total)
}

/// Information max-min objective `f = I(X;A) - s I(X;A/θ)` in bits.
pub fn imm_objective(prior: &Pmf, pa: &Pmf, posteriors: &[Pmf], sem: &SemanticChannel, s: f64) -> Result<f64> {
    check_plan_shapes(posteriors, pa, sem, prior)?;
    let rate = action_information(posteriors, pa, prior)?;
    if s == 0.0 {
        return Ok(rate);
    }
    Ok(rate - s * multi_goal_purposive(posteriors, pa, sem, prior)?)
}

/// How per-action results are derived from the solved channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PosteriorMode {
    /// Each action yields its own tilted result `P(x|θ_j, s) ∝ P(x) m_j^s`;
    /// the iteration only fixes `P(a)`.
    #[default]
    Tilted,
    /// `P(x|a_j) = P(x) P(a_j|x) / P(a_j)`, so the result mixture is the prior.
    BayesInversion,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ControlOptions {
    pub solver: SolverOptions,
    pub posteriors: PosteriorMode,
}

impl Default for ControlOptions {
    /// Three alternations from a uniform `P(a)` with tilted results.
    fn default() -> Self {
        Self { solver: SolverOptions::fixed(3), posteriors: PosteriorMode::Tilted }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ControlPlan {
    pub s: f64,
    pub pa: Pmf,
    /// `P(x|a_j)`, one per goal.
    pub posteriors: Vec<Pmf>,
    /// Purposive information, bits.
    pub g: f64,
    /// Action information against the prior, bits.
    pub r: f64,
    pub efficiency: Option<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub mode: PosteriorMode,
}

impl ControlPlan {
    /// `Σ_j P(a_j) P(x|a_j)`.
    pub fn mixture(&self) -> Vec<f64> {
        let n = self.posteriors.first().map_or(0, Pmf::len);
        let mut mix = vec![0.0; n];
        for (post, w) in self.posteriors.iter().zip(self.pa.weights()) {
            for (m, q) in mix.iter_mut().zip(post.weights()) {
                *m += w * q;
            }
        }
        mix
    }
}

/// Chooses `P(a)` and the per-action results for slope parameter `s`.
///
/// Purposive information is evaluated with the solver's floored truth values,
/// so goals with exact zeros stay finite.
pub fn optimize_control(prior: &Pmf, sem: &SemanticChannel, s: f64, opts: &ControlOptions) -> Result<ControlPlan> {
    opts.solver.validate()?;
    let ws = build_tilt(prior, sem, opts.solver.truth_floor)?;
    let init = Pmf::uniform(sem.n_y())?;
    let point = solve_with_workspace(&ws, prior, s, &init, &opts.solver)?;
    let pa = point.py.clone();

    let log_m: Vec<Vec<f64>> = (0..sem.n_y()).map(|j| ws.log_m_column(j)).collect();
    let posteriors = match opts.posteriors {
        PosteriorMode::Tilted => log_m.iter().map(|lm| tilted_posterior(prior, lm, s)).collect::<Result<Vec<_>>>()?,
        PosteriorMode::BayesInversion => (0..sem.n_y())
            .map(|j| {
                let joint: Vec<f64> =
                    prior.weights().iter().zip(point.channel.rows()).map(|(p, row)| p * row[j]).collect();
                match Pmf::normalized(joint) {
                    Err(Error::DegeneratePrior) => Ok(prior.clone()),
                    other => other,
                }
            })
            .collect::<Result<Vec<_>>>()?,
    };

    let mut g_nats = 0.0;
    for ((post, w), lm) in posteriors.iter().zip(pa.weights()).zip(&log_m) {
        if *w > 0.0 {
            g_nats += w * post.weights().iter().zip(lm).map(|(q, l)| q * l).sum::<f64>();
        }
    }
    let g = g_nats / LN_2;
    let r = action_information(&posteriors, &pa, prior)?;
    Ok(ControlPlan {
        s,
        pa,
        posteriors,
        g,
        r,
        efficiency: efficiency_ratio(g, r),
        iterations: point.iterations,
        converged: point.converged,
        mode: opts.posteriors,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaussianSurrogate {
    pub mu: f64,
    pub sigma: f64,
    pub surrogate: Pmf,
}

/// Normal distribution with the mean and population variance of `source`,
/// sampled on the grid and renormalized.
pub fn gaussian_surrogate(source: &Pmf, grid: &Grid) -> Result<GaussianSurrogate> {
    let mu = source.mean(grid)?;
    let var = source.variance(grid)?;
    if var.is_nan() || var <= 1e-300 {
        return Err(Error::DegenerateSurrogate);
    }
    let sigma = var.sqrt();
    Ok(GaussianSurrogate { mu, sigma, surrogate: normal_on_grid(mu, sigma, grid)? })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurrogatePlan {
    /// `(mu_j, sigma_j)` per action.
    pub betas: Vec<(f64, f64)>,
    pub surrogate_posteriors: Vec<Pmf>,
    pub g1: f64,
    pub r1: f64,
    pub efficiency1: Option<f64>,
}

/// Replaces every source result by its Gaussian surrogate and re-measures.
pub fn surrogate_rg(
    prior: &Pmf,
    sem: &SemanticChannel,
    pa: &Pmf,
    sources: &[Pmf],
    grid: &Grid,
) -> Result<SurrogatePlan> {
    check_plan_shapes(sources, pa, sem, prior)?;
    let fits = sources.iter().map(|src| gaussian_surrogate(src, grid)).collect::<Result<Vec<_>>>()?;
    let betas = fits.iter().map(|f| (f.mu, f.sigma)).collect();
    let surrogate_posteriors: Vec<Pmf> = fits.into_iter().map(|f| f.surrogate).collect();
    let g1 = multi_goal_purposive(&surrogate_posteriors, pa, sem, prior)?;
    let r1 = action_information(&surrogate_posteriors, pa, prior)?;
    Ok(SurrogatePlan { betas, surrogate_posteriors, g1, r1, efficiency1: efficiency_ratio(g1, r1) })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PointMassPlan {
    pub index: usize,
    pub x: f64,
    pub g: f64,
    /// `log2 1/P(x_target)`; `+inf` when the prior vanishes there.
    pub r: f64,
    pub efficiency: Option<f64>,
}

/// Drives every outcome to a single grid point nearest `x_target`.
pub fn point_mass_plan(prior: &Pmf, truth: &[f64], grid: &Grid, x_target: f64) -> Result<PointMassPlan> {
    prior.check_len(grid.len())?;
    if !(grid.lower()..=grid.upper()).contains(&x_target) {
        return Err(Error::InvalidArgument(format!("target {x_target} lies outside the grid")));
    }
    let index = grid.nearest_index(x_target);
    let g = pointwise_info(truth, prior, index)?;
    let p = prior.weights()[index];
    let r = if p > 0.0 { -p.log2() } else { f64::INFINITY };
    let efficiency = if r.is_infinite() && g.is_finite() { Some(0.0) } else { efficiency_ratio(g, r) };
    Ok(PointMassPlan { index, x: grid.points()[index], g, r, efficiency })
}
