//! The information rate-fidelity function `R(G)`.
//!
//! For a fixed slope parameter `s` the minimizing channel has the exponential
//! tilt form `P(y_j|x_i) = P(y_j) m_ij^s / λ_i` with `m_ij = T(θ_j|x_i) / T(θ_j)`.
//! The output marginal `P(y)` is found by alternating the channel update with
//! `P(y_j) = Σ_i P(x_i) P(y_j|x_i)`, Blahut–Arimoto style. Every tilt is done
//! in log space with a per-row max shift; `m^s` over- and underflows long
//! before `s = 40` otherwise.

use serde::{Deserialize, Serialize};

use crate::channel::{SemanticChannel, ShannonChannel};
use crate::error::{Error, Result};
use crate::pmf::{kl_divergence, Pmf};
use crate::semantics::{logical_probability, output_marginal};

const LN_2: f64 = std::f64::consts::LN_2;

pub const DEFAULT_TRUTH_FLOOR: f64 = 1e-12;
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IterationMode {
    /// Exactly `count` channel/marginal alternations.
    FixedIterations { count: usize },
    /// Iterate until the L1 change of `P(y)` drops below `tol`.
    ConvergeTol { tol: f64, max_iter: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    pub mode: IterationMode,
    /// Truth values below this are raised to it before taking logs.
    #[serde(default = "default_floor")]
    pub truth_floor: f64,
}

fn default_floor() -> f64 {
    DEFAULT_TRUTH_FLOOR
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            mode: IterationMode::ConvergeTol { tol: DEFAULT_TOLERANCE, max_iter: DEFAULT_MAX_ITER },
            truth_floor: DEFAULT_TRUTH_FLOOR,
        }
    }
}

impl SolverOptions {
    pub fn fixed(count: usize) -> Self {
        Self { mode: IterationMode::FixedIterations { count }, ..Self::default() }
    }

    pub fn converge(tol: f64, max_iter: usize) -> Self {
        Self { mode: IterationMode::ConvergeTol { tol, max_iter }, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        match self.mode {
            IterationMode::FixedIterations { count: 0 } => {
                return Err(Error::InvalidArgument("iteration count must be at least 1".into()))
            }
            IterationMode::ConvergeTol { tol, max_iter } if tol.is_nan() || tol <= 0.0 || max_iter == 0 => {
                return Err(Error::InvalidArgument("tolerance must be > 0 and max_iter >= 1".into()))
            }
            _ => {}
        }
        if !(self.truth_floor > 0.0 && self.truth_floor < 1.0) {
            return Err(Error::InvalidArgument("truth floor must lie in (0, 1)".into()));
        }
        Ok(())
    }
}

/// Log normalized likelihood ratios `ln m_ij` for one prior and semantic channel.
#[derive(Debug, Clone, PartialEq)]
pub struct TiltWorkspace {
    n_x: usize,
    n_y: usize,
    log_m: Vec<f64>,
    logical: Vec<f64>,
}

impl TiltWorkspace {
    pub fn n_x(&self) -> usize {
        self.n_x
    }

    pub fn n_y(&self) -> usize {
        self.n_y
    }

    /// `ln m_ij` (nats).
    pub fn log_m(&self, i: usize, j: usize) -> f64 {
        self.log_m[i * self.n_y + j]
    }

    fn log_m_row(&self, i: usize) -> &[f64] {
        &self.log_m[i * self.n_y..(i + 1) * self.n_y]
    }

    /// Column `j` of `ln m`.
    pub fn log_m_column(&self, j: usize) -> Vec<f64> {
        (0..self.n_x).map(|i| self.log_m(i, j)).collect()
    }

    /// Logical probabilities `T(θ_j)` of the unfloored truth functions.
    pub fn logical(&self) -> &[f64] {
        &self.logical
    }
}

pub fn build_tilt(prior: &Pmf, sem: &SemanticChannel, truth_floor: f64) -> Result<TiltWorkspace> {
    if sem.n_x() != prior.len() {
        return Err(Error::ShapeMismatch { expected: prior.len(), got: sem.n_x() });
    }
    let (n_x, n_y) = (sem.n_x(), sem.n_y());
    let mut logical = Vec::with_capacity(n_y);
    for j in 0..n_y {
        let col = sem.column(j);
        if col.iter().all(|t| *t < truth_floor) {
            return Err(Error::UnreachableGoal { goal: j });
        }
        let t = logical_probability(&col, prior)?;
        if t <= 0.0 {
            return Err(Error::UnsatisfiableGoal { goal: j });
        }
        logical.push(t);
    }
    let mut log_m = Vec::with_capacity(n_x * n_y);
    for i in 0..n_x {
        for (j, t) in logical.iter().enumerate() {
            log_m.push(sem.get(i, j).max(truth_floor).ln() - t.ln());
        }
    }
    Ok(TiltWorkspace { n_x, n_y, log_m, logical })
}

/// One tilt step: returns the channel `P(y_j|x_i) = P(y_j) m_ij^s / λ_i` and `ln λ_i`.
pub fn channel_update(ws: &TiltWorkspace, py: &Pmf, s: f64) -> Result<(ShannonChannel, Vec<f64>)> {
    py.check_len(ws.n_y)?;
    let log_py: Vec<f64> = py.weights().iter().map(|p| p.ln()).collect();
    let mut data = Vec::with_capacity(ws.n_x * ws.n_y);
    let mut log_lambda = Vec::with_capacity(ws.n_x);
    let mut scratch = vec![0.0; ws.n_y];
    for i in 0..ws.n_x {
        for ((e, lp), lm) in scratch.iter_mut().zip(&log_py).zip(ws.log_m_row(i)) {
            // A zero-probability action stays at zero.
            *e = if lp.is_finite() { lp + s * lm } else { f64::NEG_INFINITY };
        }
        let max = scratch.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        scratch.iter_mut().for_each(|e| *e = (*e - max).exp());
        let total: f64 = scratch.iter().sum();
        data.extend(scratch.iter().map(|e| e / total));
        log_lambda.push(max + total.ln());
    }
    Ok((ShannonChannel::from_raw(ws.n_x, ws.n_y, data), log_lambda))
}

/// Output marginal `P(y_j) = Σ_i P(x_i) P(y_j|x_i)`.
pub fn marginal_update(prior: &Pmf, channel: &ShannonChannel) -> Result<Pmf> {
    if channel.n_x() != prior.len() {
        return Err(Error::ShapeMismatch { expected: prior.len(), got: channel.n_x() });
    }
    Pmf::normalized(output_marginal(prior, channel))
}

/// One parametric point `(G(s), R(s))` of the rate-fidelity function.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RGPoint {
    pub s: f64,
    /// Semantic mutual information, bits.
    pub g: f64,
    /// Shannon mutual information lower limit, bits.
    pub r: f64,
    /// Output marginal of `channel`.
    pub py: Pmf,
    pub channel: ShannonChannel,
    pub iterations: usize,
    pub converged: bool,
}

impl RGPoint {
    pub fn efficiency(&self) -> Option<f64> {
        efficiency(self)
    }
}

pub fn solve_point(
    prior: &Pmf,
    sem: &SemanticChannel,
    s: f64,
    init_py: &Pmf,
    opts: &SolverOptions,
) -> Result<RGPoint> {
    opts.validate()?;
    let ws = build_tilt(prior, sem, opts.truth_floor)?;
    solve_with_workspace(&ws, prior, s, init_py, opts)
}

/// Same as [`solve_point`] with a prebuilt workspace.
pub fn solve_with_workspace(
    ws: &TiltWorkspace,
    prior: &Pmf,
    s: f64,
    init_py: &Pmf,
    opts: &SolverOptions,
) -> Result<RGPoint> {
    if !s.is_finite() {
        return Err(Error::InvalidArgument(format!("slope parameter must be finite, got {s}")));
    }
    prior.check_len(ws.n_x)?;
    init_py.check_len(ws.n_y)?;
    if init_py.weights().iter().any(|p| *p <= 0.0) {
        return Err(Error::InvalidArgument("initial P(y) must be strictly positive".into()));
    }
    let (limit, tol) = match opts.mode {
        IterationMode::FixedIterations { count } => (count, None),
        IterationMode::ConvergeTol { tol, max_iter } => (max_iter, Some(tol)),
    };

    let mut py = init_py.clone();
    let mut iterations = 0;
    let (channel, log_lambda, delta) = loop {
        let (channel, log_lambda) = channel_update(ws, &py, s)?;
        let next = marginal_update(prior, &channel)?;
        let delta = next.l1_distance(&py)?;
        py = next;
        iterations += 1;
        if iterations >= limit || tol.is_some_and(|t| delta < t) {
            break (channel, log_lambda, delta);
        }
    };
    let converged = delta < tol.unwrap_or(DEFAULT_TOLERANCE);

    let mut g_nats = 0.0;
    let mut log_lambda_avg = 0.0;
    for (i, (p, row)) in prior.weights().iter().zip(channel.rows()).enumerate() {
        if *p == 0.0 {
            continue;
        }
        g_nats += p * row.iter().zip(ws.log_m_row(i)).map(|(c, lm)| c * lm).sum::<f64>();
        log_lambda_avg += p * log_lambda[i];
    }
    let r_nats = s * g_nats - log_lambda_avg;
    Ok(RGPoint {
        s,
        g: g_nats / LN_2,
        r: r_nats / LN_2,
        py,
        channel,
        iterations,
        converged,
    })
}

/// Result for a single message: no marginal iteration is involved.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingleMessagePoint {
    pub s: f64,
    pub g: f64,
    pub r: f64,
    /// Tilted posterior `P(x|θ, s) ∝ P(x) m^s`.
    pub posterior: Pmf,
}

impl SingleMessagePoint {
    pub fn efficiency(&self) -> Option<f64> {
        efficiency_ratio(self.g, self.r)
    }
}

/// Tilted posterior `P(x) m^s` normalized, for a floored single truth column.
pub fn tilted_posterior(prior: &Pmf, log_m: &[f64], s: f64) -> Result<Pmf> {
    prior.check_len(log_m.len())?;
    let log_w: Vec<f64> = prior
        .weights()
        .iter()
        .zip(log_m)
        .map(|(p, lm)| if *p > 0.0 { p.ln() + s * lm } else { f64::NEG_INFINITY })
        .collect();
    Pmf::from_log_weights(&log_w)
}

pub fn single_message_point(prior: &Pmf, truth: &[f64], s: f64, truth_floor: f64) -> Result<SingleMessagePoint> {
    if !s.is_finite() {
        return Err(Error::InvalidArgument(format!("slope parameter must be finite, got {s}")));
    }
    let sem = SemanticChannel::from_columns(vec![truth.to_vec()])?;
    let ws = build_tilt(prior, &sem, truth_floor)?;
    let log_m = ws.log_m_column(0);
    let posterior = tilted_posterior(prior, &log_m, s)?;
    let g = posterior.weights().iter().zip(&log_m).map(|(q, lm)| q * lm).sum::<f64>() / LN_2;
    let r = kl_divergence(&posterior, prior)?;
    Ok(SingleMessagePoint { s, g, r, posterior })
}

/// Secant slope between two neighbouring curve points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlopeDiagnostic {
    pub s_lo: f64,
    pub s_hi: f64,
    /// `ΔR / ΔG`; `None` when the two points share a `G` value.
    pub secant: Option<f64>,
}

/// Rate-fidelity points ordered by `G`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RGCurve {
    pub points: Vec<RGPoint>,
}

impl RGCurve {
    pub fn new(mut points: Vec<RGPoint>) -> Self {
        points.sort_by(|a, b| a.g.total_cmp(&b.g).then(a.s.total_cmp(&b.s)));
        Self { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn slope_report(&self) -> Vec<SlopeDiagnostic> {
        self.points
            .windows(2)
            .map(|w| {
                let dg = w[1].g - w[0].g;
                SlopeDiagnostic {
                    s_lo: w[0].s,
                    s_hi: w[1].s,
                    secant: (dg.abs() > 1e-12).then(|| (w[1].r - w[0].r) / dg),
                }
            })
            .collect()
    }
}

/// Solves each `s` in order, warm-starting from the previous marginal.
pub fn sweep(
    prior: &Pmf,
    sem: &SemanticChannel,
    s_list: &[f64],
    init_py: &Pmf,
    opts: &SolverOptions,
) -> Result<RGCurve> {
    if s_list.is_empty() {
        return Err(Error::InvalidArgument("s list must be nonempty".into()));
    }
    opts.validate()?;
    let ws = build_tilt(prior, sem, opts.truth_floor)?;
    let mut points = Vec::with_capacity(s_list.len());
    let mut start = init_py.clone();
    for &s in s_list {
        let point = solve_with_workspace(&ws, prior, s, &start, opts)?;
        if point.py.weights().iter().all(|p| *p > 0.0) {
            start = point.py.clone();
        }
        points.push(point);
    }
    Ok(RGCurve::new(points))
}

/// Solves every `s` from `init_py` independently, one thread per value.
pub fn sweep_cold_parallel(
    prior: &Pmf,
    sem: &SemanticChannel,
    s_list: &[f64],
    init_py: &Pmf,
    opts: &SolverOptions,
) -> Result<RGCurve> {
    if s_list.is_empty() {
        return Err(Error::InvalidArgument("s list must be nonempty".into()));
    }
    opts.validate()?;
    let ws = build_tilt(prior, sem, opts.truth_floor)?;
    let points = std::thread::scope(|scope| {
        let handles: Vec<_> = s_list
            .iter()
            .map(|&s| {
                let ws = &ws;
                scope.spawn(move || solve_with_workspace(ws, prior, s, init_py, opts))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("solver thread panicked")).collect::<Result<Vec<_>>>()
    })?;
    Ok(RGCurve::new(points))
}

/// `G / R`, or `None` when `R` vanishes (the `s = 0` point).
pub fn efficiency(point: &RGPoint) -> Option<f64> {
    efficiency_ratio(point.g, point.r)
}

pub fn efficiency_ratio(g: f64, r: f64) -> Option<f64> {
    (r.abs() > 1e-15 && r.is_finite()).then(|| g / r)
}
