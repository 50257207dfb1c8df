//! Running a scenario and serializing its results.

use std::path::{Path, PathBuf};

use semantic_g::{
    optimize_control, point_mass_plan, pmf_from_spec, surrogate_rg, ControlOptions, ControlPlan, GridBounds, Pmf,
    SemanticChannel,
};
use serde::Serialize;

use crate::config::ScenarioConfig;
use crate::csv::{emit_curve_csv, CurveRow};
use crate::error::{ExperimentError, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub scenario: String,
    pub grid: GridBounds,
    pub version: String,
    pub timestamp: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRow {
    pub s: f64,
    pub g_bits: f64,
    pub r_bits: f64,
    pub efficiency: Option<f64>,
    pub pa: Vec<f64>,
    /// `Σ_j P(a_j) Σ_x P(x|a_j) log2 1/T(θ_j|x)` with the solver's truth floor.
    pub avg_distortion_bits: f64,
    pub converged: bool,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurrogateRow {
    pub s: f64,
    /// `(mu_j, sigma_j)` per action.
    pub betas: Vec<(f64, f64)>,
    pub g1_bits: f64,
    pub r1_bits: f64,
    pub efficiency1: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointMassRow {
    pub goal: usize,
    pub x: f64,
    pub g_bits: f64,
    pub r_bits: f64,
    pub efficiency: Option<f64>,
}

/// One pass/fail comparison against a reference value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub label: String,
    pub computed: f64,
    pub reference: f64,
    pub delta: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Verdict {
    pub fn new(label: impl Into<String>, computed: f64, reference: f64, tolerance: f64) -> Self {
        let delta = (computed - reference).abs();
        Verdict { label: label.into(), computed, reference, delta, tolerance, pass: delta <= tolerance }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRecord {
    pub metadata: Metadata,
    /// Sorted by `s`.
    pub rows: Vec<RunRow>,
    pub curve: Vec<CurveRow>,
    pub surrogate: Vec<SurrogateRow>,
    pub point_mass: Vec<PointMassRow>,
    pub verdicts: Vec<Verdict>,
}

/// Prior, semantic channel and grid of a scenario, evaluated once.
pub struct Prepared {
    pub grid: semantic_g::Grid,
    pub prior: Pmf,
    pub sem: SemanticChannel,
    pub options: ControlOptions,
}

pub fn prepare(config: &ScenarioConfig) -> Result<Prepared> {
    config.validate()?;
    let grid = config.grid()?;
    let prior = pmf_from_spec(&config.prior, &grid)?;
    let sem = SemanticChannel::from_specs(&config.goals, &grid)?;
    let options = ControlOptions { solver: config.solver, posteriors: config.posteriors };
    Ok(Prepared { grid, prior, sem, options })
}

impl Prepared {
    pub fn plan(&self, s: f64) -> Result<ControlPlan> {
        Ok(optimize_control(&self.prior, &self.sem, s, &self.options)?)
    }

    pub fn avg_distortion(&self, plan: &ControlPlan) -> f64 {
        let floor = self.options.solver.truth_floor;
        let mut d = 0.0;
        for (j, (post, w)) in plan.posteriors.iter().zip(plan.pa.weights()).enumerate() {
            let col = self.sem.column(j);
            d -= w * post.weights().iter().zip(&col).map(|(q, t)| q * t.max(floor).log2()).sum::<f64>();
        }
        d
    }

    pub fn surrogate_row(&self, plan: &ControlPlan) -> Result<SurrogateRow> {
        let sp = surrogate_rg(&self.prior, &self.sem, &plan.pa, &plan.posteriors, &self.grid)?;
        Ok(SurrogateRow { s: plan.s, betas: sp.betas, g1_bits: sp.g1, r1_bits: sp.r1, efficiency1: sp.efficiency1 })
    }
}

/// Computes every declared quantity for `config`. Deterministic apart from the timestamp.
pub fn run_scenario(config: &ScenarioConfig) -> Result<RunRecord> {
    let prep = prepare(config)?;

    let mut rows = Vec::new();
    let mut surrogate = Vec::new();
    for s in config.sorted_s_values() {
        let plan = prep.plan(s)?;
        if config.outputs.surrogate {
            surrogate.push(prep.surrogate_row(&plan)?);
        }
        rows.push(RunRow {
            s,
            g_bits: plan.g,
            r_bits: plan.r,
            efficiency: plan.efficiency,
            pa: plan.pa.weights().to_vec(),
            avg_distortion_bits: prep.avg_distortion(&plan),
            converged: plan.converged,
            iterations: plan.iterations,
        });
    }

    let curve = config
        .curve_s()
        .into_iter()
        .map(|s| prep.plan(s).map(|p| CurveRow::from(&p)))
        .collect::<Result<Vec<_>>>()?;

    let mut point_mass = Vec::new();
    for &x in &config.outputs.point_mass_targets {
        for goal in 0..prep.sem.n_y() {
            let pm = point_mass_plan(&prep.prior, &prep.sem.column(goal), &prep.grid, x)?;
            point_mass.push(PointMassRow { goal, x: pm.x, g_bits: pm.g, r_bits: pm.r, efficiency: pm.efficiency });
        }
    }

    Ok(RunRecord {
        metadata: Metadata {
            scenario: config.name.clone(),
            grid: prep.grid.bounds(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        },
        rows,
        curve,
        surrogate,
        point_mass,
        verdicts: Vec::new(),
    })
}

fn resolve(out_dir: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        out_dir.join(p)
    }
}

fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|source| ExperimentError::Io { path: dir.to_path_buf(), source })
}

/// Writes the curve CSV (if declared) and returns its path.
pub fn write_curve(record: &RunRecord, config: &ScenarioConfig, out_dir: &Path) -> Result<PathBuf> {
    ensure_dir(out_dir)?;
    let name = config.outputs.curve_csv.clone().unwrap_or_else(|| format!("{}_curve.csv", config.name).into());
    let path = resolve(out_dir, &name);
    emit_curve_csv(&record.curve, &path)?;
    Ok(path)
}

/// Writes the declared CSV and JSON outputs, returning the written paths.
pub fn write_outputs(record: &RunRecord, config: &ScenarioConfig, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let mut written = vec![write_curve(record, config, out_dir)?];
    let name =
        config.outputs.summary_json.clone().unwrap_or_else(|| format!("{}_summary.json", config.name).into());
    let path = resolve(out_dir, &name);
    let json = serde_json::to_string_pretty(record).expect("run record serializes");
    std::fs::write(&path, json + "\n").map_err(|source| ExperimentError::Io { path: path.clone(), source })?;
    written.push(path);
    Ok(written)
}

/// Reference comparisons for a run of a built-in scenario.
///
/// Empty unless the config keeps the built-in grid, prior, goals and solver;
/// only rows whose `s` appears in the reference are compared.
pub fn reference_verdicts(config: &ScenarioConfig, record: &RunRecord) -> Vec<Verdict> {
    use crate::{reference, scenarios, tolerances as tol};

    let Some(base) = scenarios::builtin(&config.name) else { return Vec::new() };
    let same = base.grid == config.grid
        && base.prior == config.prior
        && base.goals == config.goals
        && base.solver == config.solver
        && base.posteriors == config.posteriors;
    if !same {
        return Vec::new();
    }
    let mut out = Vec::new();
    if config.name == scenarios::MORTALITY {
        for r in &reference::MORTALITY {
            if let Some(row) = record.rows.iter().find(|x| x.s == r.s) {
                out.push(Verdict::new(format!("s={} R", r.s), row.r_bits, r.r, tol::TABLE_BITS));
                out.push(Verdict::new(format!("s={} G", r.s), row.g_bits, r.g, tol::TABLE_BITS));
                let eff = row.efficiency.unwrap_or(f64::NAN);
                out.push(Verdict::new(format!("s={} G/R", r.s), eff, r.efficiency, tol::MORTALITY_EFFICIENCY));
            }
            if let Some(sur) = record.surrogate.iter().find(|x| x.s == r.s) {
                out.push(Verdict::new(format!("s={} R1", r.s), sur.r1_bits, r.r1, tol::TABLE_BITS));
                out.push(Verdict::new(format!("s={} G1", r.s), sur.g1_bits, r.g1, tol::TABLE_BITS));
                let eff = sur.efficiency1.unwrap_or(f64::NAN);
                out.push(Verdict::new(format!("s={} G1/R1", r.s), eff, r.efficiency1, tol::MORTALITY_EFFICIENCY));
            }
        }
        if let Some(pm) = record.point_mass.iter().find(|p| p.x == reference::POINT_MASS_TARGET) {
            out.push(Verdict::new(
                format!("x={} efficiency", pm.x),
                pm.efficiency.unwrap_or(f64::NAN),
                reference::POINT_MASS_EFFICIENCY,
                tol::POINT_MASS_EFFICIENCY,
            ));
        }
    } else {
        let c = match config.name.as_str() {
            scenarios::TWO_GOAL_C75 => 75.0,
            _ => 80.0,
        };
        for r in reference::TWO_GOAL.iter().filter(|r| r.c == c) {
            if let Some(row) = record.rows.iter().find(|x| x.s == r.s) {
                out.push(Verdict::new(format!("s={} P(a0)", r.s), row.pa[0], r.pa0, tol::TWO_GOAL_PA));
                out.push(Verdict::new(format!("s={} G", r.s), row.g_bits, r.g, tol::TABLE_BITS));
                out.push(Verdict::new(format!("s={} R", r.s), row.r_bits, r.r, tol::TABLE_BITS));
                let eff = row.efficiency.unwrap_or(f64::NAN);
                out.push(Verdict::new(format!("s={} G/R", r.s), eff, r.efficiency, tol::TWO_GOAL_EFFICIENCY));
            }
        }
    }
    out
}
