//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each export returns a JSON string. The `*_json` functions carry the same
//! logic without the wasm boundary so they can be tested natively.

use semantic_g::{
    make_grid, optimize_control, point_mass_plan, pmf_from_spec, single_message_point, surrogate_rg,
    truth_from_spec, ControlOptions, Grid, Pmf, PriorSpec, SemanticChannel, TruthSpec,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

const TRUTH_FLOOR: f64 = 1e-12;

#[derive(Debug, Serialize)]
pub struct CurvePoint {
    pub s: f64,
    pub g: f64,
    pub r: f64,
    pub efficiency: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct SingleGoalCurve {
    pub points: Vec<CurvePoint>,
    /// Efficiency of driving every outcome to the goal's midpoint.
    pub point_mass_efficiency: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct TiltedResult {
    pub x: Vec<f64>,
    pub prior: Vec<f64>,
    pub truth: Vec<f64>,
    pub posterior: Vec<f64>,
    pub surrogate: Vec<f64>,
    pub g: f64,
    pub r: f64,
    pub g1: f64,
    pub r1: f64,
}

#[derive(Debug, Serialize)]
pub struct TwoGoalResult {
    pub x: Vec<f64>,
    pub prior: Vec<f64>,
    pub pa: Vec<f64>,
    pub posteriors: Vec<Vec<f64>>,
    pub g: f64,
    pub r: f64,
    pub efficiency: Option<f64>,
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn mortality_setup(mu: f64, sigma: f64, c: f64, k: f64) -> Result<(Grid, Pmf, Vec<f64>), String> {
    let grid = make_grid(0.0, 120.0, 1.0).map_err(err)?;
    let prior = pmf_from_spec(&PriorSpec::NormalTruncated { mu, sigma }, &grid).map_err(err)?;
    let spec = TruthSpec::Logistic { c, k };
    spec.validate().map_err(err)?;
    let truth = truth_from_spec(&spec, &grid).map_err(err)?;
    Ok((grid, prior, truth))
}

pub fn single_goal_curve_json(mu: f64, sigma: f64, c: f64, k: f64, s_max: f64) -> Result<String, String> {
    if !(s_max.is_finite() && s_max > 0.0) {
        return Err(format!("s_max must be positive, got {s_max}"));
    }
    let (grid, prior, truth) = mortality_setup(mu, sigma, c, k)?;
    let n = 200;
    let points = (0..=n)
        .map(|i| {
            let s = s_max * i as f64 / n as f64;
            let p = single_message_point(&prior, &truth, s, TRUTH_FLOOR).map_err(err)?;
            let efficiency = p.efficiency();
            Ok(CurvePoint { s, g: p.g, r: p.r, efficiency })
        })
        .collect::<Result<Vec<_>, String>>()?;
    let target = c.clamp(grid.lower(), grid.upper());
    let pm = point_mass_plan(&prior, &truth, &grid, target).map_err(err)?;
    let out = SingleGoalCurve { points, point_mass_efficiency: pm.efficiency };
    serde_json::to_string(&out).map_err(err)
}

pub fn tilted_result_json(mu: f64, sigma: f64, c: f64, k: f64, s: f64) -> Result<String, String> {
    let (grid, prior, truth) = mortality_setup(mu, sigma, c, k)?;
    let sem = SemanticChannel::from_columns(vec![truth.clone()]).map_err(err)?;
    let plan = optimize_control(&prior, &sem, s, &ControlOptions::default()).map_err(err)?;
    let sur = surrogate_rg(&prior, &sem, &plan.pa, &plan.posteriors, &grid).map_err(err)?;
    let out = TiltedResult {
        x: grid.points().to_vec(),
        prior: prior.weights().to_vec(),
        truth,
        posterior: plan.posteriors[0].weights().to_vec(),
        surrogate: sur.surrogate_posteriors[0].weights().to_vec(),
        g: plan.g,
        r: plan.r,
        g1: sur.g1,
        r1: sur.r1,
    };
    serde_json::to_string(&out).map_err(err)
}

pub fn two_goal_plan_json(c: f64, s: f64) -> Result<String, String> {
    let grid = make_grid(0.0, 110.0, 0.5).map_err(err)?;
    let prior = pmf_from_spec(&PriorSpec::NormalTruncated { mu: 50.0, sigma: 15.0 }, &grid).map_err(err)?;
    let goals = [TruthSpec::BellPower { c: 20.0, w: 50.0, p: 3 }, TruthSpec::Logistic { c, k: 0.75 }];
    let sem = SemanticChannel::from_specs(&goals, &grid).map_err(err)?;
    let plan = optimize_control(&prior, &sem, s, &ControlOptions::default()).map_err(err)?;
    let out = TwoGoalResult {
        x: grid.points().to_vec(),
        prior: prior.weights().to_vec(),
        pa: plan.pa.weights().to_vec(),
        posteriors: plan.posteriors.iter().map(|p| p.weights().to_vec()).collect(),
        g: plan.g,
        r: plan.r,
        efficiency: plan.efficiency,
    };
    serde_json::to_string(&out).map_err(err)
}

/// `R(G)` curve of one logistic goal over `s ∈ [0, s_max]`.
#[wasm_bindgen]
pub fn single_goal_curve(mu: f64, sigma: f64, c: f64, k: f64, s_max: f64) -> Result<String, String> {
    single_goal_curve_json(mu, sigma, c, k, s_max)
}

/// Tilted control result and its Gaussian surrogate at one `s`.
#[wasm_bindgen]
pub fn tilted_result(mu: f64, sigma: f64, c: f64, k: f64, s: f64) -> Result<String, String> {
    tilted_result_json(mu, sigma, c, k, s)
}

/// Two-goal plan: a bell around 20 and a logistic region above `c`.
#[wasm_bindgen]
pub fn two_goal_plan(c: f64, s: f64) -> Result<String, String> {
    two_goal_plan_json(c, s)
}
