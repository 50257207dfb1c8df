//! Built-in scenarios.

use semantic_g::{GridBounds, PosteriorMode, PriorSpec, SolverOptions, TruthSpec};

use crate::config::{OutputSpec, ScenarioConfig};

pub const MORTALITY: &str = "mortality";
pub const TWO_GOAL_C75: &str = "two_goal_c75";
pub const TWO_GOAL_C80: &str = "two_goal_c80";

/// `0, 0.5, ..., 40`
fn dense_s() -> Vec<f64> {
    (0..=80).map(|i| i as f64 * 0.5).collect()
}

/// Adult death age control: normal prior (70, 10), logistic goal "older than about 80".
pub fn mortality() -> ScenarioConfig {
    ScenarioConfig {
        name: MORTALITY.into(),
        grid: GridBounds { lower: 0.0, upper: 120.0, step: 1.0 },
        prior: PriorSpec::NormalTruncated { mu: 70.0, sigma: 10.0 },
        goals: vec![TruthSpec::Logistic { c: 80.0, k: 0.8 }],
        s_values: vec![1.0, 20.0, 40.0],
        curve_s_values: Some(dense_s()),
        solver: SolverOptions::fixed(3),
        posteriors: PosteriorMode::Tilted,
        outputs: OutputSpec {
            curve_csv: Some("mortality_curve.csv".into()),
            summary_json: Some("mortality_summary.json".into()),
            surrogate: true,
            point_mass_targets: vec![80.0],
        },
    }
}

/// Two fuzzy pastures: a bell around 20 and a logistic region above `c`,
/// with a normal (50, 15) flock density.
pub fn two_goal(c: f64) -> ScenarioConfig {
    let name = format!("two_goal_c{c}");
    ScenarioConfig {
        grid: GridBounds { lower: 0.0, upper: 110.0, step: 0.5 },
        prior: PriorSpec::NormalTruncated { mu: 50.0, sigma: 15.0 },
        goals: vec![TruthSpec::BellPower { c: 20.0, w: 50.0, p: 3 }, TruthSpec::Logistic { c, k: 0.75 }],
        s_values: vec![1.0, 5.0, 40.0],
        curve_s_values: Some(dense_s()),
        solver: SolverOptions::fixed(3),
        posteriors: PosteriorMode::Tilted,
        outputs: OutputSpec {
            curve_csv: Some(format!("{name}_curve.csv").into()),
            summary_json: Some(format!("{name}_summary.json").into()),
            surrogate: true,
            point_mass_targets: vec![],
        },
        name,
    }
}

pub fn names() -> [&'static str; 3] {
    [MORTALITY, TWO_GOAL_C75, TWO_GOAL_C80]
}

pub fn builtin(name: &str) -> Option<ScenarioConfig> {
    match name {
        MORTALITY => Some(mortality()),
        TWO_GOAL_C75 => Some(two_goal(75.0)),
        TWO_GOAL_C80 => Some(two_goal(80.0)),
        _ => None,
    }
}
