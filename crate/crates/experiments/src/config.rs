//! Scenario configuration, read from TOML.

use std::path::{Path, PathBuf};

use semantic_g::{Grid, GridBounds, PosteriorMode, PriorSpec, SolverOptions, TruthSpec};
use serde::{Deserialize, Serialize};

use crate::error::{ExperimentError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    pub grid: GridBounds,
    pub prior: PriorSpec,
    pub goals: Vec<TruthSpec>,
    /// Slope parameters reported row by row.
    pub s_values: Vec<f64>,
    /// Denser list used for curve output; falls back to `s_values`.
    #[serde(default)]
    pub curve_s_values: Option<Vec<f64>>,
    #[serde(default = "default_solver")]
    pub solver: SolverOptions,
    #[serde(default)]
    pub posteriors: PosteriorMode,
    #[serde(default)]
    pub outputs: OutputSpec,
}

fn default_solver() -> SolverOptions {
    SolverOptions::fixed(3)
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    /// Relative paths resolve against the output directory.
    #[serde(default)]
    pub curve_csv: Option<PathBuf>,
    #[serde(default)]
    pub summary_json: Option<PathBuf>,
    /// Also evaluate Gaussian surrogate results.
    #[serde(default)]
    pub surrogate: bool,
    #[serde(default)]
    pub point_mass_targets: Vec<f64>,
}

/// Command-line overrides applied on top of a config.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub grid_step: Option<f64>,
    pub s_values: Option<Vec<f64>>,
    pub iterations: Option<usize>,
}

impl ScenarioConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: ScenarioConfig = toml::from_str(text).map_err(|e| ExperimentError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ExperimentError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string_pretty(self).expect("scenario config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(ExperimentError::Config(m));
        if self.goals.is_empty() {
            return bad("scenario needs at least one goal".into());
        }
        if self.s_values.is_empty() {
            return bad("s_values must be nonempty".into());
        }
        if self.curve_s_values.as_ref().is_some_and(Vec::is_empty) {
            return bad("curve_s_values must be nonempty when given".into());
        }
        let all_s = self.s_values.iter().chain(self.curve_s_values.iter().flatten());
        if let Some(s) = all_s.into_iter().find(|s| !s.is_finite()) {
            return bad(format!("s value {s} is not finite"));
        }
        self.grid().map_err(|e| ExperimentError::Config(e.to_string()))?;
        for g in &self.goals {
            g.validate().map_err(|e| ExperimentError::Config(e.to_string()))?;
        }
        self.solver.validate().map_err(|e| ExperimentError::Config(e.to_string()))?;
        Ok(())
    }

    pub fn grid(&self) -> semantic_g::Result<Grid> {
        Grid::try_from(self.grid)
    }

    /// Row parameters sorted ascending.
    pub fn sorted_s_values(&self) -> Vec<f64> {
        let mut s = self.s_values.clone();
        s.sort_by(f64::total_cmp);
        s
    }

    pub fn curve_s(&self) -> Vec<f64> {
        let mut s = self.curve_s_values.clone().unwrap_or_else(|| self.s_values.clone());
        s.sort_by(f64::total_cmp);
        s
    }

    pub fn apply(&mut self, o: &Overrides) -> Result<()> {
        if let Some(step) = o.grid_step {
            self.grid.step = step;
        }
        if let Some(s) = &o.s_values {
            self.s_values = s.clone();
            self.curve_s_values = None;
        }
        if let Some(n) = o.iterations {
            self.solver = SolverOptions { mode: semantic_g::IterationMode::FixedIterations { count: n }, ..self.solver };
        }
        self.validate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
name = "demo"
s_values = [1.0, 5.0]

[grid]
lower = 0.0
upper = 100.0
step = 1.0

[prior]
kind = "normal_truncated"
mu = 50.0
sigma = 15.0

[[goals]]
kind = "logistic"
c = 75.0
k = 0.75

[solver.mode]
kind = "fixed_iterations"
count = 3

[outputs]
surrogate = true
point_mass_targets = [80.0]
"#;

    #[test]
    fn parses_sample() {
        let cfg = ScenarioConfig::from_toml_str(SAMPLE).unwrap();
        assert_eq!(cfg.goals, vec![TruthSpec::Logistic { c: 75.0, k: 0.75 }]);
        assert_eq!(cfg.solver, SolverOptions::fixed(3));
        assert!(cfg.outputs.surrogate);
        assert_eq!(cfg.posteriors, PosteriorMode::Tilted);
        let again = ScenarioConfig::from_toml_str(&cfg.to_toml_string()).unwrap();
        assert_eq!(again, cfg);
    }

    #[test]
    fn empty_s_values_rejected() {
        let text = SAMPLE.replace("s_values = [1.0, 5.0]", "s_values = []");
        assert!(matches!(ScenarioConfig::from_toml_str(&text), Err(ExperimentError::Config(_))));
    }

    #[test]
    fn malformed_inputs_rejected() {
        for text in [
            SAMPLE.replace("step = 1.0", "step = -1.0"),
            SAMPLE.replace("k = 0.75", "k = 0.0"),
            SAMPLE.replace("count = 3", "count = 0"),
            SAMPLE.replace("name = \"demo\"", "name = \"demo\"\nbogus = 1"),
            "not toml at all [".to_string(),
        ] {
            let err = ScenarioConfig::from_toml_str(&text).unwrap_err();
            assert_eq!(err.exit_code(), 2, "{err}");
        }
    }

    #[test]
    fn overrides_apply() {
        let mut cfg = ScenarioConfig::from_toml_str(SAMPLE).unwrap();
        let o = Overrides { grid_step: Some(0.5), s_values: Some(vec![2.0]), iterations: Some(7) };
        cfg.apply(&o).unwrap();
        assert_eq!(cfg.grid.step, 0.5);
        assert_eq!(cfg.s_values, vec![2.0]);
        assert_eq!(cfg.solver, SolverOptions::fixed(7));
    }
}
