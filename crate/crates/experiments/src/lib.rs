//! Scenario configs, the reference-table reproduction, and CSV/JSON output
//! for the `semantic-g` solver.

pub mod config;
pub mod csv;
pub mod error;
pub mod record;
pub mod reference;
pub mod scenarios;
pub mod tables;
pub mod tolerances;

pub use config::{OutputSpec, Overrides, ScenarioConfig};
pub use csv::{emit_curve_csv, format_sig9, parse_curve_csv, render_curve_csv, CurveRow};
pub use error::{ExperimentError, Result};
pub use record::{run_scenario, write_outputs, RunRecord, RunRow, Verdict};
pub use tables::{reproduce_tables, TablesReport};
