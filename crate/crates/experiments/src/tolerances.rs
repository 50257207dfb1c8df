//! Every pass/fail threshold used by `tables` and the acceptance suite.

/// Bits, for any reproduced `G`, `R`, `G1`, `R1` cell.
pub const TABLE_BITS: f64 = 0.15;
/// Efficiency cells of the mortality table.
pub const MORTALITY_EFFICIENCY: f64 = 0.05;
/// `P(a0)` cells of the two-goal table.
pub const TWO_GOAL_PA: f64 = 0.02;
/// Efficiency cells of the two-goal table.
pub const TWO_GOAL_EFFICIENCY: f64 = 0.02;
/// Largest change of any mortality bit value between the two finest grids.
pub const GRID_SENSITIVITY: f64 = 0.05;
/// Grid steps compared by the sensitivity report, coarse to fine.
pub const SENSITIVITY_STEPS: [f64; 3] = [1.0, 0.5, 0.25];
/// Point-mass efficiency.
pub const POINT_MASS_EFFICIENCY: f64 = 0.03;
/// Exact identities on random instances.
pub const IDENTITY: f64 = 1e-9;
/// Likelihood to truth-function round trip.
pub const ROUND_TRIP: f64 = 1e-12;
/// Row sums of a tilted channel.
pub const ROW_SUM: f64 = 1e-12;
/// Exact curve must lie below the surrogate curve up to this slack.
pub const DOMINANCE: f64 = 1e-6;
/// Ceiling on the `G` gain from s = 5 to s = 40 in the two-goal task.
pub const SATURATION_GAIN: f64 = 0.1;
/// Wall-clock budgets, seconds.
pub const MORTALITY_RUNTIME_S: f64 = 5.0;
pub const TWO_GOAL_RUNTIME_S: f64 = 10.0;
