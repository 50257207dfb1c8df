//! Semantic information G measure and the information rate-fidelity function `R(G)`.
//!
//! Truth (membership) functions describe fuzzy goals or labels over a
//! discretized state `x`. From them this crate computes logical
//! probabilities, semantic likelihoods and semantic information in bits,
//! solves the parametric `R(G)` problem by alternating channel and marginal
//! updates, and applies the same machinery to single- and multi-goal range
//! control with Gaussian surrogate outcomes.
//!
//! ```
//! use semantic_g::{make_grid, pmf_from_spec, truth_from_spec, single_message_point, PriorSpec, TruthSpec};
//!
//! let grid = make_grid(0.0, 120.0, 1.0).unwrap();
//! let prior = pmf_from_spec(&PriorSpec::NormalTruncated { mu: 70.0, sigma: 10.0 }, &grid).unwrap();
//! let goal = truth_from_spec(&TruthSpec::Logistic { c: 80.0, k: 0.8 }, &grid).unwrap();
//! let point = single_message_point(&prior, &goal, 1.0, 1e-12).unwrap();
//! assert!((point.g - point.r).abs() < 1e-9);
//! ```

pub mod channel;
pub mod control;
pub mod error;
pub mod grid;
pub mod pmf;
pub mod rate_fidelity;
pub mod semantics;
pub mod truth;

pub use channel::{SemanticChannel, ShannonChannel};
pub use control::{
    gaussian_surrogate, imm_objective, multi_goal_purposive, optimize_control, point_mass_plan, purposive_info,
    surrogate_rg, ControlOptions, ControlPlan, GaussianSurrogate, PointMassPlan, PosteriorMode, SurrogatePlan,
};
pub use error::{Error, Result};
pub use grid::{make_grid, Grid, GridBounds};
pub use pmf::{kl_divergence, normal_on_grid, pmf_from_spec, try_kl_divergence, Pmf, PriorSpec};
pub use rate_fidelity::{
    build_tilt, channel_update, efficiency, marginal_update, single_message_point, solve_point, sweep,
    sweep_cold_parallel, IterationMode, RGCurve, RGPoint, SingleMessagePoint, SolverOptions, TiltWorkspace,
};
pub use semantics::{
    avg_semantic_info, decompose_info, distortion_to_truth, fit_truth, logical_probability,
    matched_semantic_channel, pointwise_info, semantic_bayes, semantic_mi, shannon_mi, truth_from_channel,
    truth_from_likelihood, truth_to_distortion, InfoDecomposition, SearchBox, TruthFit,
};
pub use truth::{truth_from_spec, TruthFamily, TruthSpec};
