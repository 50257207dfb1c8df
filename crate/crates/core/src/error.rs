use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: usize, got: usize },

    /// The prior carries no mass on the grid after truncation.
    #[error("degenerate prior: no probability mass on the grid")]
    DegeneratePrior,

    /// A goal (or label) has zero logical probability under the prior.
    #[error("goal {goal} is unsatisfiable: logical probability is zero")]
    UnsatisfiableGoal { goal: usize },

    /// Every truth value of a goal sits below the solver floor.
    #[error("goal {goal} is unreachable: all truth values below floor")]
    UnreachableGoal { goal: usize },

    #[error("label {label} is unreachable: channel column is all zero")]
    UnreachableLabel { label: usize },

    #[error("undefined ratio: likelihood positive where prior is zero (index {index})")]
    UndefinedRatio { index: usize },

    #[error("infinite divergence: q is zero where p is positive (index {index})")]
    InfiniteDivergence { index: usize },

    #[error("no feasible fit: objective is -inf across the whole search box")]
    NoFeasibleFit,

    #[error("degenerate surrogate: source distribution has zero variance")]
    DegenerateSurrogate,
}
