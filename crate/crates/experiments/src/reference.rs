//! Published reference values for the built-in scenarios.

/// Mortality scenario, per slope `s`: exact `(R, G, G/R)` and surrogate `(R1, G1, G1/R1)`.
pub struct MortalityRow {
    pub s: f64,
    pub r: f64,
    pub g: f64,
    pub efficiency: f64,
    pub r1: f64,
    pub g1: f64,
    pub efficiency1: f64,
}

pub const MORTALITY: [MortalityRow; 3] = [
    MortalityRow { s: 1.0, r: 2.19, g: 2.19, efficiency: 1.0, r1: 2.08, g1: 1.99, efficiency1: 0.95 },
    MortalityRow { s: 20.0, r: 3.36, g: 2.58, efficiency: 0.77, r1: 3.13, g1: 2.52, efficiency1: 0.80 },
    MortalityRow { s: 40.0, r: 3.58, g: 2.59, efficiency: 0.72, r1: 3.38, g1: 2.55, efficiency1: 0.76 },
];

/// Efficiency of driving every outcome to age 80.
pub const POINT_MASS_TARGET: f64 = 80.0;
pub const POINT_MASS_EFFICIENCY: f64 = 0.23;

/// Two-goal scenario row: `(s, c, P(a0), P(a1), G, R, G/R)`.
pub struct TwoGoalRow {
    pub s: f64,
    pub c: f64,
    pub pa0: f64,
    pub pa1: f64,
    pub g: f64,
    pub r: f64,
    pub efficiency: f64,
}

pub const TWO_GOAL: [TwoGoalRow; 6] = [
    TwoGoalRow { s: 1.0, c: 75.0, pa0: 0.535, pa1: 0.465, g: 3.43, r: 3.43, efficiency: 1.0 },
    TwoGoalRow { s: 1.0, c: 80.0, pa0: 0.579, pa1: 0.421, g: 3.80, r: 3.80, efficiency: 1.0 },
    TwoGoalRow { s: 5.0, c: 75.0, pa0: 0.540, pa1: 0.460, g: 3.89, r: 4.29, efficiency: 0.907 },
    TwoGoalRow { s: 5.0, c: 80.0, pa0: 0.592, pa1: 0.408, g: 4.28, r: 4.71, efficiency: 0.909 },
    TwoGoalRow { s: 40.0, c: 75.0, pa0: 0.540, pa1: 0.460, g: 3.95, r: 5.01, efficiency: 0.803 },
    TwoGoalRow { s: 40.0, c: 80.0, pa0: 0.592, pa1: 0.408, g: 4.33, r: 5.34, efficiency: 0.811 },
];
