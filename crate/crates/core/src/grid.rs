//! Uniform discretization of the state variable `x`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Evenly spaced points `lower, lower + step, ...` not exceeding `upper`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GridBounds", into = "GridBounds")]
pub struct Grid {
    lower: f64,
    upper: f64,
    step: f64,
    points: Vec<f64>,
}

/// Serialized form of a [`Grid`]; the points are always regenerated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridBounds {
    pub lower: f64,
    pub upper: f64,
    pub step: f64,
}

impl Grid {
    pub fn new(lower: f64, upper: f64, step: f64) -> Result<Self> {
        if !(lower.is_finite() && upper.is_finite() && step.is_finite()) {
            return Err(Error::InvalidArgument("grid bounds must be finite".into()));
        }
        if step <= 0.0 {
            return Err(Error::InvalidArgument(format!("grid step must be positive, got {step}")));
        }
        if upper <= lower {
            return Err(Error::InvalidArgument(format!(
                "grid upper bound {upper} must exceed lower bound {lower}"
            )));
        }
        // Relative slack so that e.g. (0, 1, 0.1) keeps its endpoint.
        let span = (upper - lower) / step;
        let n = (span + 1e-9 * span.max(1.0)).floor() as usize + 1;
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "grid [{lower}, {upper}] with step {step} has fewer than two points"
            )));
        }
        let points = (0..n).map(|i| lower + i as f64 * step).collect();
        Ok(Self { lower, upper, step, points })
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn bounds(&self) -> GridBounds {
        GridBounds { lower: self.lower, upper: self.upper, step: self.step }
    }

    /// Index of the grid point nearest to `x` (ties go to the lower index).
    pub fn nearest_index(&self, x: f64) -> usize {
        let raw = ((x - self.lower) / self.step).round();
        raw.clamp(0.0, (self.len() - 1) as f64) as usize
    }
}

impl TryFrom<GridBounds> for Grid {
    type Error = Error;

    fn try_from(b: GridBounds) -> Result<Self> {
        Grid::new(b.lower, b.upper, b.step)
    }
}

impl From<Grid> for GridBounds {
    fn from(g: Grid) -> Self {
        g.bounds()
    }
}

/// Convenience wrapper matching the free-function style of the other modules.
pub fn make_grid(lower: f64, upper: f64, step: f64) -> Result<Grid> {
    Grid::new(lower, upper, step)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_step_over_lifespan() {
        let g = make_grid(0.0, 120.0, 1.0).unwrap();
        assert_eq!(g.len(), 121);
        assert_eq!(g.points()[120], 120.0);
    }

    #[test]
    fn half_step_unit_interval() {
        let g = make_grid(0.0, 1.0, 0.5).unwrap();
        assert_eq!(g.points(), &[0.0, 0.5, 1.0]);
    }

    #[test]
    fn last_point_not_past_upper() {
        let g = make_grid(0.0, 1.0, 0.3).unwrap();
        assert_eq!(g.len(), 4);
        assert!(*g.points().last().unwrap() <= 1.0);
        let g = make_grid(0.0, 1.0, 0.1).unwrap();
        assert_eq!(g.len(), 11);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(matches!(make_grid(0.0, 120.0, -1.0), Err(Error::InvalidArgument(_))));
        assert!(matches!(make_grid(0.0, 120.0, 0.0), Err(Error::InvalidArgument(_))));
        assert!(matches!(make_grid(5.0, 5.0, 1.0), Err(Error::InvalidArgument(_))));
        assert!(matches!(make_grid(0.0, 1.0, 2.0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn nearest_index_clamps() {
        let g = make_grid(0.0, 10.0, 0.5).unwrap();
        assert_eq!(g.nearest_index(80.0), g.len() - 1);
        assert_eq!(g.nearest_index(-3.0), 0);
        assert_eq!(g.nearest_index(2.4), 5);
    }
}
