//! Parametric truth (membership) functions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Grid;

/// A fuzzy truth function `T(θ|x)` with values in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TruthSpec {
    /// `1 / (1 + exp(-k (x - c)))`
    Logistic { c: f64, k: f64 },
    /// `1 - (1 - exp(-(x - c)^2 / w))^p`
    BellPower { c: f64, w: f64, p: u32 },
    /// `exp(-(x - c)^2 / (2 sigma^2))`, the quadratic-distortion truth function.
    GaussianBell { c: f64, sigma: f64 },
    /// Explicit values, one per grid point.
    Tabulated { values: Vec<f64> },
}

impl TruthSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidArgument(what.to_string()));
        match *self {
            TruthSpec::Logistic { c, k } => {
                if !c.is_finite() || !(k > 0.0 && k.is_finite()) {
                    return bad("logistic needs finite c and k > 0");
                }
            }
            TruthSpec::BellPower { c, w, p } => {
                if !c.is_finite() || !(w > 0.0 && w.is_finite()) || p == 0 {
                    return bad("bell-power needs finite c, w > 0 and p >= 1");
                }
            }
            TruthSpec::GaussianBell { c, sigma } => {
                if !c.is_finite() || !(sigma > 0.0 && sigma.is_finite()) {
                    return bad("gaussian bell needs finite c and sigma > 0");
                }
            }
            TruthSpec::Tabulated { ref values } => {
                if values.iter().any(|v| !(0.0..=1.0).contains(v)) {
                    return bad("tabulated truth values must lie in [0, 1]");
                }
            }
        }
        Ok(())
    }

    /// Pointwise value; `None` for tabulated truth.
    pub fn eval(&self, x: f64) -> Option<f64> {
        let v = match *self {
            TruthSpec::Logistic { c, k } => logistic(k * (x - c)),
            TruthSpec::BellPower { c, w, p } => bell_power((x - c).powi(2) / w, p),
            TruthSpec::GaussianBell { c, sigma } => (-(x - c).powi(2) / (2.0 * sigma * sigma)).exp(),
            TruthSpec::Tabulated { .. } => return None,
        };
        Some(v.clamp(0.0, 1.0))
    }
}

fn logistic(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

// 1 - (1 - e^{-u})^p evaluated as -expm1(p * ln(1 - e^{-u})) so the far tails
// keep their tiny but nonzero values instead of cancelling to zero.
fn bell_power(u: f64, p: u32) -> f64 {
    if u == 0.0 {
        return 1.0;
    }
    let inner = (-(-u).exp()).ln_1p();
    -(p as f64 * inner).exp_m1()
}

/// Evaluates a truth function on every grid point.
pub fn truth_from_spec(spec: &TruthSpec, grid: &Grid) -> Result<Vec<f64>> {
    spec.validate()?;
    match spec {
        TruthSpec::Tabulated { values } => {
            if values.len() != grid.len() {
                return Err(Error::InvalidArgument(format!(
                    "tabulated truth has {} values for a grid of {} points",
                    values.len(),
                    grid.len()
                )));
            }
            Ok(values.clone())
        }
        _ => Ok(grid.points().iter().map(|&x| spec.eval(x).expect("parametric")).collect()),
    }
}

/// Parametric family tag used when fitting truth functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TruthFamily {
    /// Parameters `(c, k)`.
    Logistic,
    /// Parameters `(c, w)` with a fixed exponent.
    BellPower { p: u32 },
    /// Parameters `(c, sigma)`.
    GaussianBell,
}

impl TruthFamily {
    pub fn instantiate(self, a: f64, b: f64) -> TruthSpec {
        match self {
            TruthFamily::Logistic => TruthSpec::Logistic { c: a, k: b },
            TruthFamily::BellPower { p } => TruthSpec::BellPower { c: a, w: b, p },
            TruthFamily::GaussianBell => TruthSpec::GaussianBell { c: a, sigma: b },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn logistic_midpoint_and_tail() {
        let t = TruthSpec::Logistic { c: 80.0, k: 0.8 };
        assert_eq!(t.eval(80.0), Some(0.5));
        let direct = 1.0 / (1.0 + (-0.8f64 * 40.0).exp());
        assert!((t.eval(120.0).unwrap() - direct).abs() < 1e-15);
        assert!((t.eval(120.0).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn bell_power_peak_and_naive_agreement() {
        let t = TruthSpec::BellPower { c: 20.0, w: 50.0, p: 3 };
        assert_eq!(t.eval(20.0), Some(1.0));
        for x in [10.0, 18.0, 25.0, 30.0, 35.0] {
            let naive = 1.0 - (1.0 - (-(x - 20.0f64).powi(2) / 50.0).exp()).powi(3);
            assert!((t.eval(x).unwrap() - naive).abs() < 1e-12, "x={x}");
        }
        // Far tail stays positive.
        let far = t.eval(80.0).unwrap();
        assert!(far > 0.0 && far < 1e-20);
    }

    #[test]
    fn tabulated_length_checked() {
        let g = Grid::new(0.0, 2.0, 1.0).unwrap();
        let spec = TruthSpec::Tabulated { values: vec![1.0, 0.5] };
        assert!(matches!(truth_from_spec(&spec, &g), Err(Error::InvalidArgument(_))));
        let spec = TruthSpec::Tabulated { values: vec![1.0, 0.5, 1.5] };
        assert!(truth_from_spec(&spec, &g).is_err());
    }

    #[test]
    fn invalid_parameters_rejected() {
        let g = Grid::new(0.0, 2.0, 1.0).unwrap();
        for spec in [
            TruthSpec::Logistic { c: 0.0, k: 0.0 },
            TruthSpec::BellPower { c: 0.0, w: -1.0, p: 2 },
            TruthSpec::BellPower { c: 0.0, w: 1.0, p: 0 },
            TruthSpec::GaussianBell { c: 0.0, sigma: 0.0 },
        ] {
            assert!(truth_from_spec(&spec, &g).is_err(), "{spec:?}");
        }
    }
}
