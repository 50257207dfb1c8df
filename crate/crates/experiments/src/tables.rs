//! Side-by-side reproduction of the reference tables.

use std::fmt::Write as _;

use semantic_g::point_mass_plan;
use serde::Serialize;

use crate::error::Result;
use crate::record::{prepare, Prepared, Verdict};
use crate::reference;
use crate::scenarios;
use crate::tolerances as tol;

/// Computed mortality values at one `s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MortalityValues {
    pub s: f64,
    pub r: f64,
    pub g: f64,
    pub efficiency: f64,
    pub r1: f64,
    pub g1: f64,
    pub efficiency1: f64,
}

impl MortalityValues {
    /// All bit-valued quantities, in table order.
    pub fn bits(&self) -> [f64; 4] {
        [self.r, self.g, self.r1, self.g1]
    }
}

pub fn mortality_values(step: f64) -> Result<Vec<MortalityValues>> {
    let mut cfg = scenarios::mortality();
    cfg.grid.step = step;
    let prep = prepare(&cfg)?;
    reference::MORTALITY
        .iter()
        .map(|row| {
            let plan = prep.plan(row.s)?;
            let sur = prep.surrogate_row(&plan)?;
            Ok(MortalityValues {
                s: row.s,
                r: plan.r,
                g: plan.g,
                efficiency: plan.efficiency.unwrap_or(f64::NAN),
                r1: sur.r1_bits,
                g1: sur.g1_bits,
                efficiency1: sur.efficiency1.unwrap_or(f64::NAN),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoGoalValues {
    pub s: f64,
    pub c: f64,
    pub pa0: f64,
    pub pa1: f64,
    pub g: f64,
    pub r: f64,
    pub efficiency: f64,
}

pub fn two_goal_prepared(c: f64, step: f64) -> Result<Prepared> {
    let mut cfg = scenarios::two_goal(c);
    cfg.grid.step = step;
    prepare(&cfg)
}

pub fn two_goal_values(step: f64) -> Result<Vec<TwoGoalValues>> {
    let mut out = Vec::new();
    let c75 = two_goal_prepared(75.0, step)?;
    let c80 = two_goal_prepared(80.0, step)?;
    for row in &reference::TWO_GOAL {
        let prep = if row.c == 75.0 { &c75 } else { &c80 };
        let plan = prep.plan(row.s)?;
        out.push(TwoGoalValues {
            s: row.s,
            c: row.c,
            pa0: plan.pa.weights()[0],
            pa1: plan.pa.weights()[1],
            g: plan.g,
            r: plan.r,
            efficiency: plan.efficiency.unwrap_or(f64::NAN),
        });
    }
    Ok(out)
}

/// Point-mass efficiency for the mortality goal on a grid of the given step.
pub fn point_mass_efficiency(step: f64) -> Result<f64> {
    let mut cfg = scenarios::mortality();
    cfg.grid.step = step;
    let prep = prepare(&cfg)?;
    let pm = point_mass_plan(&prep.prior, &prep.sem.column(0), &prep.grid, reference::POINT_MASS_TARGET)?;
    Ok(pm.efficiency.unwrap_or(f64::NAN))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TablesReport {
    pub mortality: Vec<Verdict>,
    pub point_mass: Vec<Verdict>,
    pub sensitivity: Vec<Verdict>,
    pub two_goal: Vec<Verdict>,
    /// Point-mass efficiency per sensitivity step (informational).
    pub point_mass_by_step: Vec<(f64, f64)>,
}

impl TablesReport {
    pub fn verdicts(&self) -> impl Iterator<Item = &Verdict> {
        self.mortality.iter().chain(&self.point_mass).chain(&self.sensitivity).chain(&self.two_goal)
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts().all(|v| v.pass)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let section = |out: &mut String, title: &str, rows: &[Verdict]| {
            writeln!(out, "{title}").unwrap();
            writeln!(out, "  {:<28} {:>10} {:>10} {:>9} {:>8}  verdict", "cell", "computed", "reference", "|delta|", "tol")
                .unwrap();
            for v in rows {
                writeln!(
                    out,
                    "  {:<28} {:>10.4} {:>10.4} {:>9.4} {:>8.3}  {}",
                    v.label,
                    v.computed,
                    v.reference,
                    v.delta,
                    v.tolerance,
                    if v.pass { "PASS" } else { "FAIL" }
                )
                .unwrap();
            }
            out.push('\n');
        };
        section(&mut out, "Mortality control, grid [0,120] step 1", &self.mortality);
        section(&mut out, "Point-mass plan at x = 80, grid step 1", &self.point_mass);
        let steps: Vec<String> = self.point_mass_by_step.iter().map(|(s, e)| format!("step {s}: {e:.4}")).collect();
        writeln!(out, "  point-mass efficiency by grid step: {}\n", steps.join(", ")).unwrap();
        section(&mut out, "Grid sensitivity (max change in any bit value)", &self.sensitivity);
        section(&mut out, "Two-goal control, grid [0,110] step 0.5, 3 iterations", &self.two_goal);
        let failed = self.verdicts().filter(|v| !v.pass).count();
        let total = self.verdicts().count();
        writeln!(out, "{} of {total} cells within tolerance", total - failed).unwrap();
        out
    }
}

pub fn mortality_verdicts(values: &[MortalityValues]) -> Vec<Verdict> {
    let mut v = Vec::new();
    for (c, r) in values.iter().zip(&reference::MORTALITY) {
        let s = c.s;
        v.push(Verdict::new(format!("s={s} R"), c.r, r.r, tol::TABLE_BITS));
        v.push(Verdict::new(format!("s={s} G"), c.g, r.g, tol::TABLE_BITS));
        v.push(Verdict::new(format!("s={s} G/R"), c.efficiency, r.efficiency, tol::MORTALITY_EFFICIENCY));
        v.push(Verdict::new(format!("s={s} R1"), c.r1, r.r1, tol::TABLE_BITS));
        v.push(Verdict::new(format!("s={s} G1"), c.g1, r.g1, tol::TABLE_BITS));
        v.push(Verdict::new(format!("s={s} G1/R1"), c.efficiency1, r.efficiency1, tol::MORTALITY_EFFICIENCY));
    }
    v
}

pub fn two_goal_verdicts(values: &[TwoGoalValues]) -> Vec<Verdict> {
    let mut v = Vec::new();
    for (c, r) in values.iter().zip(&reference::TWO_GOAL) {
        let tag = format!("s={} c={}", c.s, c.c);
        v.push(Verdict::new(format!("{tag} P(a0)"), c.pa0, r.pa0, tol::TWO_GOAL_PA));
        v.push(Verdict::new(format!("{tag} G"), c.g, r.g, tol::TABLE_BITS));
        v.push(Verdict::new(format!("{tag} R"), c.r, r.r, tol::TABLE_BITS));
        v.push(Verdict::new(format!("{tag} G/R"), c.efficiency, r.efficiency, tol::TWO_GOAL_EFFICIENCY));
    }
    v
}

/// Largest absolute change of any mortality bit value between consecutive steps.
pub fn sensitivity(steps: &[f64]) -> Result<Vec<(f64, f64, f64)>> {
    let values = steps.iter().map(|&s| mortality_values(s)).collect::<Result<Vec<_>>>()?;
    Ok(values
        .windows(2)
        .zip(steps.windows(2))
        .map(|(v, st)| {
            let max = v[0]
                .iter()
                .zip(&v[1])
                .flat_map(|(a, b)| a.bits().into_iter().zip(b.bits()).map(|(x, y)| (x - y).abs()))
                .fold(0.0, f64::max);
            (st[0], st[1], max)
        })
        .collect())
}

pub fn reproduce_tables() -> Result<TablesReport> {
    let mortality = mortality_verdicts(&mortality_values(1.0)?);
    let point_mass = vec![Verdict::new(
        "x=80 efficiency",
        point_mass_efficiency(1.0)?,
        reference::POINT_MASS_EFFICIENCY,
        tol::POINT_MASS_EFFICIENCY,
    )];
    let point_mass_by_step =
        tol::SENSITIVITY_STEPS.iter().map(|&s| point_mass_efficiency(s).map(|e| (s, e))).collect::<Result<_>>()?;
    let sens = sensitivity(&tol::SENSITIVITY_STEPS)?;
    let sensitivity = sens
        .iter()
        .map(|(a, b, d)| {
            let mut v = Verdict::new(format!("step {a} -> {b}"), *d, 0.0, tol::GRID_SENSITIVITY);
            v.pass = *d < tol::GRID_SENSITIVITY;
            v
        })
        .collect();
    let two_goal = two_goal_verdicts(&two_goal_values(0.5)?);
    Ok(TablesReport { mortality, point_mass, sensitivity, two_goal, point_mass_by_step })
}
