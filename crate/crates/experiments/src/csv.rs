//! Plot-ready curve CSV: `s,G_bits,R_bits,efficiency[,pa_0,pa_1,...]`.

use std::fmt::Write as _;
use std::path::Path;

use semantic_g::{ControlPlan, RGCurve};
use serde::Serialize;

use crate::error::{ExperimentError, Result};

/// One curve sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveRow {
    pub s: f64,
    pub g_bits: f64,
    pub r_bits: f64,
    pub efficiency: Option<f64>,
    pub pa: Vec<f64>,
}

impl From<&ControlPlan> for CurveRow {
    fn from(p: &ControlPlan) -> Self {
        CurveRow { s: p.s, g_bits: p.g, r_bits: p.r, efficiency: p.efficiency, pa: p.pa.weights().to_vec() }
    }
}

pub fn rows_from_curve(curve: &RGCurve) -> Vec<CurveRow> {
    curve
        .points
        .iter()
        .map(|p| CurveRow { s: p.s, g_bits: p.g, r_bits: p.r, efficiency: p.efficiency(), pa: p.py.weights().to_vec() })
        .collect()
}

/// Formats `v` with nine significant digits in plain decimal notation
/// (scientific outside `1e-5 ..= 1e9`). Undefined values print as `NaN`.
pub fn format_sig9(v: f64) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0.00000000".into();
    }
    let sci = format!("{v:.8e}");
    let exp: i32 = sci.split('e').nth(1).and_then(|e| e.parse().ok()).unwrap_or(0);
    if !(-5..9).contains(&exp) {
        return sci;
    }
    format!("{:.*}", (8 - exp).max(0) as usize, v)
}

/// Renders rows sorted by `s`. `pa_*` columns appear only with two or more actions.
pub fn render_curve_csv(rows: &[CurveRow]) -> String {
    let mut rows: Vec<&CurveRow> = rows.iter().collect();
    rows.sort_by(|a, b| a.s.total_cmp(&b.s));
    let n_pa = rows.iter().map(|r| r.pa.len()).max().unwrap_or(0);
    let n_pa = if n_pa >= 2 { n_pa } else { 0 };

    let mut out = String::from("s,G_bits,R_bits,efficiency");
    for j in 0..n_pa {
        write!(out, ",pa_{j}").unwrap();
    }
    out.push('\n');
    for r in rows {
        let eff = r.efficiency.unwrap_or(f64::NAN);
        write!(out, "{},{},{},{}", format_sig9(r.s), format_sig9(r.g_bits), format_sig9(r.r_bits), format_sig9(eff))
            .unwrap();
        for j in 0..n_pa {
            write!(out, ",{}", format_sig9(r.pa.get(j).copied().unwrap_or(f64::NAN))).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn emit_curve_csv(rows: &[CurveRow], path: &Path) -> Result<()> {
    if rows.is_empty() {
        return Err(ExperimentError::Config("refusing to write an empty curve".into()));
    }
    std::fs::write(path, render_curve_csv(rows))
        .map_err(|source| ExperimentError::Io { path: path.to_path_buf(), source })
}

/// Parses a curve file back into `(header, numeric rows)`.
pub fn parse_curve_csv(text: &str) -> std::result::Result<(Vec<String>, Vec<Vec<f64>>), String> {
    let mut lines = text.lines();
    let header: Vec<String> = lines.next().ok_or("empty file")?.split(',').map(str::to_owned).collect();
    let rows = lines
        .map(|l| {
            l.split(',')
                .map(|f| f.parse::<f64>().map_err(|e| format!("bad field {f:?}: {e}")))
                .collect::<std::result::Result<Vec<_>, _>>()
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok((header, rows))
}
