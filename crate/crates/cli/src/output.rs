//! CSV and JSON encodings. Floats in CSV use 17 significant digits.

use std::fmt::Write as _;
use std::path::Path;

use kg_floquet::SpectralCurves;
use serde::Serialize;

use crate::commands::CurveRow;
use crate::error::CliError;
use crate::report::AnalysisReport;

pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

pub fn curve_csv(rows: &[CurveRow]) -> String {
    let mut out = String::from("beta,nu,F,kind\n");
    for r in rows {
        let f = r.f.map(num).unwrap_or_default();
        let _ = writeln!(out, "{},{},{},{}", num(r.beta), num(r.nu), f, r.kind);
    }
    out
}

#[derive(Serialize)]
struct CurveJsonRow {
    beta: f64,
    nu: f64,
    #[serde(rename = "F")]
    f: Option<f64>,
    kind: &'static str,
}

pub fn curve_json(rows: &[CurveRow]) -> String {
    let rows: Vec<CurveJsonRow> = rows
        .iter()
        .map(|r| CurveJsonRow {
            beta: r.beta,
            nu: r.nu,
            f: r.f,
            kind: r.kind,
        })
        .collect();
    to_json(&rows)
}

pub fn axis_bands_csv(curves: &SpectralCurves) -> String {
    let mut out = String::from("beta_lo,beta_hi\n");
    for &(lo, hi) in &curves.axis_bands {
        let _ = writeln!(out, "{},{}", num(lo), num(hi));
    }
    out
}

/// Polylines as arrays of `[re, im]` pairs.
pub fn curves_json(curves: &SpectralCurves) -> String {
    let lines: Vec<Vec<[f64; 2]>> = curves
        .segments
        .iter()
        .map(|l| l.iter().map(|&(x, y)| [x, y]).collect())
        .collect();
    to_json(&lines)
}

pub fn bands_csv(report: &AnalysisReport) -> String {
    let mut out = String::from("index,nu_lo,nu_hi,lo_kind,hi_kind\n");
    for b in &report.bands {
        let lo_kind = b.lo_edge.as_ref().map(|e| e.kind).unwrap_or("window");
        let _ = writeln!(out, "{},{},{},{},{}", b.index, num(b.lo), num(b.hi), lo_kind, b.hi_edge.kind);
    }
    out
}

pub fn hh_csv(report: &AnalysisReport) -> String {
    let mut out = String::from("nu_star,beta,band_index,residual,min_delta\n");
    for p in &report.hh_points {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            num(p.nu_star),
            num(p.beta),
            p.band_index,
            num(p.residual),
            num(p.min_delta)
        );
    }
    out
}

pub fn write(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|source| CliError::Io { path, source })
}
