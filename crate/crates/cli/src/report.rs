//! Serializable mirrors of the library results.

use kg_floquet::hamiltonian_hopf::{AsymptoticProbe, GapCheck, GapDepth, PredicateOutcome, SmallNuCheck};
use kg_floquet::hill::{BandEdge, EdgeKind, Multiplicity};
use kg_floquet::{BandStructure, CorollaryReport, HhPoint, Indices, Regime, WaveProfile};
use serde::Serialize;

use crate::config::RunConfig;

pub const TOOL_NAME: &str = env!("CARGO_PKG_NAME");
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

impl Default for ToolInfo {
    fn default() -> Self {
        ToolInfo {
            name: TOOL_NAME,
            version: TOOL_VERSION,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub tool: ToolInfo,
    /// Configuration with every default resolved; rerunning it reproduces
    /// this report.
    pub config: RunConfig,
    pub wave: WaveSummary,
    pub indices: IndicesRow,
    pub bands: Vec<BandRow>,
    pub gaps: Vec<GapRow>,
    pub double_points: Vec<EdgeRow>,
    pub scan: ScanSummary,
    pub hh_points: Vec<HhRow>,
    pub corollaries: CorollaryRows,
    pub checks: ChecksRow,
}

impl AnalysisReport {
    /// Failures of the internal consistency conditions, empty when the run
    /// is consistent.
    pub fn consistency_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.corollaries.consistent {
            for (name, p) in [("C2", &self.corollaries.c2), ("C3", &self.corollaries.c3)] {
                if !p.consistent {
                    out.push(format!("{name} fired but no HH point was found"));
                }
            }
            for g in self.corollaries.c4.iter().filter(|g| !g.consistent) {
                out.push(format!(
                    "C4 gap ({}, {}) has {} HH points below and {} above",
                    g.lo, g.hi, g.hh_below, g.hh_above
                ));
            }
        }
        for p in &self.hh_points {
            if p.band_index >= self.bands.len() {
                out.push(format!("HH point at nu = {} references a missing band", p.nu_star));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WaveSummary {
    pub potential: String,
    pub c: f64,
    pub energy: f64,
    pub regime: &'static str,
    pub period: f64,
    pub winding: f64,
    pub nodes: usize,
    pub energy_drift: f64,
}

impl WaveSummary {
    pub fn new(profile: &WaveProfile) -> Self {
        WaveSummary {
            potential: profile.potential().name().to_string(),
            c: profile.params.c,
            energy: profile.params.energy,
            regime: regime_name(profile.regime),
            period: profile.period,
            winding: profile.winding,
            nodes: profile.len(),
            energy_drift: profile.energy_drift(),
        }
    }
}

pub fn regime_name(r: Regime) -> &'static str {
    match r {
        Regime::Librational => "librational",
        Regime::Rotational => "rotational",
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IndicesRow {
    pub gamma_m: i8,
    pub gamma_p: i8,
    pub product: i8,
    pub delta_at_0: f64,
    pub delta_nu_at_0: f64,
    pub delta_nunu_at_0: f64,
    pub c2t2: f64,
    pub evans_curvature_sign: i8,
    pub degenerate: bool,
}

impl From<&Indices> for IndicesRow {
    fn from(i: &Indices) -> Self {
        IndicesRow {
            gamma_m: i.gamma_m,
            gamma_p: i.gamma_p,
            product: i.product(),
            delta_at_0: i.delta_at_0,
            delta_nu_at_0: i.delta_nu_at_0,
            delta_nunu_at_0: i.delta_nunu_at_0,
            c2t2: i.c2t2,
            evans_curvature_sign: i.evans_curvature_sign,
            degenerate: i.degenerate,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EdgeRow {
    pub nu: f64,
    pub kind: &'static str,
    pub multiplicity: &'static str,
    pub delta_nu: f64,
}

impl From<&BandEdge> for EdgeRow {
    fn from(e: &BandEdge) -> Self {
        EdgeRow {
            nu: e.nu,
            kind: match e.kind {
                EdgeKind::Periodic => "periodic",
                EdgeKind::Antiperiodic => "antiperiodic",
            },
            multiplicity: match e.multiplicity {
                Multiplicity::Simple => "simple",
                Multiplicity::Double => "double",
            },
            delta_nu: e.delta_nu,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BandRow {
    pub index: usize,
    pub lo: f64,
    pub hi: f64,
    /// `None` when the band is cut by the scan window.
    pub lo_edge: Option<EdgeRow>,
    pub hi_edge: EdgeRow,
}

#[derive(Debug, Clone, Serialize)]
pub struct GapRow {
    pub lo: f64,
    pub hi: f64,
    pub kind: &'static str,
    pub lo_edge: Option<EdgeRow>,
    pub hi_edge: EdgeRow,
}

pub fn band_rows(bands: &BandStructure) -> (Vec<BandRow>, Vec<GapRow>, Vec<EdgeRow>) {
    let b = bands
        .bands
        .iter()
        .enumerate()
        .map(|(index, b)| BandRow {
            index,
            lo: b.lo,
            hi: b.hi,
            lo_edge: b.lo_edge.as_ref().map(EdgeRow::from),
            hi_edge: EdgeRow::from(&b.hi_edge),
        })
        .collect();
    let g = bands
        .gaps
        .iter()
        .map(|g| {
            let hi_edge = EdgeRow::from(&g.hi_edge);
            GapRow {
                lo: g.lo,
                hi: g.hi,
                kind: hi_edge.kind,
                lo_edge: g.lo_edge.as_ref().map(EdgeRow::from),
                hi_edge,
            }
        })
        .collect();
    let d = bands.double_points.iter().map(EdgeRow::from).collect();
    (b, g, d)
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanSummary {
    pub nu_min: f64,
    pub step: f64,
    pub grid_points: usize,
    pub band_evaluations: usize,
    /// `nu` intervals where `tanh(F - nu)` saturated.
    pub saturated: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HhRow {
    pub nu_star: f64,
    pub beta: f64,
    pub band_index: usize,
    pub residual: f64,
    pub f: f64,
    pub f_kind: &'static str,
    pub delta: f64,
    pub delta_plus: Option<f64>,
    pub delta_minus: Option<f64>,
    pub double_point: bool,
    pub delta_hat_plus: Option<f64>,
    pub delta_hat_minus: Option<f64>,
    pub min_delta: f64,
}

impl From<&HhPoint> for HhRow {
    fn from(p: &HhPoint) -> Self {
        HhRow {
            nu_star: p.nu_star,
            beta: p.beta,
            band_index: p.band_index,
            residual: p.residual,
            f: p.f.value,
            f_kind: p.f.tag(),
            delta: p.f.delta,
            delta_plus: p.trans.delta_plus,
            delta_minus: p.trans.delta_minus,
            double_point: p.trans.double_point,
            delta_hat_plus: p.trans.delta_hat_plus,
            delta_hat_minus: p.trans.delta_hat_minus,
            min_delta: p.trans.min_delta(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PredicateRow {
    pub fired: bool,
    pub matched: bool,
    pub inconclusive: bool,
    pub consistent: bool,
}

impl From<&PredicateOutcome> for PredicateRow {
    fn from(p: &PredicateOutcome) -> Self {
        PredicateRow {
            fired: p.fired,
            matched: p.matched,
            inconclusive: p.inconclusive,
            consistent: p.consistent(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GapCheckRow {
    pub lo: f64,
    pub hi: f64,
    pub depth: &'static str,
    pub hh_below: usize,
    pub hh_above: usize,
    pub consistent: bool,
}

impl From<&GapCheck> for GapCheckRow {
    fn from(g: &GapCheck) -> Self {
        GapCheckRow {
            lo: g.lo,
            hi: g.hi,
            depth: match g.depth {
                GapDepth::Deep => "deep",
                GapDepth::Shallow => "shallow",
                GapDepth::Truncated => "truncated",
            },
            hh_below: g.hh_below,
            hh_above: g.hh_above,
            consistent: g.consistent(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CorollaryRows {
    pub c2: PredicateRow,
    pub c3: PredicateRow,
    pub c4: Vec<GapCheckRow>,
    pub any_fired: bool,
    pub consistent: bool,
}

impl From<&CorollaryReport> for CorollaryRows {
    fn from(r: &CorollaryReport) -> Self {
        CorollaryRows {
            c2: (&r.c2).into(),
            c3: (&r.c3).into(),
            c4: r.c4.iter().map(GapCheckRow::from).collect(),
            any_fired: r.any_fired(),
            consistent: r.consistent(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeRow {
    pub nu: f64,
    pub sin_abs: f64,
    /// `(F - nu) / ((c^2 - 1) nu)`; absent for rejected probes.
    pub ratio: Option<f64>,
}

impl From<&AsymptoticProbe> for ProbeRow {
    fn from(p: &AsymptoticProbe) -> Self {
        ProbeRow {
            nu: p.nu,
            sin_abs: p.sin_abs,
            ratio: p.ratio,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SmallNuRow {
    pub branch: &'static str,
    pub predicted: f64,
    pub measured: f64,
    pub relative_error: f64,
}

impl From<&SmallNuCheck> for SmallNuRow {
    fn from(s: &SmallNuCheck) -> Self {
        let (branch, predicted, measured) = match *s {
            SmallNuCheck::Slope { predicted, measured } => ("slope", predicted, measured),
            SmallNuCheck::Intercept { predicted, measured } => ("intercept", predicted, measured),
        };
        SmallNuRow {
            branch,
            predicted,
            measured,
            relative_error: s.relative_error(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ChecksRow {
    pub asymptotic: Vec<ProbeRow>,
    pub small_nu: SmallNuRow,
}
