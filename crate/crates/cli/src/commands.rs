//! The `analyze`, `curve` and `spectrum` pipelines.

use std::sync::Arc;

use kg_floquet::hamiltonian_hopf::{
    asymptotic_check, corollary_report, default_nu_min, nonresonant_probes, scan_hh_points_with,
    small_nu_check,
};
use kg_floquet::hill::{band_structure_with, BandOptions};
use kg_floquet::spectrum::{trace_spectrum_with, SpectralCurves, Window};
use kg_floquet::{
    build_profile, compute_indices, extended_f, hill_coefficient, HillCoefficient, ScanOptions, Sweep,
    WaveParameters, WaveProfile,
};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::report::*;

/// A wave and its Hill coefficient, with the configuration defaults that
/// depend on the period filled in.
pub struct Prepared {
    pub config: RunConfig,
    pub profile: WaveProfile,
    pub coef: HillCoefficient,
    pub nu_min: f64,
}

impl Prepared {
    pub fn new(config: &RunConfig) -> Result<Self, CliError> {
        config.validate()?;
        let potential = Arc::new(config.potential()?);
        let params = WaveParameters::new(config.wave.c, config.wave.energy)?;
        let profile = build_profile(potential, params, config.wave.nodes)?;
        let coef = hill_coefficient(&profile);
        let period = profile.period;
        let c2m1 = (config.wave.c * config.wave.c - 1.0).abs();

        let mut resolved = config.clone();
        let nu_min = *resolved.scan.nu_min.get_or_insert(default_nu_min(period));
        resolved.scan.step.get_or_insert(ScanOptions::default().step(period));
        resolved
            .spectrum
            .im_max
            .get_or_insert(c2m1 * (-nu_min).sqrt());
        Ok(Prepared {
            config: resolved,
            profile,
            coef,
            nu_min,
        })
    }

    pub fn c(&self) -> f64 {
        self.config.wave.c
    }

    pub fn scan_options(&self) -> ScanOptions {
        ScanOptions {
            grid_step: self.config.scan.step,
            saturation_run: self.config.scan.saturation_run,
        }
    }

    pub fn window(&self) -> Result<Window, CliError> {
        let s = &self.config.spectrum;
        Ok(Window::new(
            s.re_min,
            s.re_max,
            s.im_min,
            s.im_max.expect("resolved"),
        )?)
    }
}

/// Runs the wave, band, index and HH analysis. The report is returned even
/// when it fails a consistency condition; see
/// [`AnalysisReport::consistency_failures`].
pub fn analyze<W: Sweep>(config: &RunConfig, sweep: &W) -> Result<AnalysisReport, CliError> {
    let prep = Prepared::new(config)?;
    let c = prep.c();
    let coef = &prep.coef;
    let period = prep.profile.period;

    let bands = band_structure_with(coef, prep.nu_min, BandOptions::default(), sweep)?;
    let indices = compute_indices(coef, c)?;
    let opts = prep.scan_options();
    let scan = scan_hh_points_with(coef, c, &bands, opts, sweep)?;
    let corollaries = corollary_report(&indices, &bands, c, &scan.points, &scan.grid);

    let c2m1 = c * c - 1.0;
    let targets: Vec<f64> = (1..=5).map(|k| -100.0 * k as f64 / (c2m1 * c2m1)).collect();
    let probes = nonresonant_probes(period, &targets);
    let asymptotic = asymptotic_check(coef, c, &probes)?;
    let small_nu = small_nu_check(coef, c)?;

    let (band_rows, gap_rows, doubles) = band_rows(&bands);
    Ok(AnalysisReport {
        tool: ToolInfo::default(),
        config: prep.config.clone(),
        wave: WaveSummary::new(&prep.profile),
        indices: (&indices).into(),
        bands: band_rows,
        gaps: gap_rows,
        double_points: doubles,
        scan: ScanSummary {
            nu_min: prep.nu_min,
            step: opts.step(period),
            grid_points: scan.grid.len(),
            band_evaluations: bands.evaluations,
            saturated: scan.saturated.clone(),
        },
        hh_points: scan.points.iter().map(HhRow::from).collect(),
        corollaries: (&corollaries).into(),
        checks: ChecksRow {
            asymptotic: asymptotic.iter().map(ProbeRow::from).collect(),
            small_nu: (&small_nu).into(),
        },
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveRow {
    pub beta: f64,
    pub nu: f64,
    /// `None` when `F` is infinite.
    pub f: Option<f64>,
    pub kind: &'static str,
}

/// `F(nu(i beta))` on `beta = k beta_max / samples`, `k = 1..=samples`, with
/// `beta_max = |c^2 - 1| sqrt(-nu_min)`.
pub fn curve<W: Sweep>(config: &RunConfig, sweep: &W) -> Result<Vec<CurveRow>, CliError> {
    let prep = Prepared::new(config)?;
    let c = prep.c();
    let c2m1 = (c * c - 1.0).abs();
    let beta_max = c2m1 * (-prep.nu_min).sqrt();
    let n = prep.config.curve.samples;
    let rows: Vec<Result<CurveRow, CliError>> = sweep.map(n, |k| {
        let beta = beta_max * (k + 1) as f64 / n as f64;
        let nu = -(beta / c2m1).powi(2);
        let f = extended_f(&prep.coef, c, nu)?;
        Ok(CurveRow {
            beta,
            nu,
            f: f.is_finite().then_some(f.value),
            kind: f.tag(),
        })
    });
    rows.into_iter().collect()
}

pub fn spectrum<W: Sweep>(config: &RunConfig, sweep: &W) -> Result<SpectralCurves, CliError> {
    let prep = Prepared::new(config)?;
    let grid = (prep.config.spectrum.nx, prep.config.spectrum.ny);
    Ok(trace_spectrum_with(&prep.coef, prep.c(), prep.window()?, grid, sweep)?)
}
