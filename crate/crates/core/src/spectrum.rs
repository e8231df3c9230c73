//! Floquet spectrum of the linearization in the complex `lambda` plane.
//!
//! The multipliers are `mu = exp(a) mu_H` with `a = lambda c T / (c^2 - 1)`
//! and `mu_H` the Hill multipliers at `nu(lambda)`. Since `mu_H+ mu_H- = 1`,
//! the indicator `ln|mu_1| ln|mu_2|` equals `(Re a)^2 - ln^2 max|mu_H|`,
//! which needs no branch tracking and vanishes exactly on the spectrum.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::contour;
use crate::error::{Error, Result};
use crate::hamiltonian_hopf::nu_of_lambda;
use crate::hill::{self, BandStructure};
use crate::sweep::{Sequential, Sweep};
use crate::waveform::HillCoefficient;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiplierPair {
    pub lambda: Complex64,
    pub mu1: Complex64,
    pub mu2: Complex64,
    /// Hill discriminant at `nu(lambda)`.
    pub delta: Complex64,
    /// `exp(lambda c T / (c^2 - 1))`.
    pub shift: Complex64,
    /// `ln|mu1| ln|mu2|`.
    pub indicator: f64,
}

fn hill_pair(delta: Complex64) -> (Complex64, Complex64) {
    let half = 0.5 * delta;
    let root = (half * half - 1.0).sqrt();
    let a = half + root;
    let b = half - root;
    if a.norm() >= b.norm() {
        (a, b)
    } else {
        (b, a)
    }
}

fn exponent(lambda: Complex64, c: f64, period: f64) -> Complex64 {
    lambda * (c * period / (c * c - 1.0))
}

fn indicator_from(delta: Complex64, a: Complex64) -> f64 {
    let (big, _) = hill_pair(delta);
    let l = big.norm().ln();
    a.re * a.re - l * l
}

pub fn multipliers(coef: &HillCoefficient, c: f64, lambda: Complex64) -> Result<MultiplierPair> {
    let nu = nu_of_lambda(lambda, c)?;
    let delta = hill::trace(coef, nu)?;
    let a = exponent(lambda, c, coef.period());
    let shift = a.exp();
    let (h1, h2) = hill_pair(delta);
    Ok(MultiplierPair {
        lambda,
        mu1: shift * h1,
        mu2: shift * h2,
        delta,
        shift,
        indicator: indicator_from(delta, a),
    })
}

/// `g(lambda) = ln|mu1| ln|mu2|`.
pub fn indicator(coef: &HillCoefficient, c: f64, lambda: Complex64) -> Result<f64> {
    let nu = nu_of_lambda(lambda, c)?;
    let delta = hill::trace(coef, nu)?;
    Ok(indicator_from(delta, exponent(lambda, c, coef.period())))
}

/// `D(lambda, mu) = det(M(lambda) - mu I) = mu^2 - (mu1 + mu2) mu + mu1 mu2`.
pub fn evaluate_evans(coef: &HillCoefficient, c: f64, lambda: Complex64, mu: Complex64) -> Result<Complex64> {
    let nu = nu_of_lambda(lambda, c)?;
    let delta = hill::trace(coef, nu)?;
    let shift = exponent(lambda, c, coef.period()).exp();
    Ok(mu * mu - shift * delta * mu + shift * shift)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Window {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        let all_finite = [re_min, re_max, im_min, im_max].iter().all(|v| v.is_finite());
        if !all_finite || !(re_max > re_min) || !(im_max > im_min) {
            return Err(Error::InvalidInput("spectrum window must be a nonempty finite rectangle"));
        }
        Ok(Window {
            re_min,
            re_max,
            im_min,
            im_max,
        })
    }

    /// Upper half plane `[-1, 1] x [0, |c^2 - 1| sqrt(-nu_min)]`, which holds
    /// every axis band with `nu >= nu_min`.
    pub fn for_depth(c: f64, nu_min: f64) -> Result<Self> {
        let top = (c * c - 1.0).abs() * (-nu_min).max(0.0).sqrt();
        Window::new(-1.0, 1.0, 0.0, top)
    }

    /// Cell-centred sample coordinates. With a window symmetric about
    /// `Re lambda = 0` and even `nx`, no sample lies on the imaginary axis.
    pub fn axes(&self, nx: usize, ny: usize) -> (Vec<f64>, Vec<f64>) {
        let hx = (self.re_max - self.re_min) / nx as f64;
        let hy = (self.im_max - self.im_min) / ny as f64;
        (
            (0..nx).map(|i| self.re_min + (i as f64 + 0.5) * hx).collect(),
            (0..ny).map(|j| self.im_min + (j as f64 + 0.5) * hy).collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCurves {
    pub window: Window,
    pub grid: (usize, usize),
    /// Polylines of `{g = 0}` as `(Re, Im)` pairs, sorted by first vertex.
    pub segments: Vec<Vec<(f64, f64)>>,
    /// `[beta_lo, beta_hi]` intervals of the imaginary axis in the spectrum.
    pub axis_bands: Vec<(f64, f64)>,
    pub skipped_cells: usize,
}

impl SpectralCurves {
    pub fn cell(&self) -> (f64, f64) {
        (
            (self.window.re_max - self.window.re_min) / self.grid.0 as f64,
            (self.window.im_max - self.window.im_min) / self.grid.1 as f64,
        )
    }

    /// Heights at which traced curves cross `Re lambda = 0`, ascending.
    pub fn axis_crossings(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for line in &self.segments {
            for w in line.windows(2) {
                let ((x0, y0), (x1, y1)) = (w[0], w[1]);
                if (x0 < 0.0 && x1 > 0.0) || (x0 > 0.0 && x1 < 0.0) {
                    let t = x0 / (x0 - x1);
                    out.push(y0 + t * (y1 - y0));
                }
            }
        }
        out.sort_by(|a, b| a.total_cmp(b));
        out
    }
}

pub const MIN_GRID: usize = 64;

/// Traces the spectrum in `window` on an `nx x ny` grid.
pub fn trace_spectrum(coef: &HillCoefficient, c: f64, window: Window, grid: (usize, usize)) -> Result<SpectralCurves> {
    trace_spectrum_with(coef, c, window, grid, &Sequential)
}

pub fn trace_spectrum_with<W: Sweep>(
    coef: &HillCoefficient,
    c: f64,
    window: Window,
    grid: (usize, usize),
    sweep: &W,
) -> Result<SpectralCurves> {
    let (nx, ny) = grid;
    if nx < MIN_GRID || ny < MIN_GRID {
        return Err(Error::InvalidInput("spectrum grid must be at least 64 x 64"));
    }
    nu_of_lambda(Complex64::new(0.0, 0.0), c)?;
    let (xs, ys) = window.axes(nx, ny);
    let values: Vec<f64> = sweep.map(nx * ny, |k| {
        let lambda = Complex64::new(xs[k % nx], ys[k / nx]);
        indicator(coef, c, lambda).unwrap_or(f64::NAN)
    });
    let mut contours = contour::zero_contours(&xs, &ys, &values);
    for line in &mut contours.polylines {
        let closed = line.len() > 2 && line.first() == line.last();
        if !closed && line.last() < line.first() {
            line.reverse();
        }
    }
    contours
        .polylines
        .sort_by(|a, b| a[0].0.total_cmp(&b[0].0).then(a[0].1.total_cmp(&b[0].1)));
    let axis_bands = axis_bands(coef, c, &window)?;
    Ok(SpectralCurves {
        window,
        grid,
        segments: contours.polylines,
        axis_bands,
        skipped_cells: contours.skipped_cells,
    })
}

/// `sigma` on the imaginary axis from the 1-D band structure, as merged
/// `beta` intervals clipped to the window.
pub fn axis_bands(coef: &HillCoefficient, c: f64, window: &Window) -> Result<Vec<(f64, f64)>> {
    let c2m1 = (c * c - 1.0).abs();
    if window.re_min > 0.0 || window.re_max < 0.0 || window.im_max <= 0.0 {
        return Ok(Vec::new());
    }
    let top = window.im_max.max(window.im_min.abs());
    let nu_min = -(top / c2m1).powi(2) - 1.0;
    let bands = hill::band_structure(coef, nu_min)?;
    Ok(axis_bands_from(&bands, c, window))
}

pub fn axis_bands_from(bands: &BandStructure, c: f64, window: &Window) -> Vec<(f64, f64)> {
    let c2m1 = (c * c - 1.0).abs();
    let beta = |nu: f64| c2m1 * (-nu).max(0.0).sqrt();
    let mut out: Vec<(f64, f64)> = Vec::new();
    for b in bands.bands.iter().rev() {
        if b.lo >= 0.0 {
            continue;
        }
        let lo = beta(b.hi.min(0.0)).max(window.im_min);
        let hi = beta(b.lo).min(window.im_max);
        if hi < lo {
            continue;
        }
        match out.last_mut() {
            Some(last) if lo <= last.1 + 1e-12 * (1.0 + last.1) => last.1 = last.1.max(hi),
            _ => out.push((lo, hi)),
        }
    }
    out
}

/// `beta` intervals where `|Delta(nu(i beta))| <= 2`, sampled at `n` points of
/// the window's imaginary range; a cross-check of [`axis_bands`].
pub fn axis_bands_sampled(coef: &HillCoefficient, c: f64, window: &Window, n: usize) -> Result<Vec<(f64, f64)>> {
    let c2m1 = (c * c - 1.0).abs();
    let h = (window.im_max - window.im_min) / n as f64;
    let mut out = Vec::new();
    let mut start: Option<f64> = None;
    let mut last_in = 0.0;
    for j in 0..n {
        let beta = window.im_min + (j as f64 + 0.5) * h;
        let nu = -(beta / c2m1).powi(2);
        let r = hill::monodromy(coef, nu)?;
        let inside = r.gap() <= 0.0;
        match (inside, start) {
            (true, None) => start = Some(beta),
            (false, Some(s)) => {
                out.push((s, last_in));
                start = None;
            }
            _ => {}
        }
        if inside {
            last_in = beta;
        }
    }
    if let Some(s) = start {
        out.push((s, last_in));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeOutcome {
    /// The indicator changes sign on an off-axis arc: unstable spectrum
    /// passes arbitrarily close (at this radius).
    Unstable,
    Stable,
    /// The indicator is below resolution on the arcs.
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OffAxisProbe {
    pub outcome: ProbeOutcome,
    pub radius: f64,
    pub sign_changes: usize,
    pub max_abs: f64,
}

/// Default probe radius `1e-2 (1 + beta)`.
pub fn default_probe_radius(beta: f64) -> f64 {
    1e-2 * (1.0 + beta)
}

/// Looks for sign changes of the indicator on the two off-axis arcs of the
/// circle of the given radius about `i beta`.
pub fn off_axis_probe(coef: &HillCoefficient, c: f64, beta: f64, radius: f64) -> Result<OffAxisProbe> {
    if !(radius > 0.0) || !beta.is_finite() {
        return Err(Error::InvalidInput("probe needs a positive radius"));
    }
    const SAMPLES: usize = 48;
    let mut changes = 0;
    let mut max_abs: f64 = 0.0;
    for side in [1.0, -1.0] {
        let mut prev: Option<bool> = None;
        for k in 0..SAMPLES {
            // angles strictly inside (-pi/2, pi/2), mirrored for the left arc
            let phi = -core::f64::consts::FRAC_PI_2 + core::f64::consts::PI * (k as f64 + 0.5) / SAMPLES as f64;
            let lambda = Complex64::new(side * radius * phi.cos(), beta + radius * phi.sin());
            let g = indicator(coef, c, lambda)?;
            max_abs = max_abs.max(g.abs());
            let pos = g >= 0.0;
            if let Some(p) = prev {
                if p != pos {
                    changes += 1;
                }
            }
            prev = Some(pos);
        }
    }
    let floor = 1e-13 * (1.0 + beta * beta);
    let outcome = if max_abs <= floor {
        ProbeOutcome::Indeterminate
    } else if changes > 0 {
        ProbeOutcome::Unstable
    } else {
        ProbeOutcome::Stable
    };
    Ok(OffAxisProbe {
        outcome,
        radius,
        sign_changes: changes,
        max_abs,
    })
}
