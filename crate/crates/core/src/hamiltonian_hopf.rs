//! Dynamical Hamiltonian-Hopf points on the imaginary axis.
//!
//! A point `lambda = i beta` of the stable spectrum is an accumulation point
//! of unstable spectrum exactly when `nu = F(nu)` at `nu = nu(i beta)`, with
//! `F(nu) = -c^2 T^2 (4 - Delta^2) / (4 Delta_nu^2)` extended to the critical
//! points of the discriminant.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::hill::{self, BandStructure, MonodromyResult};
use crate::roots;
use crate::sweep::{Sequential, Sweep};
use crate::waveform::HillCoefficient;

/// `|Delta_nu| <= CRITICAL_TOL (1 + |nu|)` marks a critical point.
pub const CRITICAL_TOL: f64 = 1e-7;

/// At a critical point, `|Delta^2 - 4| <= REGULARIZE_TOL` selects the
/// double-point limit instead of a pole.
pub const REGULARIZE_TOL: f64 = 1e-7;

/// Residual target `|F(nu*) - nu*| <= RESIDUAL_TOL (1 + |nu*|)`.
pub const RESIDUAL_TOL: f64 = 1e-9;

/// `nu = (lambda / (c^2 - 1))^2`.
pub fn nu_of_lambda(lambda: Complex64, c: f64) -> Result<Complex64> {
    let c2m1 = checked_c2m1(c)?;
    let q = lambda / c2m1;
    Ok(q * q)
}

/// Upper-half-plane preimage `i |c^2 - 1| sqrt(-nu)` of a negative `nu`.
pub fn lambda_of_nu(nu: f64, c: f64) -> Result<Complex64> {
    let c2m1 = checked_c2m1(c)?;
    if !(nu < 0.0) {
        return Err(Error::InvalidInput("lambda_of_nu needs nu < 0"));
    }
    Ok(Complex64::new(0.0, beta_of_nu(nu, c2m1)))
}

#[inline]
fn beta_of_nu(nu: f64, c2m1: f64) -> f64 {
    c2m1.abs() * (-nu).sqrt()
}

fn checked_c2m1(c: f64) -> Result<f64> {
    let c2m1 = c * c - 1.0;
    if !c.is_finite() || c2m1.abs() <= 1e-12 {
        return Err(Error::InvalidInput("wave speed must satisfy c^2 != 1"));
    }
    Ok(c2m1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FKind {
    Finite,
    PlusInfinity,
    MinusInfinity,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtendedFValue {
    pub nu: f64,
    pub kind: FKind,
    /// `F(nu)`; `+-inf` for the infinite kinds.
    pub value: f64,
    /// The double-point limit was used.
    pub regularized: bool,
    pub delta: f64,
    pub delta_nu: f64,
    pub delta_nunu: f64,
    /// `Delta^2 - 4`.
    pub gap: f64,
}

impl ExtendedFValue {
    pub fn is_finite(&self) -> bool {
        self.kind == FKind::Finite
    }

    /// `tanh(F - nu)`, which is `+-1` at the poles.
    pub fn g(&self) -> f64 {
        match self.kind {
            FKind::Finite => (self.value - self.nu).tanh(),
            FKind::PlusInfinity => 1.0,
            FKind::MinusInfinity => -1.0,
        }
    }

    /// Tag used in tabular output.
    pub fn tag(&self) -> &'static str {
        match (self.kind, self.regularized) {
            (FKind::Finite, false) => "finite",
            (FKind::Finite, true) => "regularized",
            (FKind::PlusInfinity, _) => "+inf",
            (FKind::MinusInfinity, _) => "-inf",
        }
    }
}

/// `F` from a monodromy evaluation at real `nu`.
pub fn f_from_monodromy(c: f64, period: f64, r: &MonodromyResult<f64>) -> Result<ExtendedFValue> {
    let nu = r.nu;
    let c2t2 = c * c * period * period;
    let gap = r.gap();
    let mut out = ExtendedFValue {
        nu,
        kind: FKind::Finite,
        value: 0.0,
        regularized: false,
        delta: r.delta,
        delta_nu: r.delta_nu,
        delta_nunu: r.delta_nunu,
        gap,
    };
    let scale = 1.0 + nu.abs();
    if r.delta_nu.abs() > CRITICAL_TOL * scale {
        out.value = c2t2 * gap / (4.0 * r.delta_nu * r.delta_nu);
        return Ok(out);
    }
    if gap.abs() > REGULARIZE_TOL {
        if gap > 0.0 {
            out.kind = FKind::PlusInfinity;
            out.value = f64::INFINITY;
        } else {
            out.kind = FKind::MinusInfinity;
            out.value = f64::NEG_INFINITY;
        }
        return Ok(out);
    }
    if r.delta_nunu.abs() <= CRITICAL_TOL * scale {
        return Err(Error::DegenerateDiscriminant { nu });
    }
    // Delta^2 - 4 ~ 2 Delta Delta_nunu (nu - nu0)^2 / 2 and
    // Delta_nu ~ Delta_nunu (nu - nu0) near a double point nu0
    out.value = c2t2 * r.delta / (4.0 * r.delta_nunu);
    out.regularized = true;
    Ok(out)
}

/// Extended `F(nu)` for real `nu`.
pub fn extended_f(coef: &HillCoefficient, c: f64, nu: f64) -> Result<ExtendedFValue> {
    checked_c2m1(c)?;
    if !nu.is_finite() {
        return Err(Error::InvalidInput("nu must be finite"));
    }
    let r = hill::monodromy(coef, nu)?;
    f_from_monodromy(c, coef.period(), &r)
}

/// Local expansion data of the multipliers at an on-axis point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransversalityData {
    pub t0: f64,
    pub t1: f64,
    /// `2 cos(theta0) = t0`; present in the interior case.
    pub theta0: Option<f64>,
    pub delta_plus: Option<f64>,
    pub delta_minus: Option<f64>,
    pub double_point: bool,
    pub t2: Option<f64>,
    pub delta_hat_plus: Option<f64>,
    pub delta_hat_minus: Option<f64>,
}

impl TransversalityData {
    pub fn from_values(c: f64, period: f64, nu: f64, delta: f64, delta_nu: f64, delta_nunu: f64, gap: f64) -> Self {
        let c2m1 = c * c - 1.0;
        let beta = beta_of_nu(nu, c2m1);
        let drift = c * period / c2m1;
        let t0 = delta;
        let t1 = 2.0 * beta / (c2m1 * c2m1) * delta_nu;
        let double_point = delta_nu.abs() <= CRITICAL_TOL * (1.0 + nu.abs());
        let mut out = TransversalityData {
            t0,
            t1,
            theta0: None,
            delta_plus: None,
            delta_minus: None,
            double_point,
            t2: None,
            delta_hat_plus: None,
            delta_hat_minus: None,
        };
        if double_point {
            let t2 = beta / (c2m1 * c2m1) * (-2.0 * delta.signum() * delta_nunu).max(0.0).sqrt();
            out.t2 = Some(t2);
            out.delta_hat_plus = Some(drift + t2);
            out.delta_hat_minus = Some(drift - t2);
        } else {
            let root = (-gap).max(0.0).sqrt();
            out.theta0 = Some((0.5 * t0).clamp(-1.0, 1.0).acos());
            out.delta_plus = Some(drift + t1 / root);
            out.delta_minus = Some(drift - t1 / root);
        }
        out
    }

    /// `min |delta_+-|`, or the hatted analogue at a double point.
    pub fn min_delta(&self) -> f64 {
        let pair = if self.double_point {
            (self.delta_hat_plus, self.delta_hat_minus)
        } else {
            (self.delta_plus, self.delta_minus)
        };
        match pair {
            (Some(a), Some(b)) => a.abs().min(b.abs()),
            _ => f64::INFINITY,
        }
    }
}

/// Transversality data at an arbitrary in-band `nu < 0`.
pub fn transversality(coef: &HillCoefficient, c: f64, nu: f64) -> Result<TransversalityData> {
    checked_c2m1(c)?;
    if !(nu < 0.0) {
        return Err(Error::InvalidInput("transversality needs nu < 0"));
    }
    let r = hill::monodromy(coef, nu)?;
    Ok(TransversalityData::from_values(
        c,
        coef.period(),
        nu,
        r.delta,
        r.delta_nu,
        r.delta_nunu,
        r.gap(),
    ))
}

/// A root `nu* < 0` of `F(nu) - nu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HhPoint {
    pub nu_star: f64,
    pub beta: f64,
    pub band_index: usize,
    pub residual: f64,
    pub f: ExtendedFValue,
    pub trans: TransversalityData,
}

impl HhPoint {
    pub fn lambda(&self) -> Complex64 {
        Complex64::new(0.0, self.beta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    /// Grid step in `sqrt(-nu)`; defaults to `(pi / T) / 16`.
    pub grid_step: Option<f64>,
    /// Consecutive saturated grid values (`|G| = 1`) reported as a run.
    pub saturation_run: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            grid_step: None,
            saturation_run: 8,
        }
    }
}

impl ScanOptions {
    pub fn step(&self, period: f64) -> f64 {
        self.grid_step
            .unwrap_or(core::f64::consts::PI / period / 16.0)
    }
}

/// Default scan depth `-(40 / T)^2`.
pub fn default_nu_min(period: f64) -> f64 {
    let s = 40.0 / period;
    -s * s
}

#[derive(Debug, Clone, PartialEq)]
pub struct HhScan {
    pub points: Vec<HhPoint>,
    /// `nu` intervals over which `tanh(F - nu)` stayed saturated at `+-1`.
    pub saturated: Vec<(f64, f64)>,
    /// Grid nodes with their `F` values, ascending in `nu`.
    pub grid: Vec<ExtendedFValue>,
}

/// Scans `[nu_min, 0)` for sign changes of `tanh(F(nu) - nu)`.
pub fn scan_hh_points(coef: &HillCoefficient, c: f64, nu_min: f64, opts: ScanOptions) -> Result<HhScan> {
    let bands = hill::band_structure(coef, nu_min)?;
    scan_hh_points_with(coef, c, &bands, opts, &Sequential)
}

/// As [`scan_hh_points`] with a precomputed band structure (whose scan
/// window sets `nu_min`) and a caller-chosen sweep.
pub fn scan_hh_points_with<W: Sweep>(
    coef: &HillCoefficient,
    c: f64,
    bands: &BandStructure,
    opts: ScanOptions,
    sweep: &W,
) -> Result<HhScan> {
    checked_c2m1(c)?;
    let nu_min = bands.nu_min_scanned;
    if !(nu_min < 0.0) {
        return Err(Error::InvalidInput("scan needs nu_min < 0"));
    }
    let period = coef.period();
    let ds = opts.step(period);
    if !(ds > 0.0) || !ds.is_finite() {
        return Err(Error::InvalidInput("scan step must be positive"));
    }
    let s_max = (-nu_min).sqrt();
    let n = ((s_max / ds).ceil() as usize).max(2);
    let s_lo = 0.5 * ds;
    let nu_hi = -s_lo * s_lo;
    let mut nodes: Vec<f64> = (0..=n)
        .map(|i| {
            let s = s_lo + (s_max - s_lo) * i as f64 / n as f64;
            if i == n {
                nu_min
            } else {
                -s * s
            }
        })
        .collect();
    for e in bands.simple_edges().iter().chain(bands.double_points.iter()) {
        if e.nu >= nu_min && e.nu < nu_hi {
            nodes.push(e.nu);
        }
    }
    nodes.sort_by(|a, b| a.total_cmp(b));
    nodes.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * (1.0 + a.abs()));

    let values: Vec<Result<ExtendedFValue>> = sweep.map(nodes.len(), |i| extended_f(coef, c, nodes[i]));
    let grid: Vec<ExtendedFValue> = values.into_iter().collect::<Result<_>>()?;

    let mut saturated = Vec::new();
    let mut run_start: Option<usize> = None;
    for (i, v) in grid.iter().enumerate() {
        let sat = v.g().abs() == 1.0;
        match (sat, run_start) {
            (true, None) => run_start = Some(i),
            (false, Some(s)) => {
                if i - s >= opts.saturation_run {
                    saturated.push((grid[s].nu, grid[i - 1].nu));
                }
                run_start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = run_start {
        if grid.len() - s >= opts.saturation_run {
            saturated.push((grid[s].nu, grid[grid.len() - 1].nu));
        }
    }

    let brackets: Vec<(f64, f64)> = grid
        .windows(2)
        .filter(|w| {
            let (a, b) = (w[0].g(), w[1].g());
            (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0) || (a == 0.0 && w[0].nu < 0.0)
        })
        .map(|w| (w[0].nu, w[1].nu))
        .collect();

    let refined: Vec<Result<HhPoint>> = sweep.map(brackets.len(), |k| {
        let (lo, hi) = brackets[k];
        refine_root(coef, c, bands, lo, hi)
    });
    let mut points: Vec<HhPoint> = refined.into_iter().collect::<Result<_>>()?;
    points.sort_by(|a, b| a.nu_star.total_cmp(&b.nu_star));
    points.dedup_by(|a, b| (a.nu_star - b.nu_star).abs() <= 1e-12 * (1.0 + a.nu_star.abs()));
    Ok(HhScan {
        points,
        saturated,
        grid,
    })
}

fn refine_root(coef: &HillCoefficient, c: f64, bands: &BandStructure, lo: f64, hi: f64) -> Result<HhPoint> {
    let nu = roots::brent(
        |nu| Ok(extended_f(coef, c, nu)?.g()),
        lo,
        hi,
        1e-15 * (1.0 + lo.abs()),
    )?;
    let f = extended_f(coef, c, nu)?;
    let r = hill::monodromy(coef, nu)?;
    let residual = (f.value - nu).abs();
    let band_index = bands
        .band_index_tol(nu, 1e-9 * (1.0 + nu.abs()))
        .ok_or(Error::InconsistentWithTheory("root of F(nu) - nu outside the bands"))?;
    let c2m1 = c * c - 1.0;
    Ok(HhPoint {
        nu_star: nu,
        beta: beta_of_nu(nu, c2m1),
        band_index,
        residual,
        f,
        trans: TransversalityData::from_values(c, coef.period(), nu, r.delta, r.delta_nu, r.delta_nunu, r.gap()),
    })
}

/// Modulational and parity indices at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Indices {
    pub gamma_m: i8,
    pub gamma_p: i8,
    pub delta_at_0: f64,
    pub delta_nu_at_0: f64,
    pub delta_nunu_at_0: f64,
    /// `c^2 T^2`.
    pub c2t2: f64,
    /// `sgn(c^2 T^2 - Delta_nu(0))`, the sign of `D_lambda_lambda(0, 1)`.
    pub evans_curvature_sign: i8,
    /// `Delta_nu(0) = c^2 T^2` within tolerance; `gamma_p` is then 0.
    pub degenerate: bool,
    /// `Delta_nu(0) = 0` within tolerance; `gamma_m` is then 0.
    pub gamma_m_zero: bool,
}

fn sign_i8(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

impl Indices {
    pub fn from_values(c: f64, period: f64, delta_at_0: f64, delta_nu_at_0: f64, delta_nunu_at_0: f64) -> Self {
        let c2t2 = c * c * period * period;
        let gamma_m_zero = delta_nu_at_0.abs() <= CRITICAL_TOL;
        let degenerate = (c2t2 - delta_nu_at_0).abs() <= CRITICAL_TOL * (1.0 + c2t2);
        let curvature = if degenerate { 0 } else { sign_i8(c2t2 - delta_nu_at_0) };
        let gamma_p = if degenerate { 0 } else { sign_i8(c * c - 1.0) * curvature };
        Indices {
            gamma_m: if gamma_m_zero { 0 } else { sign_i8(delta_nu_at_0) },
            gamma_p,
            delta_at_0,
            delta_nu_at_0,
            delta_nunu_at_0,
            c2t2,
            evans_curvature_sign: curvature,
            degenerate,
            gamma_m_zero,
        }
    }

    pub fn product(&self) -> i8 {
        self.gamma_m * self.gamma_p
    }
}

/// Indices of a wave coefficient; fails unless `Delta(0) = 2`.
pub fn compute_indices(coef: &HillCoefficient, c: f64) -> Result<Indices> {
    checked_c2m1(c)?;
    let r = hill::monodromy(coef, 0.0)?;
    if (r.delta - 2.0).abs() > 1e-6 {
        return Err(Error::NotAWaveCoefficient { delta0: r.delta });
    }
    Ok(Indices::from_values(c, coef.period(), r.delta, r.delta_nu, r.delta_nunu))
}

/// Outcome of one implication `predicate => HH points exist`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PredicateOutcome {
    pub fired: bool,
    /// HH points supporting the conclusion were found.
    pub matched: bool,
    /// The scan window cannot settle the conclusion either way.
    pub inconclusive: bool,
}

impl PredicateOutcome {
    fn not_fired() -> Self {
        PredicateOutcome {
            fired: false,
            matched: false,
            inconclusive: false,
        }
    }

    pub fn consistent(&self) -> bool {
        !self.fired || self.matched || self.inconclusive
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapDepth {
    /// `F - nu < 0` is observed in both adjacent bands, so each band must
    /// hold a root of `F = nu`.
    Deep,
    /// The asymptotic sign is not yet reached on one side; reported only.
    Shallow,
    /// The band below the gap is cut by the scan window.
    Truncated,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapCheck {
    pub lo: f64,
    pub hi: f64,
    pub depth: GapDepth,
    pub hh_below: usize,
    pub hh_above: usize,
}

impl GapCheck {
    pub fn consistent(&self) -> bool {
        self.depth != GapDepth::Deep || (self.hh_below >= 1 && self.hh_above >= 1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorollaryReport {
    /// `gamma_M gamma_P = -1`.
    pub c2: PredicateOutcome,
    /// `gamma_M gamma_P = +1`, a negative gap and `c^2 > 1`.
    pub c3: PredicateOutcome,
    /// One entry per open negative gap when `c^2 > 1`.
    pub c4: Vec<GapCheck>,
}

impl CorollaryReport {
    pub fn consistent(&self) -> bool {
        self.c2.consistent() && self.c3.consistent() && self.c4.iter().all(GapCheck::consistent)
    }

    /// Whether some predicate fired.
    pub fn any_fired(&self) -> bool {
        self.c2.fired || self.c3.fired || self.c4.iter().any(|g| g.depth == GapDepth::Deep)
    }
}

/// Checks the index and gap implications against found HH points.
///
/// `scan_grid` is the `F` grid of the scan. Its deepest finite value decides
/// whether the window reaches the sign `F - nu` takes as `nu -> -inf`, and
/// its values inside the bands next to a gap decide whether that gap is deep
/// enough for the two-root argument.
pub fn corollary_report(
    indices: &Indices,
    bands: &BandStructure,
    c: f64,
    hh: &[HhPoint],
    scan_grid: &[ExtendedFValue],
) -> CorollaryReport {
    let c2m1 = c * c - 1.0;
    let superluminal = c2m1 > 0.0;
    let negative_gaps: Vec<_> = bands.gaps.iter().filter(|g| g.hi < 0.0).collect();

    let c2 = if indices.product() == -1 {
        // near 0 and near -inf the signs of F - nu differ; a root lies in
        // the window once the deepest scanned values show the far sign
        let far_sign = -c2m1.signum();
        let reached = scan_grid
            .iter()
            .find(|v| v.is_finite() && !v.regularized && v.value != v.nu)
            .map(|v| (v.value - v.nu).signum() == far_sign)
            .unwrap_or(false);
        PredicateOutcome {
            fired: true,
            matched: !hh.is_empty(),
            inconclusive: hh.is_empty() && !reached,
        }
    } else {
        PredicateOutcome::not_fired()
    };

    let c3 = if indices.product() == 1 && superluminal && !negative_gaps.is_empty() {
        PredicateOutcome {
            fired: true,
            matched: !hh.is_empty(),
            inconclusive: false,
        }
    } else {
        PredicateOutcome::not_fired()
    };

    let negative_in = |lo: f64, hi: f64| {
        scan_grid
            .iter()
            .any(|v| v.nu > lo && v.nu < hi && (v.kind == FKind::MinusInfinity || (v.is_finite() && v.value < v.nu)))
    };
    let mut c4 = Vec::new();
    if superluminal {
        for (k, g) in negative_gaps.iter().enumerate() {
            let below_lo = if k == 0 {
                bands.nu_min_scanned
            } else {
                negative_gaps[k - 1].hi
            };
            let above_hi = negative_gaps.get(k + 1).map(|n| n.lo).unwrap_or(0.0);
            let hh_below = hh.iter().filter(|p| p.nu_star > below_lo && p.nu_star < g.lo).count();
            let hh_above = hh.iter().filter(|p| p.nu_star > g.hi && p.nu_star < above_hi).count();
            let depth = if g.lo_edge.is_none() {
                GapDepth::Truncated
            } else if negative_in(below_lo, g.lo) && negative_in(g.hi, above_hi) {
                GapDepth::Deep
            } else {
                GapDepth::Shallow
            };
            c4.push(GapCheck {
                lo: g.lo,
                hi: g.hi,
                depth,
                hh_below,
                hh_above,
            });
        }
    }

    CorollaryReport { c2, c3, c4 }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticProbe {
    pub nu: f64,
    /// `|sin(T sqrt(-nu))|`.
    pub sin_abs: f64,
    /// `(F(nu) - nu) / ((c^2 - 1) nu)`, absent for rejected probes.
    pub ratio: Option<f64>,
    pub f_minus_nu: Option<f64>,
}

/// Evaluates `(F - nu) / ((c^2 - 1) nu)` at deep probes. Probes with
/// `|sin(T sqrt(-nu))| <= 0.3` are rejected.
pub fn asymptotic_check(coef: &HillCoefficient, c: f64, probes: &[f64]) -> Result<Vec<AsymptoticProbe>> {
    let c2m1 = checked_c2m1(c)?;
    let period = coef.period();
    probes
        .iter()
        .map(|&nu| {
            if !(nu < 0.0) {
                return Err(Error::InvalidInput("asymptotic probes must be negative"));
            }
            let sin_abs = (period * (-nu).sqrt()).sin().abs();
            if sin_abs <= 0.3 {
                return Ok(AsymptoticProbe {
                    nu,
                    sin_abs,
                    ratio: None,
                    f_minus_nu: None,
                });
            }
            let f = extended_f(coef, c, nu)?;
            let fm = f.value - nu;
            Ok(AsymptoticProbe {
                nu,
                sin_abs,
                ratio: Some(fm / (c2m1 * nu)),
                f_minus_nu: Some(fm),
            })
        })
        .collect()
}

/// Probes between resonances, `sqrt(-nu) = (n + 1/2) pi / T`, nearest to
/// each target depth.
pub fn nonresonant_probes(period: f64, targets: &[f64]) -> Vec<f64> {
    let unit = core::f64::consts::PI / period;
    targets
        .iter()
        .map(|&t| {
            let n = ((-t).max(0.0).sqrt() / unit - 0.5).round().max(0.0);
            let s = (n + 0.5) * unit;
            -s * s
        })
        .collect()
}

/// Behaviour of `F(nu) - nu` as `nu -> 0-`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SmallNuCheck {
    /// `Delta_nu(0) != 0`: `F - nu ~ slope nu` with slope
    /// `(c^2 T^2 - Delta_nu(0)) / Delta_nu(0)`.
    Slope { predicted: f64, measured: f64 },
    /// `Delta_nu(0) = 0`: `F - nu` tends to `c^2 T^2 / (2 Delta_nunu(0))`.
    Intercept { predicted: f64, measured: f64 },
}

impl SmallNuCheck {
    pub fn relative_error(&self) -> f64 {
        let (p, m) = match *self {
            SmallNuCheck::Slope { predicted, measured } => (predicted, measured),
            SmallNuCheck::Intercept { predicted, measured } => (predicted, measured),
        };
        (p - m).abs() / p.abs().max(f64::MIN_POSITIVE)
    }
}

/// Predicted vs measured behaviour of `F - nu` at `0-`, measured at
/// `nu = -h / T^2` for `h in {1e-3, 2e-3, 4e-3}` and extrapolated to 0.
pub fn small_nu_check(coef: &HillCoefficient, c: f64) -> Result<SmallNuCheck> {
    checked_c2m1(c)?;
    let period = coef.period();
    let r0 = hill::monodromy(coef, 0.0)?;
    let c2t2 = c * c * period * period;
    let nus = [-1e-3, -2e-3, -4e-3].map(|h| h / (period * period));
    let mut g = [0.0; 3];
    for (k, &nu) in nus.iter().enumerate() {
        let f = extended_f(coef, c, nu)?;
        if !f.is_finite() {
            return Err(Error::InconsistentWithTheory("F is infinite next to nu = 0"));
        }
        g[k] = f.value - nu;
    }
    if r0.delta_nu.abs() > CRITICAL_TOL {
        let q = g_over(&g, &nus);
        Ok(SmallNuCheck::Slope {
            predicted: (c2t2 - r0.delta_nu) / r0.delta_nu,
            measured: extrapolate_to_zero(&nus, &q),
        })
    } else {
        if r0.delta_nunu >= 0.0 {
            return Err(Error::InconsistentWithTheory(
                "Delta_nu(0) = 0 requires Delta_nunu(0) < 0",
            ));
        }
        Ok(SmallNuCheck::Intercept {
            predicted: c2t2 / (2.0 * r0.delta_nunu),
            measured: extrapolate_to_zero(&nus, &g),
        })
    }
}

fn g_over(g: &[f64; 3], nus: &[f64; 3]) -> [f64; 3] {
    [g[0] / nus[0], g[1] / nus[1], g[2] / nus[2]]
}

/// Value at 0 of the quadratic through three points.
fn extrapolate_to_zero(x: &[f64; 3], y: &[f64; 3]) -> f64 {
    let mut acc = 0.0;
    for i in 0..3 {
        let mut w = 1.0;
        for j in 0..3 {
            if i != j {
                w *= (0.0 - x[j]) / (x[i] - x[j]);
            }
        }
        acc += w * y[i];
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn lambda_nu_round_trip() {
        let c: f64 = 1.45;
        let nu = nu_of_lambda(Complex64::new(0.0, c * c - 1.0), c).unwrap();
        assert!((nu.re + 1.0).abs() < 1e-15 && nu.im.abs() < 1e-15);
        let l = lambda_of_nu(-1.0, c).unwrap();
        assert!((l.im - 1.1025).abs() < 1e-15 && l.re == 0.0);
        let real = nu_of_lambda(Complex64::new(0.7, 0.0), c).unwrap();
        assert!(real.re >= 0.0 && real.im == 0.0);
        assert!(lambda_of_nu(0.0, c).is_err());
        assert!(nu_of_lambda(Complex64::new(1.0, 0.0), 1.0).is_err());
    }

    #[test]
    fn zero_potential_f_is_c2_nu() {
        let coef = HillCoefficient::constant(0.0, PI).unwrap();
        let f = extended_f(&coef, 2.0, -2.25).unwrap();
        assert_eq!(f.kind, FKind::Finite);
        assert!((f.value + 9.0).abs() < 1e-9);
    }

    #[test]
    fn regularized_double_point_value() {
        // P = 0, T = pi: nu = -1 is a double point and F = c^2 nu throughout
        let coef = HillCoefficient::constant(0.0, PI).unwrap();
        let f = extended_f(&coef, 2.0, -1.0).unwrap();
        assert!(f.regularized);
        assert!((f.value + 4.0).abs() < 1e-8, "F = {}", f.value);
        for side in [-1.0, 1.0] {
            let near = extended_f(&coef, 2.0, -1.0 + side * 1e-4).unwrap();
            assert!(!near.regularized);
            assert!((near.value - f.value).abs() < 1e-3);
        }
    }

    #[test]
    fn pole_in_open_gap() {
        let coef = HillCoefficient::from_fn(PI, |z| 2.0 * (2.0 * z).cos()).unwrap();
        let bands = hill::band_structure(&coef, -10.0).unwrap();
        let g = bands.gaps.iter().find(|g| g.hi < -2.0).expect("negative gap");
        // the critical point inside the gap is a pole of F
        let crit = roots::bisect(|nu| hill::discriminant(&coef, nu).unwrap().1, g.lo, g.hi, 1e-14).unwrap();
        let f = extended_f(&coef, 1.5, crit).unwrap();
        assert_eq!(f.kind, FKind::PlusInfinity);
        assert_eq!(f.g(), 1.0);
    }

    #[test]
    fn index_sign_arithmetic() {
        let i = Indices::from_values(1.5, 2.0, 2.0, 0.5, -1.0);
        assert_eq!((i.gamma_m, i.gamma_p), (1, 1));
        let i = Indices::from_values(0.5, 2.0, 2.0, 0.5, -1.0);
        assert_eq!((i.gamma_m, i.gamma_p), (1, -1));
        let c: f64 = 1.5;
        let t = 2.0;
        let i = Indices::from_values(c, t, 2.0, c * c * t * t, -1.0);
        assert!(i.degenerate);
        assert_eq!(i.gamma_p, 0);
    }

    #[test]
    fn zero_potential_has_no_hh_points() {
        let coef = HillCoefficient::constant(0.0, PI).unwrap();
        let scan = scan_hh_points(&coef, 1.45, -50.0, ScanOptions::default()).unwrap();
        assert!(scan.points.is_empty());
    }

    #[test]
    fn small_nu_branches() {
        // P = 0: Delta_nu(0) = T^2, slope c^2 - 1
        let coef = HillCoefficient::constant(0.0, PI).unwrap();
        match small_nu_check(&coef, 1.45).unwrap() {
            SmallNuCheck::Slope { predicted, measured } => {
                assert!((predicted - (1.45f64 * 1.45 - 1.0)).abs() < 1e-9);
                assert!((measured - predicted).abs() < 1e-3 * predicted.abs());
            }
            other => panic!("unexpected {other:?}"),
        }
        // P = 4, T = pi: nu = 0 is a double point with F = c^2 (nu - 4)
        let coef = HillCoefficient::constant(4.0, PI).unwrap();
        let c: f64 = 1.3;
        match small_nu_check(&coef, c).unwrap() {
            SmallNuCheck::Intercept { predicted, measured } => {
                assert!((predicted + 4.0 * c * c).abs() < 1e-6, "{predicted}");
                assert!((measured - predicted).abs() < 1e-3 * predicted.abs());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn nonresonant_probe_placement() {
        let t = 2.0;
        for p in nonresonant_probes(t, &[-50.0, -200.0]) {
            assert!(((t * (-p).sqrt()).sin().abs() - 1.0).abs() < 1e-12);
        }
    }
}
