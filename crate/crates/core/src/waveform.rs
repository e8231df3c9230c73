//! Periodic traveling waves `u = f(x - ct)` of `u_tt - u_xx + V'(u) = 0`.
//!
//! The profile obeys `(c^2 - 1) f'' + V'(f) = 0` with first integral
//! `E = (c^2 - 1) f'^2 / 2 + V(f)`. Writing `s = sgn(c^2 - 1)` and
//! `m = |c^2 - 1|`, this is the motion of a particle of mass `m` in the
//! effective potential `U = s V` at energy `s E`, which is how orbits are
//! classified for both super- and subluminal speeds.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4};

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::ode::{Dop853, Tolerances};
use crate::potential::Potential;
use crate::quad::{self, QuadOptions};
use crate::roots;

/// Minimum node count accepted by [`build_profile`].
pub const MIN_NODES: usize = 256;

/// Relative energy-drift tolerance every profile node must meet.
pub const ENERGY_TOL: f64 = 1e-8;

/// Profile ODE tolerances. Tighter than the 1e-10 minimum the energy
/// invariant needs so that downstream discriminants stay accurate.
pub const PROFILE_TOL: Tolerances = Tolerances::new(1e-12, 1e-14);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveParameters {
    pub c: f64,
    pub energy: f64,
}

impl WaveParameters {
    pub fn new(c: f64, energy: f64) -> Result<Self> {
        if !c.is_finite() || !energy.is_finite() {
            return Err(Error::InvalidInput("wave speed and energy must be finite"));
        }
        if (c * c - 1.0).abs() <= 1e-12 {
            return Err(Error::InvalidInput("wave speed must satisfy c^2 != 1"));
        }
        Ok(WaveParameters { c, energy })
    }

    #[inline]
    pub fn c2m1(&self) -> f64 {
        self.c * self.c - 1.0
    }

    #[inline]
    pub fn superluminal(&self) -> bool {
        self.c2m1() > 0.0
    }

    fn sign(&self) -> f64 {
        self.c2m1().signum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// Both `f` and `f'` periodic.
    Librational,
    /// `f'` periodic, `f` advances by one period of `V`.
    Rotational,
}

/// Controls how the potential well is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitOptions {
    /// Pick the well whose minimum is nearest to this point instead of the
    /// lowest minimum.
    pub center: Option<f64>,
    /// Half-width of the search window for non-periodic potentials.
    pub search_radius: f64,
    /// Sample count used to locate critical points of the potential.
    pub scan_points: usize,
}

impl Default for OrbitOptions {
    fn default() -> Self {
        OrbitOptions {
            center: None,
            search_radius: 10.0,
            scan_points: 4096,
        }
    }
}

/// The closed (or rotating) orbit of the profile in the `(f, f')` plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Orbit {
    pub regime: Regime,
    /// Where `|f'|` is maximal; the profile starts here.
    pub center: f64,
    /// Turning points (librational) or one potential period starting at
    /// `center` (rotational).
    pub lo: f64,
    pub hi: f64,
    /// Energy in the effective potential `U = sgn(c^2 - 1) V`.
    pub effective_energy: f64,
}

#[derive(Debug, Clone, Copy)]
struct Critical {
    u: f64,
    value: f64,
    is_min: bool,
}

fn critical_points(p: &dyn Potential, sign: f64, a: f64, b: f64, n: usize) -> Result<Vec<Critical>> {
    let du = |u: f64| sign * p.values(u).dv;
    let mut out = Vec::new();
    let step = (b - a) / n as f64;
    let mut prev_u = a;
    let mut prev = du(a);
    for i in 1..=n {
        let u = a + step * i as f64;
        let cur = du(u);
        if !cur.is_finite() {
            return Err(Error::EvaluationDomain { u });
        }
        let root = if cur == 0.0 {
            Some(u)
        } else if prev == 0.0 && i == 1 {
            Some(prev_u)
        } else if (prev < 0.0 && cur > 0.0) || (prev > 0.0 && cur < 0.0) {
            Some(roots::bisect(du, prev_u, u, 1e-15 * u.abs().max(1.0))?)
        } else {
            None
        };
        if let Some(root) = root {
            let d2 = sign * p.values(root).d2v;
            let is_min = if d2 != 0.0 { d2 > 0.0 } else { du(root + 1e-6) > 0.0 };
            out.push(Critical {
                u: root,
                value: sign * p.values(root).v,
                is_min,
            });
        }
        prev = cur;
        prev_u = u;
    }
    Ok(out)
}

/// Locates the periodic orbit of the profile for the given parameters.
pub fn find_orbit(p: &dyn Potential, w: WaveParameters, opts: OrbitOptions) -> Result<Orbit> {
    let sign = w.sign();
    let e_eff = sign * w.energy;
    let tol = 1e-10 * (1.0 + e_eff.abs());
    let effective = |u: f64| sign * p.values(u).v;

    if let Some(period) = p.period() {
        let crit = critical_points(p, sign, 0.0, period, opts.scan_points)?;
        let minima: Vec<&Critical> = crit.iter().filter(|c| c.is_min).collect();
        let maxima: Vec<&Critical> = crit.iter().filter(|c| !c.is_min).collect();
        if minima.is_empty() || maxima.is_empty() {
            return Err(Error::NoOrbit {
                energy: w.energy,
                reason: "potential has no wells",
            });
        }
        let global_max = maxima.iter().map(|c| c.value).fold(f64::NEG_INFINITY, f64::max);
        let well = select_minimum(&minima, opts.center, Some(period));
        if e_eff < well.value - tol {
            return Err(Error::NoOrbit {
                energy: w.energy,
                reason: "energy below the well minimum",
            });
        }
        if (e_eff - well.value).abs() <= tol {
            return Err(Error::NoPeriodicOrbit {
                energy: w.energy,
                critical: sign * well.value,
                kind: "equilibrium",
            });
        }
        if (e_eff - global_max).abs() <= tol {
            return Err(Error::NoPeriodicOrbit {
                energy: w.energy,
                critical: sign * global_max,
                kind: "separatrix",
            });
        }
        if e_eff > global_max {
            let global_min = minima
                .iter()
                .min_by(|a, b| a.value.total_cmp(&b.value))
                .expect("nonempty");
            return Ok(Orbit {
                regime: Regime::Rotational,
                center: global_min.u,
                lo: global_min.u,
                hi: global_min.u + period,
                effective_energy: e_eff,
            });
        }
        // Periodic images of the critical points cover the neighbouring wells.
        let mut extended: Vec<Critical> = Vec::with_capacity(3 * crit.len());
        for shift in [-period, 0.0, period] {
            extended.extend(crit.iter().map(|c| Critical { u: c.u + shift, ..*c }));
        }
        let (lo, hi) = turning_points(&effective, &extended, well.u, e_eff, tol, None)?;
        return Ok(Orbit {
            regime: Regime::Librational,
            center: well.u,
            lo,
            hi,
            effective_energy: e_eff,
        });
    }

    let mid = opts.center.unwrap_or(0.0);
    let (a, b) = (mid - opts.search_radius, mid + opts.search_radius);
    let crit = critical_points(p, sign, a, b, opts.scan_points)?;
    let minima: Vec<&Critical> = crit.iter().filter(|c| c.is_min).collect();
    if minima.is_empty() {
        return Err(Error::NoOrbit {
            energy: w.energy,
            reason: "effective potential has no local minimum in the search window",
        });
    }
    let well = select_minimum(&minima, opts.center, None);
    if e_eff < well.value - tol {
        return Err(Error::NoOrbit {
            energy: w.energy,
            reason: "energy below the well minimum",
        });
    }
    if (e_eff - well.value).abs() <= tol {
        return Err(Error::NoPeriodicOrbit {
            energy: w.energy,
            critical: sign * well.value,
            kind: "equilibrium",
        });
    }
    let (lo, hi) = turning_points(&effective, &crit, well.u, e_eff, tol, Some((a, b)))
        .map_err(|e| match e {
            Error::NoOrbit { .. } => Error::NoOrbit {
                energy: w.energy,
                reason: "orbit is unbounded within the search window",
            },
            other => other,
        })?;
    Ok(Orbit {
        regime: Regime::Librational,
        center: well.u,
        lo,
        hi,
        effective_energy: e_eff,
    })
}

fn select_minimum<'a>(minima: &[&'a Critical], center: Option<f64>, period: Option<f64>) -> &'a Critical {
    match center {
        Some(c0) => {
            let dist = |u: f64| {
                let d = u - c0;
                match period {
                    Some(p) => (d - p * (d / p).round()).abs(),
                    None => d.abs(),
                }
            };
            minima
                .iter()
                .min_by(|a, b| dist(a.u).total_cmp(&dist(b.u)))
                .copied()
                .expect("nonempty")
        }
        None => minima
            .iter()
            .min_by(|a, b| {
                // lowest well; among (numerically) equal depths the one nearest 0
                if (a.value - b.value).abs() <= 1e-12 * (1.0 + a.value.abs()) {
                    a.u.abs().total_cmp(&b.u.abs())
                } else {
                    a.value.total_cmp(&b.value)
                }
            })
            .copied()
            .expect("nonempty"),
    }
}

fn turning_points<U: Fn(f64) -> f64>(
    effective: &U,
    crit: &[Critical],
    center: f64,
    e_eff: f64,
    tol: f64,
    window: Option<(f64, f64)>,
) -> Result<(f64, f64)> {
    let g = |u: f64| effective(u) - e_eff;
    let mut sorted: Vec<Critical> = crit.to_vec();
    sorted.sort_by(|a, b| a.u.total_cmp(&b.u));

    let side = |right: bool| -> Result<f64> {
        let mut prev = center;
        let iter: Vec<&Critical> = if right {
            sorted.iter().filter(|c| c.u > center + 1e-12).collect()
        } else {
            sorted.iter().rev().filter(|c| c.u < center - 1e-12).collect()
        };
        for c in iter {
            if !c.is_min {
                if (c.value - e_eff).abs() <= tol {
                    return Err(Error::NoPeriodicOrbit {
                        energy: e_eff,
                        critical: c.value,
                        kind: "separatrix",
                    });
                }
                if c.value > e_eff {
                    let (lo, hi) = if right { (prev, c.u) } else { (c.u, prev) };
                    return roots::bisect(g, lo, hi, 1e-15 * lo.abs().max(hi.abs()).max(1.0));
                }
            }
            prev = c.u;
        }
        if let Some((a, b)) = window {
            let edge = if right { b } else { a };
            if g(edge) > 0.0 {
                let (lo, hi) = if right { (prev, edge) } else { (edge, prev) };
                return roots::bisect(g, lo, hi, 1e-15 * lo.abs().max(hi.abs()).max(1.0));
            }
            return Err(Error::NoOrbit {
                energy: e_eff,
                reason: "orbit is unbounded",
            });
        }
        Err(Error::TurningPointBracket { near: prev })
    };
    let hi = side(true)?;
    let lo = side(false)?;
    Ok((lo, hi))
}

pub fn classify_regime(p: &dyn Potential, w: WaveParameters) -> Result<Regime> {
    Ok(find_orbit(p, w, OrbitOptions::default())?.regime)
}

/// Fundamental period of `f'` with the default orbit choice and quadrature
/// tolerance.
pub fn compute_period(p: &dyn Potential, w: WaveParameters) -> Result<f64> {
    let orbit = find_orbit(p, w, OrbitOptions::default())?;
    orbit_period(p, w, &orbit, QuadOptions::default())
}

/// Period of a located orbit. Librational orbits use `u = mid + half sin(theta)`
/// so the inverse square-root singularities at the turning points cancel
/// against `cos(theta)`.
pub fn orbit_period(p: &dyn Potential, w: WaveParameters, orbit: &Orbit, opts: QuadOptions) -> Result<f64> {
    let sign = w.sign();
    let mass = w.c2m1().abs();
    let e_eff = orbit.effective_energy;
    let speed2 = |u: f64| 2.0 * (e_eff - sign * p.values(u).v) / mass;
    match orbit.regime {
        Regime::Rotational => {
            let r = quad::integrate(|u| 1.0 / speed2(u).sqrt(), orbit.lo, orbit.hi, opts)?;
            Ok(r.value)
        }
        Regime::Librational => {
            let half = 0.5 * (orbit.hi - orbit.lo);
            let integrand = |theta: f64| {
                let (s, c) = theta.sin_cos();
                // distance to the nearer turning point, free of cancellation;
                // the computed turning points define the energy level on each side
                let v2 = if s >= 0.0 {
                    let w = (FRAC_PI_4 - 0.5 * theta).sin();
                    let d = 2.0 * half * w * w;
                    2.0 * sign * p.difference(orbit.hi, orbit.hi - d) / mass
                } else {
                    let w = (FRAC_PI_4 + 0.5 * theta).sin();
                    let d = 2.0 * half * w * w;
                    2.0 * sign * p.difference(orbit.lo, orbit.lo + d) / mass
                };
                if v2 <= 0.0 {
                    return 0.0;
                }
                half * c / v2.sqrt()
            };
            // the two halves meet with a rounding-level jump, so keep it at
            // an endpoint
            let lower = quad::integrate(integrand, -FRAC_PI_2, 0.0, opts)?;
            let upper = quad::integrate(integrand, 0.0, FRAC_PI_2, opts)?;
            Ok(2.0 * (lower.value + upper.value))
        }
    }
}

/// A sampled periodic traveling wave.
#[derive(Debug, Clone)]
pub struct WaveProfile {
    pub params: WaveParameters,
    pub regime: Regime,
    pub orbit: Orbit,
    /// Fundamental period of `f'`.
    pub period: f64,
    /// `f(T) - f(0)` imposed by the regime: 0 or one potential period.
    pub winding: f64,
    potential: Arc<dyn Potential>,
    /// `(f, f')` at `z_i = i T / N`, `i = 0..N`.
    nodes: Vec<[f64; 2]>,
    /// Integrated state at `z = T`.
    end_state: [f64; 2],
}

impl WaveProfile {
    pub fn potential(&self) -> &Arc<dyn Potential> {
        &self.potential
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn step(&self) -> f64 {
        self.period / self.nodes.len() as f64
    }

    pub fn nodes(&self) -> &[[f64; 2]] {
        &self.nodes
    }

    pub fn end_state(&self) -> [f64; 2] {
        self.end_state
    }

    /// Energy scale used for the relative drift test: the larger of `|E|`
    /// and the depth of the orbit below `E`.
    pub fn energy_scale(&self) -> f64 {
        let sign = self.params.c2m1().signum();
        let depth = (self.orbit.effective_energy - sign * self.potential.values(self.orbit.center).v).abs();
        self.params.energy.abs().max(depth).max(f64::MIN_POSITIVE)
    }

    /// Largest relative deviation of the first integral over the nodes.
    pub fn energy_drift(&self) -> f64 {
        let c2m1 = self.params.c2m1();
        let scale = self.energy_scale();
        self.nodes
            .iter()
            .map(|&[f, df]| (0.5 * c2m1 * df * df + self.potential.values(f).v - self.params.energy).abs() / scale)
            .fold(0.0, f64::max)
    }

    /// Node data `(f, f', f'')` with `f''` taken from the profile equation.
    fn node_triple(&self, i: usize) -> [f64; 3] {
        let n = self.nodes.len();
        let (k, shift) = if i >= n { (i - n, self.winding) } else { (i, 0.0) };
        let [f, df] = self.nodes[k];
        let d2f = -self.potential.values(f).dv / self.params.c2m1();
        [f + shift, df, d2f]
    }

    /// Quintic Hermite interpolation of `(f, f')` at arbitrary `z`, using the
    /// periodic (plus winding) extension.
    pub fn eval(&self, z: f64) -> (f64, f64) {
        let t_per = self.period;
        let turns = (z / t_per).floor();
        let zr = z - turns * t_per;
        let h = self.step();
        let n = self.nodes.len();
        let mut i = (zr / h) as usize;
        if i >= n {
            i = n - 1;
        }
        let t = (zr - i as f64 * h) / h;
        let a = self.node_triple(i);
        let b = self.node_triple(i + 1);
        let (f, df) = quintic_hermite(a, b, h, t);
        (f + turns * self.winding, df)
    }
}

#[inline]
fn quintic_hermite(a: [f64; 3], b: [f64; 3], h: f64, t: f64) -> (f64, f64) {
    let t2 = t * t;
    let t3 = t2 * t;
    let t4 = t3 * t;
    let t5 = t4 * t;
    let h0 = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
    let h1 = t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
    let h2 = 0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5;
    let h3 = 0.5 * t3 - t4 + 0.5 * t5;
    let h4 = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
    let h5 = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
    let f = a[0] * h0 + h * a[1] * h1 + h * h * a[2] * h2 + h * h * b[2] * h3 + h * b[1] * h4 + b[0] * h5;

    let d0 = -30.0 * t2 + 60.0 * t3 - 30.0 * t4;
    let d1 = 1.0 - 18.0 * t2 + 32.0 * t3 - 15.0 * t4;
    let d2 = t - 4.5 * t2 + 6.0 * t3 - 2.5 * t4;
    let d3 = 1.5 * t2 - 4.0 * t3 + 2.5 * t4;
    let d4 = -12.0 * t2 + 28.0 * t3 - 15.0 * t4;
    let d5 = -d0;
    let df = (a[0] * d0 + h * a[1] * d1 + h * h * a[2] * d2 + h * h * b[2] * d3 + h * b[1] * d4 + b[0] * d5) / h;
    (f, df)
}

/// Builds the profile with `n` nodes per period, starting at the point of
/// maximal `|f'|` with `f'(0) > 0`.
pub fn build_profile(p: Arc<dyn Potential>, w: WaveParameters, n: usize) -> Result<WaveProfile> {
    build_profile_with(p, w, n, OrbitOptions::default())
}

pub fn build_profile_with(p: Arc<dyn Potential>, w: WaveParameters, n: usize, opts: OrbitOptions) -> Result<WaveProfile> {
    if n < MIN_NODES {
        return Err(Error::InvalidInput("profile needs at least 256 nodes"));
    }
    let orbit = find_orbit(p.as_ref(), w, opts)?;
    let period = orbit_period(p.as_ref(), w, &orbit, QuadOptions::default())?;
    let winding = match orbit.regime {
        Regime::Librational => 0.0,
        Regime::Rotational => p.period().expect("rotational orbits need a periodic potential"),
    };
    let c2m1 = w.c2m1();
    let sign = c2m1.signum();
    let mass = c2m1.abs();
    let f0 = orbit.center;
    let df0 = (2.0 * (orbit.effective_energy - sign * p.values(f0).v) / mass).sqrt();

    let pot = p.clone();
    let mut rhs = move |_z: f64, y: &[f64; 2], dy: &mut [f64; 2]| {
        dy[0] = y[1];
        dy[1] = -pot.values(y[0]).dv / c2m1;
    };
    let h = period / n as f64;
    let mut stepper = Dop853::new(PROFILE_TOL).with_initial_step(h);
    let mut nodes = Vec::with_capacity(n);
    let mut y = [f0, df0];
    nodes.push(y);
    for i in 0..n {
        let z0 = i as f64 * h;
        let z1 = if i + 1 == n { period } else { (i + 1) as f64 * h };
        stepper.advance(&mut rhs, z0, z1, &mut y)?;
        if i + 1 < n {
            nodes.push(y);
        }
    }
    let profile = WaveProfile {
        params: w,
        regime: orbit.regime,
        orbit,
        period,
        winding,
        potential: p,
        nodes,
        end_state: y,
    };
    let drift = profile.energy_drift();
    if drift > ENERGY_TOL {
        return Err(Error::ProfileAccuracy {
            drift,
            tolerance: ENERGY_TOL,
        });
    }
    let closure_f = (y[0] - f0 - winding).abs();
    let closure_df = (y[1] - df0).abs() / (1.0 + df0.abs());
    let closure = closure_f.max(closure_df);
    if closure > ENERGY_TOL {
        return Err(Error::ProfileAccuracy {
            drift: closure,
            tolerance: ENERGY_TOL,
        });
    }
    Ok(profile)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientSource {
    Wave,
    Synthetic,
}

#[derive(Clone)]
enum Repr {
    Constant(f64),
    Function(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
    Wave {
        profile: Arc<WaveProfile>,
        inv_c2m1: f64,
    },
}

/// The periodic coefficient `P(z)` of Hill's equation `y'' + P y = nu y`.
#[derive(Clone)]
pub struct HillCoefficient {
    period: f64,
    source: CoefficientSource,
    repr: Repr,
}

impl core::fmt::Debug for HillCoefficient {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let kind = match &self.repr {
            Repr::Constant(_) => "constant",
            Repr::Function(_) => "function",
            Repr::Wave { .. } => "wave",
        };
        f.debug_struct("HillCoefficient")
            .field("period", &self.period)
            .field("source", &self.source)
            .field("kind", &kind)
            .finish()
    }
}

impl HillCoefficient {
    /// `P(z) = p0`, a synthetic test fixture with closed-form discriminant.
    pub fn constant(p0: f64, period: f64) -> Result<Self> {
        if !(period > 0.0) || !period.is_finite() || !p0.is_finite() {
            return Err(Error::InvalidInput("constant coefficient needs finite P0 and T > 0"));
        }
        Ok(HillCoefficient {
            period,
            source: CoefficientSource::Synthetic,
            repr: Repr::Constant(p0),
        })
    }

    /// Synthetic coefficient from a closure; `p` must be `period`-periodic.
    pub fn from_fn<F>(period: f64, p: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(period > 0.0) || !period.is_finite() {
            return Err(Error::InvalidInput("coefficient period must be positive"));
        }
        let start = p(0.0);
        let end = p(period);
        if !start.is_finite() || (start - end).abs() > 1e-8 * (1.0 + start.abs()) {
            return Err(Error::InvalidInput("coefficient is not continuous across the period"));
        }
        Ok(HillCoefficient {
            period,
            source: CoefficientSource::Synthetic,
            repr: Repr::Function(Arc::new(p)),
        })
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn source(&self) -> CoefficientSource {
        self.source
    }

    /// The wave behind this coefficient, if it came from one.
    pub fn profile(&self) -> Option<&WaveProfile> {
        match &self.repr {
            Repr::Wave { profile, .. } => Some(profile),
            _ => None,
        }
    }

    pub fn as_constant(&self) -> Option<f64> {
        match self.repr {
            Repr::Constant(p0) => Some(p0),
            _ => None,
        }
    }

    #[inline]
    pub fn eval(&self, z: f64) -> f64 {
        match &self.repr {
            Repr::Constant(p0) => *p0,
            Repr::Function(f) => {
                let zr = z - self.period * (z / self.period).floor();
                f(zr)
            }
            Repr::Wave { profile, inv_c2m1 } => {
                let (f, _) = profile.eval(z);
                profile.potential.values(f).d2v * inv_c2m1
            }
        }
    }

    /// `(min P, max P)` over `samples` equally spaced points.
    pub fn range(&self, samples: usize) -> (f64, f64) {
        let n = samples.max(2);
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let v = self.eval(self.period * i as f64 / n as f64);
            lo = lo.min(v);
            hi = hi.max(v);
        }
        (lo, hi)
    }
}

/// `P(z) = V''(f(z)) / (c^2 - 1)` for a built profile.
pub fn hill_coefficient(profile: &WaveProfile) -> HillCoefficient {
    HillCoefficient {
        period: profile.period,
        source: CoefficientSource::Wave,
        repr: Repr::Wave {
            inv_c2m1: 1.0 / profile.params.c2m1(),
            profile: Arc::new(profile.clone()),
        },
    }
}
