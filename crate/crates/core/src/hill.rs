//! Hill's equation `y'' + P(z) y = nu y`: monodromy, discriminant and the
//! band structure of its spectrum.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::ode::{Dop853, Scalar, Tolerances};
use crate::roots;
use crate::sweep::{Sequential, Sweep};
use crate::waveform::HillCoefficient;

/// Integrator tolerances for every monodromy evaluation.
pub const HILL_TOL: Tolerances = Tolerances::new(1e-12, 1e-14);

/// `|Delta^2 - 4|` at a critical point of the discriminant below which the
/// gap is treated as closed.
pub const DOUBLE_POINT_TOL: f64 = 1e-14;

/// Monodromy matrix `M = [[y1, y2], [y1', y2']](T)` of the canonical
/// solutions together with its first two `nu`-derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonodromyResult<S = f64> {
    pub nu: S,
    pub m: [[S; 2]; 2],
    pub dm: [[S; 2]; 2],
    pub d2m: [[S; 2]; 2],
    pub delta: S,
    pub delta_nu: S,
    pub delta_nunu: S,
}

impl<S: Scalar> MonodromyResult<S> {
    pub fn det(&self) -> S {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    /// `Delta^2 - 4` written as `(M11 - M22)^2 + 4 M12 M21`, which uses
    /// `det M = 1` and stays accurate where `Delta` is close to `+-2`.
    pub fn gap(&self) -> S {
        let d = self.m[0][0] - self.m[1][1];
        d * d + self.m[0][1] * self.m[1][0] * 4.0
    }
}

fn hill_rhs<'a, S: Scalar + 'a>(coef: &'a HillCoefficient, nu: S) -> impl FnMut(f64, &[S; 12], &mut [S; 12]) + 'a {
    move |z, y, dy| {
        let k = nu - S::from_real(coef.eval(z));
        for c in [0usize, 6] {
            dy[c] = y[c + 1];
            dy[c + 1] = k * y[c];
            dy[c + 2] = y[c + 3];
            dy[c + 3] = k * y[c + 2] + y[c];
            dy[c + 4] = y[c + 5];
            dy[c + 5] = k * y[c + 4] + y[c + 2] * 2.0;
        }
    }
}

/// Integrates both canonical solutions and their first two variational
/// derivatives in `nu` over one period.
pub fn monodromy<S: Scalar>(coef: &HillCoefficient, nu: S) -> Result<MonodromyResult<S>> {
    monodromy_with(coef, nu, HILL_TOL)
}

pub fn monodromy_with<S: Scalar>(coef: &HillCoefficient, nu: S, tol: Tolerances) -> Result<MonodromyResult<S>> {
    let t = coef.period();
    let one = S::from_real(1.0);
    let mut y = [S::default(); 12];
    y[0] = one;
    y[7] = one;
    let mut rhs = hill_rhs(coef, nu);
    let mut stepper = Dop853::new(tol);
    stepper.advance(&mut rhs, 0.0, t, &mut y)?;
    let m = [[y[0], y[6]], [y[1], y[7]]];
    let dm = [[y[2], y[8]], [y[3], y[9]]];
    let d2m = [[y[4], y[10]], [y[5], y[11]]];
    Ok(MonodromyResult {
        nu,
        m,
        dm,
        d2m,
        delta: m[0][0] + m[1][1],
        delta_nu: dm[0][0] + dm[1][1],
        delta_nunu: d2m[0][0] + d2m[1][1],
    })
}

/// `(Delta, Delta_nu, Delta_nunu)` at real `nu`.
pub fn discriminant(coef: &HillCoefficient, nu: f64) -> Result<(f64, f64, f64)> {
    let r = monodromy(coef, nu)?;
    Ok((r.delta, r.delta_nu, r.delta_nunu))
}

/// `Delta` alone, without variational states. Used by the 2-D spectrum sweep.
pub fn trace<S: Scalar>(coef: &HillCoefficient, nu: S) -> Result<S> {
    let one = S::from_real(1.0);
    let mut y = [one, S::default(), S::default(), one];
    let mut rhs = |z: f64, y: &[S; 4], dy: &mut [S; 4]| {
        let k = nu - S::from_real(coef.eval(z));
        dy[0] = y[1];
        dy[1] = k * y[0];
        dy[2] = y[3];
        dy[3] = k * y[2];
    };
    let mut stepper = Dop853::new(HILL_TOL);
    stepper.advance(&mut rhs, 0.0, coef.period(), &mut y)?;
    Ok(y[0] + y[3])
}

/// `Delta` at complex `nu`.
pub fn trace_complex(coef: &HillCoefficient, nu: Complex64) -> Result<Complex64> {
    trace(coef, nu)
}

/// Closed-form discriminant of a constant coefficient `P = p0`.
pub mod constant {
    #[allow(unused_imports)]
    use num_traits::Float;

    /// `(Delta, Delta_nu, Delta_nunu)` for `y'' + p0 y = nu y` over period `t`.
    pub fn discriminant(p0: f64, t: f64, nu: f64) -> (f64, f64, f64) {
        let x = (nu - p0) * t * t;
        if x.abs() < 1.0 {
            // Delta = 2 sum x^k / (2k)!, differentiated termwise
            let mut d = 0.0;
            let mut d1 = 0.0;
            let mut d2 = 0.0;
            let mut fact = 1.0;
            let mut xk = 1.0;
            for k in 0..30u32 {
                if k > 0 {
                    fact *= (2 * k - 1) as f64 * (2 * k) as f64;
                }
                let kf = k as f64;
                d += xk / fact;
                if k >= 1 {
                    d1 += kf * x.powi(k as i32 - 1) / fact;
                }
                if k >= 2 {
                    d2 += kf * (kf - 1.0) * x.powi(k as i32 - 2) / fact;
                }
                xk *= x;
            }
            let t2 = t * t;
            return (2.0 * d, 2.0 * t2 * d1, 2.0 * t2 * t2 * d2);
        }
        if nu < p0 {
            let s = (p0 - nu).sqrt();
            let (sn, cs) = (s * t).sin_cos();
            (
                2.0 * cs,
                t * sn / s,
                -t * t * cs / (2.0 * s * s) + t * sn / (2.0 * s * s * s),
            )
        } else {
            let r = (nu - p0).sqrt();
            let (sh, ch) = ((r * t).sinh(), (r * t).cosh());
            (
                2.0 * ch,
                t * sh / r,
                t * t * ch / (2.0 * r * r) - t * sh / (2.0 * r * r * r),
            )
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    /// `Delta = +2`
    Periodic,
    /// `Delta = -2`
    Antiperiodic,
}

impl EdgeKind {
    pub fn level(self) -> f64 {
        match self {
            EdgeKind::Periodic => 2.0,
            EdgeKind::Antiperiodic => -2.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Multiplicity {
    Simple,
    Double,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandEdge {
    pub nu: f64,
    pub kind: EdgeKind,
    pub multiplicity: Multiplicity,
    pub delta: f64,
    pub delta_nu: f64,
    pub delta_nunu: f64,
}

/// Closed interval of the spectrum. `lo_edge` is `None` when the band is cut
/// by the lower edge of the scan window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Band {
    pub lo: f64,
    pub hi: f64,
    pub lo_edge: Option<BandEdge>,
    pub hi_edge: BandEdge,
}

impl Band {
    pub fn contains(&self, nu: f64) -> bool {
        nu >= self.lo && nu <= self.hi
    }
}

/// Open gap between two simple edges; `lo_edge` is `None` when the gap
/// extends below the scan window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gap {
    pub lo: f64,
    pub hi: f64,
    pub lo_edge: Option<BandEdge>,
    pub hi_edge: BandEdge,
}

impl Gap {
    pub fn kind(&self) -> EdgeKind {
        self.hi_edge.kind
    }

    pub fn contains(&self, nu: f64) -> bool {
        nu > self.lo && nu < self.hi
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BandStructure {
    /// Ascending; a band touching a double point on either side ends there.
    pub bands: Vec<Band>,
    /// Open gaps, ascending.
    pub gaps: Vec<Gap>,
    /// Closed gaps.
    pub double_points: Vec<BandEdge>,
    /// Top of the spectrum.
    pub nu_max: f64,
    pub nu_min_scanned: f64,
    /// Number of discriminant evaluations used by the scan.
    pub evaluations: usize,
}

impl BandStructure {
    pub fn band_index(&self, nu: f64) -> Option<usize> {
        self.bands.iter().position(|b| b.contains(nu))
    }

    pub fn band_index_tol(&self, nu: f64, tol: f64) -> Option<usize> {
        self.band_index(nu)
            .or_else(|| self.bands.iter().position(|b| nu >= b.lo - tol && nu <= b.hi + tol))
    }

    pub fn gap_index(&self, nu: f64) -> Option<usize> {
        self.gaps.iter().position(|g| g.contains(nu))
    }

    /// Simple edges in ascending order.
    pub fn simple_edges(&self) -> Vec<BandEdge> {
        let mut out = Vec::new();
        for g in &self.gaps {
            if let Some(e) = g.lo_edge {
                out.push(e);
            }
            out.push(g.hi_edge);
        }
        out.push(
            self.bands
                .last()
                .map(|b| b.hi_edge)
                .expect("band structure has at least one band"),
        );
        out.sort_by(|a, b| a.nu.total_cmp(&b.nu));
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandOptions {
    /// Grid points per `pi / T` in `sqrt(nu_top - nu)`.
    pub points_per_half_wave: usize,
    /// Maximum bisection depth when a scan cell looks under-resolved.
    pub max_subdivisions: u32,
}

impl Default for BandOptions {
    fn default() -> Self {
        BandOptions {
            points_per_half_wave: 16,
            max_subdivisions: 12,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Node {
    nu: f64,
    delta: f64,
    delta_nu: f64,
    delta_nunu: f64,
    gap: f64,
}

impl Node {
    fn at(coef: &HillCoefficient, nu: f64) -> Result<Node> {
        let r = monodromy(coef, nu)?;
        Ok(Node {
            nu,
            delta: r.delta,
            delta_nu: r.delta_nu,
            delta_nunu: r.delta_nunu,
            gap: r.gap(),
        })
    }
}

#[inline]
fn positive(x: f64) -> bool {
    x >= 0.0
}

/// Sorted band structure between `nu_min` and the top of the spectrum.
pub fn band_structure(coef: &HillCoefficient, nu_min: f64) -> Result<BandStructure> {
    band_structure_with(coef, nu_min, BandOptions::default(), &Sequential)
}

pub fn band_structure_with<W: Sweep>(
    coef: &HillCoefficient,
    nu_min: f64,
    opts: BandOptions,
    sweep: &W,
) -> Result<BandStructure> {
    if !nu_min.is_finite() {
        return Err(Error::InvalidInput("nu_min must be finite"));
    }
    let t = coef.period();
    let (_, p_max) = coef.range(4096);
    // the spectrum lies below max P
    let nu_top = p_max + 0.1 * (1.0 + p_max.abs());
    if nu_min >= nu_top {
        return Err(Error::InvalidInput("nu_min lies above the spectrum"));
    }
    let s_max = (nu_top - nu_min).sqrt();
    let ds = core::f64::consts::PI / t / opts.points_per_half_wave.max(2) as f64;
    let cells = ((s_max / ds).ceil() as usize).max(4);
    let grid: Vec<Result<Node>> = sweep.map(cells + 1, |i| {
        let s = s_max * (cells - i) as f64 / cells as f64;
        let nu = if i == cells { nu_top } else { nu_top - s * s };
        Node::at(coef, nu)
    });
    let grid: Vec<Node> = grid.into_iter().collect::<Result<_>>()?;
    if grid[cells].delta <= 2.0 {
        return Err(Error::InconsistentWithTheory("discriminant does not exceed 2 above max P"));
    }

    let mut scan = Scanner {
        coef,
        opts,
        crit: Vec::new(),
        edges: Vec::new(),
        evaluations: grid.len(),
    };
    for w in grid.windows(2) {
        scan.cell(w[0], w[1], 0)?;
    }

    let Scanner {
        mut crit,
        mut edges,
        evaluations,
        ..
    } = scan;
    crit.sort_by(|a, b| a.nu.total_cmp(&b.nu));
    crit.dedup_by(|a, b| (a.nu - b.nu).abs() <= 1e-10 * (1.0 + a.nu.abs()));
    edges.sort_by(|a, b| a.nu.total_cmp(&b.nu));
    edges.dedup_by(|a, b| a.kind == b.kind && (a.nu - b.nu).abs() <= 1e-12 * (1.0 + a.nu.abs()));

    let double_points: Vec<BandEdge> = crit
        .iter()
        .filter(|c| c.gap.abs() <= DOUBLE_POINT_TOL)
        .map(|c| BandEdge {
            nu: c.nu,
            kind: if c.delta > 0.0 { EdgeKind::Periodic } else { EdgeKind::Antiperiodic },
            multiplicity: Multiplicity::Double,
            delta: c.delta,
            delta_nu: c.delta_nu,
            delta_nunu: c.delta_nunu,
        })
        .collect();

    assemble(grid[0], edges, double_points, nu_min, evaluations)
}

fn assemble(
    first: Node,
    edges: Vec<BandEdge>,
    double_points: Vec<BandEdge>,
    nu_min: f64,
    evaluations: usize,
) -> Result<BandStructure> {
    let mut bands = Vec::new();
    let mut gaps = Vec::new();
    let mut inside = first.delta.abs() <= 2.0;
    let mut open_band: Option<(f64, Option<BandEdge>)> = if inside { Some((nu_min, None)) } else { None };
    let mut open_gap: Option<(f64, Option<BandEdge>)> = if inside { None } else { Some((nu_min, None)) };

    for e in &edges {
        if inside {
            let (lo, lo_edge) = open_band.take().expect("band open");
            // split the band at enclosed double points
            let mut lo = lo;
            let mut lo_edge = lo_edge;
            let enclosed: Vec<BandEdge> = double_points.iter().filter(|d| d.nu > lo && d.nu < e.nu).copied().collect();
            for d in enclosed {
                bands.push(Band {
                    lo,
                    hi: d.nu,
                    lo_edge,
                    hi_edge: d,
                });
                lo = d.nu;
                lo_edge = Some(d);
            }
            bands.push(Band {
                lo,
                hi: e.nu,
                lo_edge,
                hi_edge: *e,
            });
            open_gap = Some((e.nu, Some(*e)));
        } else {
            let (lo, lo_edge) = open_gap.take().expect("gap open");
            if let Some(prev) = lo_edge {
                if prev.kind != e.kind {
                    return Err(Error::ScanResolution { nu: e.nu });
                }
            }
            gaps.push(Gap {
                lo,
                hi: e.nu,
                lo_edge,
                hi_edge: *e,
            });
            open_band = Some((e.nu, Some(*e)));
        }
        inside = !inside;
    }
    if inside || bands.is_empty() {
        return Err(Error::ScanResolution { nu: first.nu });
    }
    let nu_max = bands.last().expect("nonempty").hi;
    Ok(BandStructure {
        bands,
        gaps,
        double_points,
        nu_max,
        nu_min_scanned: nu_min,
        evaluations,
    })
}

struct Scanner<'a> {
    coef: &'a HillCoefficient,
    opts: BandOptions,
    crit: Vec<Node>,
    edges: Vec<BandEdge>,
    evaluations: usize,
}

impl Scanner<'_> {
    fn eval(&mut self, nu: f64) -> Result<Node> {
        self.evaluations += 1;
        Node::at(self.coef, nu)
    }

    fn cell(&mut self, a: Node, b: Node, depth: u32) -> Result<()> {
        let changes = hermite_sign_changes(a, b);
        let endpoint_change = positive(a.delta_nu) != positive(b.delta_nu);
        let consistent = (changes == 1 && endpoint_change) || (changes == 0 && !endpoint_change);
        if !consistent {
            if depth >= self.opts.max_subdivisions {
                return Err(Error::ScanResolution { nu: 0.5 * (a.nu + b.nu) });
            }
            let m = self.eval(0.5 * (a.nu + b.nu))?;
            self.cell(a, m, depth + 1)?;
            return self.cell(m, b, depth + 1);
        }
        if endpoint_change {
            let coef = self.coef;
            let mut evals = 0usize;
            let nu_c = roots::newton_bisect(
                |nu| {
                    evals += 1;
                    let (_, d1, d2) = discriminant(coef, nu)?;
                    Ok((d1, d2))
                },
                a.nu,
                b.nu,
                1e-13 * (1.0 + a.nu.abs()),
            )?;
            self.evaluations += evals;
            let mut c = self.eval(nu_c)?;
            if c.gap < -DOUBLE_POINT_TOL {
                return Err(Error::InconsistentWithTheory(
                    "critical point of the discriminant inside a band",
                ));
            }
            self.crit.push(c);
            if c.gap.abs() <= DOUBLE_POINT_TOL {
                // a closed gap: keep the node on the band side of the level
                c.delta = c.delta.signum() * 2.0 * (1.0 - 1e-15);
            }
            self.monotone(a, c)?;
            self.monotone(c, b)
        } else {
            self.monotone(a, b)
        }
    }

    fn monotone(&mut self, a: Node, b: Node) -> Result<()> {
        for kind in [EdgeKind::Periodic, EdgeKind::Antiperiodic] {
            let level = kind.level();
            if positive(a.delta - level) == positive(b.delta - level) {
                continue;
            }
            let coef = self.coef;
            let mut evals = 0usize;
            let nu = roots::newton_bisect(
                |nu| {
                    evals += 1;
                    let (d, d1, _) = discriminant(coef, nu)?;
                    Ok((d - level, d1))
                },
                a.nu,
                b.nu,
                1e-13 * (1.0 + a.nu.abs()),
            )?;
            self.evaluations += evals;
            let n = self.eval(nu)?;
            self.edges.push(BandEdge {
                nu,
                kind,
                multiplicity: Multiplicity::Simple,
                delta: n.delta,
                delta_nu: n.delta_nu,
                delta_nunu: n.delta_nunu,
            });
        }
        Ok(())
    }
}

/// Sign changes of the cubic Hermite interpolant of `Delta_nu` across a cell.
fn hermite_sign_changes(a: Node, b: Node) -> usize {
    let h = b.nu - a.nu;
    let (p0, p1) = (a.delta_nu, b.delta_nu);
    let (m0, m1) = (a.delta_nunu * h, b.delta_nunu * h);
    let mut prev = positive(p0);
    let mut changes = 0;
    for k in 1..=32 {
        let t = k as f64 / 32.0;
        let t2 = t * t;
        let t3 = t2 * t;
        let v = (2.0 * t3 - 3.0 * t2 + 1.0) * p0
            + (t3 - 2.0 * t2 + t) * m0
            + (-2.0 * t3 + 3.0 * t2) * p1
            + (t3 - t2) * m1;
        let v = if k == 32 { p1 } else { v };
        let cur = positive(v);
        if cur != prev {
            changes += 1;
        }
        prev = cur;
    }
    changes
}
