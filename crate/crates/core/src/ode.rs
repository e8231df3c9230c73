//! Dormand-Prince 8(5,3) integrator over fixed-size states.
//!
//! The state is `[S; N]` where `S` is `f64` or `Complex64`; Hill's equation
//! at complex spectral parameter runs through the same code as the real case.

use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};

/// Field element of an ODE state.
pub trait Scalar:
    Copy
    + Default
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Mul<f64, Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_real(x: f64) -> Self;
    fn modulus(self) -> f64;
    fn is_finite(self) -> bool;
}

impl Scalar for f64 {
    #[inline]
    fn from_real(x: f64) -> Self {
        x
    }
    #[inline]
    fn modulus(self) -> f64 {
        self.abs()
    }
    #[inline]
    fn is_finite(self) -> bool {
        Float::is_finite(self)
    }
}

impl Scalar for Complex64 {
    #[inline]
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    #[inline]
    fn modulus(self) -> f64 {
        self.norm()
    }
    #[inline]
    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Tolerances {
    pub const fn new(rtol: f64, atol: f64) -> Self {
        Tolerances {
            rtol,
            atol,
            max_steps: 200_000,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    pub accepted: usize,
    pub rejected: usize,
    pub evals: usize,
}

/// Adaptive DOP853 stepper. Keeps its last accepted step size so that a
/// sequence of `advance` calls over adjacent intervals does not restart the
/// step-size search.
#[derive(Debug, Clone)]
pub struct Dop853 {
    tol: Tolerances,
    h: Option<f64>,
    facold: f64,
    pub stats: Stats,
}

const SAFE: f64 = 0.9;
const FAC1: f64 = 0.333;
const FAC2: f64 = 6.0;
const BETA: f64 = 0.0;
const EXPO1: f64 = 1.0 / 8.0 - BETA * 0.2;

impl Dop853 {
    pub fn new(tol: Tolerances) -> Self {
        Dop853 {
            tol,
            h: None,
            facold: 1.0e-4,
            stats: Stats::default(),
        }
    }

    pub fn with_initial_step(mut self, h: f64) -> Self {
        self.h = Some(h.abs());
        self
    }

    /// Integrates `y' = rhs(t, y)` from `t0` to `t1` (with `t1 > t0`), landing
    /// exactly on `t1`.
    pub fn advance<S, const N: usize, F>(
        &mut self,
        rhs: &mut F,
        t0: f64,
        t1: f64,
        y: &mut [S; N],
    ) -> Result<()>
    where
        S: Scalar,
        F: FnMut(f64, &[S; N], &mut [S; N]),
    {
        if !(t1 > t0) {
            if t1 == t0 {
                return Ok(());
            }
            return Err(Error::InvalidInput("integration interval must be increasing"));
        }
        let span = t1 - t0;
        let mut t = t0;
        let mut k1 = [S::default(); N];
        rhs(t, y, &mut k1);
        self.stats.evals += 1;

        let mut h = match self.h {
            Some(h) if h > 0.0 => h.min(span),
            _ => self.initial_step(rhs, t, y, &k1, span),
        };
        let mut last_rejected = false;
        let mut steps = 0usize;

        let mut k = [[S::default(); N]; 12];
        let mut ytmp = [S::default(); N];

        loop {
            if steps >= self.tol.max_steps {
                return Err(Error::Integrator {
                    t,
                    reason: "maximum number of steps exceeded",
                });
            }
            steps += 1;
            let remaining = t1 - t;
            let mut finishing = false;
            let h_free = h;
            if h >= remaining * (1.0 - 1e-12) {
                h = remaining;
                finishing = true;
            }
            if h <= f64::EPSILON * t.abs().max(1.0) {
                return Err(Error::Integrator {
                    t,
                    reason: "step size underflow",
                });
            }

            k[0] = k1;
            for stage in 1..12 {
                for i in 0..N {
                    let mut acc = S::default();
                    for (j, &a) in A[stage].iter().enumerate().take(stage) {
                        if a != 0.0 {
                            acc = acc + k[j][i] * a;
                        }
                    }
                    ytmp[i] = y[i] + acc * h;
                }
                let tc = if stage == 11 { t + h } else { t + C[stage] * h };
                let (_, after) = k.split_at_mut(stage);
                rhs(tc, &ytmp, &mut after[0]);
            }
            let mut incr = [S::default(); N];
            let mut ynew = [S::default(); N];
            for i in 0..N {
                let mut acc = S::default();
                for (j, &b) in B.iter().enumerate() {
                    if b != 0.0 {
                        acc = acc + k[j][i] * b;
                    }
                }
                incr[i] = acc;
                ynew[i] = y[i] + acc * h;
            }
            self.stats.evals += 11;

            let mut err = 0.0;
            let mut err2 = 0.0;
            let mut finite = true;
            for i in 0..N {
                if !ynew[i].is_finite() {
                    finite = false;
                    break;
                }
                let sk = self.tol.atol + self.tol.rtol * y[i].modulus().max(ynew[i].modulus());
                let mut e5 = S::default();
                for (j, &e) in ER.iter().enumerate() {
                    if e != 0.0 {
                        e5 = e5 + k[j][i] * e;
                    }
                }
                let e3 = incr[i] - k[0][i] * BHH[0] - k[8][i] * BHH[1] - k[11][i] * BHH[2];
                err += (e5.modulus() / sk).powi(2);
                err2 += (e3.modulus() / sk).powi(2);
            }
            if !finite {
                return Err(Error::Integrator {
                    t,
                    reason: "non-finite state",
                });
            }
            let mut deno = err + 0.01 * err2;
            if deno <= 0.0 {
                deno = 1.0;
            }
            let err = h * err * (1.0 / (N as f64 * deno)).sqrt();

            let fac11 = err.powf(EXPO1);
            let fac = (fac11 / self.facold.powf(BETA) / SAFE).clamp(1.0 / FAC2, 1.0 / FAC1);
            if err <= 1.0 {
                self.facold = err.max(1.0e-4);
                self.stats.accepted += 1;
                t = if finishing { t1 } else { t + h };
                *y = ynew;
                rhs(t, y, &mut k1);
                self.stats.evals += 1;
                let mut hnew = h / fac;
                if last_rejected {
                    hnew = hnew.min(h);
                }
                last_rejected = false;
                if finishing {
                    // a clipped final step says nothing about the natural step size
                    self.h = Some(if h < h_free { h_free } else { hnew });
                    return Ok(());
                }
                h = hnew;
            } else {
                self.stats.rejected += 1;
                last_rejected = true;
                h /= (fac11 / SAFE).min(1.0 / FAC1);
            }
        }
    }

    fn initial_step<S, const N: usize, F>(
        &mut self,
        rhs: &mut F,
        t: f64,
        y: &[S; N],
        f0: &[S; N],
        span: f64,
    ) -> f64
    where
        S: Scalar,
        F: FnMut(f64, &[S; N], &mut [S; N]),
    {
        let mut dnf = 0.0;
        let mut dny = 0.0;
        for i in 0..N {
            let sk = self.tol.atol + self.tol.rtol * y[i].modulus();
            dnf += (f0[i].modulus() / sk).powi(2);
            dny += (y[i].modulus() / sk).powi(2);
        }
        let mut h = if dnf <= 1e-10 || dny <= 1e-10 {
            1.0e-6
        } else {
            (dny / dnf).sqrt() * 0.01
        };
        h = h.min(span);
        let mut y1 = [S::default(); N];
        for i in 0..N {
            y1[i] = y[i] + f0[i] * h;
        }
        let mut f1 = [S::default(); N];
        rhs(t + h, &y1, &mut f1);
        self.stats.evals += 1;
        let mut der2 = 0.0;
        for i in 0..N {
            let sk = self.tol.atol + self.tol.rtol * y[i].modulus();
            der2 += ((f1[i] - f0[i]).modulus() / sk).powi(2);
        }
        let der2 = der2.sqrt() / h;
        let der12 = der2.abs().max(dnf.sqrt());
        let h1 = if der12 <= 1.0e-15 {
            (h * 1.0e-3).max(1.0e-6)
        } else {
            (0.01 / der12).powf(1.0 / 8.0)
        };
        (100.0 * h).min(h1).min(span)
    }
}

/// Convenience wrapper: fresh stepper, one interval.
pub fn integrate<S, const N: usize, F>(
    mut rhs: F,
    t0: f64,
    t1: f64,
    y0: [S; N],
    tol: Tolerances,
) -> Result<[S; N]>
where
    S: Scalar,
    F: FnMut(f64, &[S; N], &mut [S; N]),
{
    let mut y = y0;
    let mut stepper = Dop853::new(tol);
    stepper.advance(&mut rhs, t0, t1, &mut y)?;
    Ok(y)
}

// Butcher tableau (Hairer & Wanner, DOP853). Row `s` holds the coefficients
// a[s][j] for stage s = 1..=11; stage 11 is evaluated at t + h.
#[allow(clippy::excessive_precision)]
const C: [f64; 12] = [
    0.0,
    0.526001519587677318785587544488E-01,
    0.789002279381515978178381316732E-01,
    0.118350341907227396726757197510E+00,
    0.281649658092772603273242802490E+00,
    0.333333333333333333333333333333E+00,
    0.25E+00,
    0.307692307692307692307692307692E+00,
    0.651282051282051282051282051282E+00,
    0.6E+00,
    0.857142857142857142857142857142E+00,
    1.0,
];

#[allow(clippy::excessive_precision)]
const A: [[f64; 11]; 12] = [
    [0.0; 11],
    [5.26001519587677318785587544488E-2, 0., 0., 0., 0., 0., 0., 0., 0., 0., 0.],
    [
        1.97250569845378994544595329183E-2,
        5.91751709536136983633785987549E-2,
        0., 0., 0., 0., 0., 0., 0., 0., 0.,
    ],
    [
        2.95875854768068491816892993775E-2,
        0.,
        8.87627564304205475450678981324E-2,
        0., 0., 0., 0., 0., 0., 0., 0.,
    ],
    [
        2.41365134159266685502369798665E-1,
        0.,
        -8.84549479328286085344864962717E-1,
        9.24834003261792003115737966543E-1,
        0., 0., 0., 0., 0., 0., 0.,
    ],
    [
        3.7037037037037037037037037037E-2,
        0.,
        0.,
        1.70828608729473871279604482173E-1,
        1.25467687566822425016691814123E-1,
        0., 0., 0., 0., 0., 0.,
    ],
    [
        3.7109375E-2,
        0.,
        0.,
        1.70252211019544039314978060272E-1,
        6.02165389804559606850219397283E-2,
        -1.7578125E-2,
        0., 0., 0., 0., 0.,
    ],
    [
        3.70920001185047927108779319836E-2,
        0.,
        0.,
        1.70383925712239993810214054705E-1,
        1.07262030446373284651809199168E-1,
        -1.53194377486244017527936158236E-2,
        8.27378916381402288758473766002E-3,
        0., 0., 0., 0.,
    ],
    [
        6.24110958716075717114429577812E-1,
        0.,
        0.,
        -3.36089262944694129406857109825E0,
        -8.68219346841726006818189891453E-1,
        2.75920996994467083049415600797E1,
        2.01540675504778934086186788979E1,
        -4.34898841810699588477366255144E1,
        0., 0., 0.,
    ],
    [
        4.77662536438264365890433908527E-1,
        0.,
        0.,
        -2.48811461997166764192642586468E0,
        -5.90290826836842996371446475743E-1,
        2.12300514481811942347288949897E1,
        1.52792336328824235832596922938E1,
        -3.32882109689848629194453265587E1,
        -2.03312017085086261358222928593E-2,
        0., 0.,
    ],
    [
        -9.3714243008598732571704021658E-1,
        0.,
        0.,
        5.18637242884406370830023853209E0,
        1.09143734899672957818500254654E0,
        -8.14978701074692612513997267357E0,
        -1.85200656599969598641566180701E1,
        2.27394870993505042818970056734E1,
        2.49360555267965238987089396762E0,
        -3.0467644718982195003823669022E0,
        0.,
    ],
    [
        2.27331014751653820792359768449E0,
        0.,
        0.,
        -1.05344954667372501984066689879E1,
        -2.00087205822486249909675718444E0,
        -1.79589318631187989172765950534E1,
        2.79488845294199600508499808837E1,
        -2.85899827713502369474065508674E0,
        -8.87285693353062954433549289258E0,
        1.23605671757943030647266201528E1,
        6.43392746015763530355970484046E-1,
    ],
];

#[allow(clippy::excessive_precision)]
const B: [f64; 12] = [
    5.42937341165687622380535766363E-2,
    0.,
    0.,
    0.,
    0.,
    4.45031289275240888144113950566E0,
    1.89151789931450038304281599044E0,
    -5.8012039600105847814672114227E0,
    3.1116436695781989440891606237E-1,
    -1.52160949662516078556178806805E-1,
    2.01365400804030348374776537501E-1,
    4.47106157277725905176885569043E-2,
];

#[allow(clippy::excessive_precision)]
const BHH: [f64; 3] = [
    0.244094488188976377952755905512E+00,
    0.733846688281611857341361741547E+00,
    0.220588235294117647058823529412E-01,
];

#[allow(clippy::excessive_precision)]
const ER: [f64; 12] = [
    0.1312004499419488073250102996E-01,
    0.,
    0.,
    0.,
    0.,
    -0.1225156446376204440720569753E+01,
    -0.4957589496572501915214079952E+00,
    0.1664377182454986536961530415E+01,
    -0.3503288487499736816886487290E+00,
    0.3341791187130174790297318841E+00,
    0.8192320648511571246570742613E-01,
    -0.2235530786388629525884427845E-01,
];
