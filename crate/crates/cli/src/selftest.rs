//! Analytic oracle checks run by `kg-floquet selftest`.

use std::fmt::Write as _;
use std::sync::Arc;

use kg_floquet::hill::constant;
use kg_floquet::{
    compute_period, extended_f, monodromy, HillCoefficient, Potential, SineGordon, WaveParameters,
};
use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub name: &'static str,
    /// Largest error seen, in the units the tolerance is stated in.
    pub error: f64,
    pub tolerance: f64,
}

impl CheckRow {
    pub fn passed(&self) -> bool {
        self.error <= self.tolerance
    }
}

pub const CHECK_NAMES: [&str; 9] = [
    "constant-discriminant",
    "constant-derivatives",
    "harmonic-period",
    "abel-real",
    "abel-complex",
    "fd-delta-nu",
    "fd-delta-nunu",
    "fd-potential",
    "zero-potential-f",
];

type Check = fn() -> Result<(f64, f64), kg_floquet::Error>;

/// Runs every check. The row named by `perturb` gets twice its tolerance
/// added to the measured error, which must make it fail.
pub fn run(perturb: Option<&str>) -> Vec<CheckRow> {
    let checks: [Check; 9] = [
        constant_discriminant,
        constant_derivatives,
        harmonic_period,
        abel_real,
        abel_complex,
        fd_delta_nu,
        fd_delta_nunu,
        fd_potential,
        zero_potential_f,
    ];
    CHECK_NAMES
        .iter()
        .zip(checks)
        .map(|(&name, check)| {
            let (mut error, tolerance) = check().unwrap_or((f64::INFINITY, 0.0));
            if perturb == Some(name) {
                error += 2.0 * tolerance.max(f64::MIN_POSITIVE);
            }
            CheckRow { name, error, tolerance }
        })
        .collect()
}

pub fn table(rows: &[CheckRow]) -> String {
    let mut out = format!("{:<24} {:>12} {:>12}  result\n", "check", "error", "tolerance");
    for r in rows {
        let verdict = if r.passed() { "pass" } else { "FAIL" };
        let _ = writeln!(out, "{:<24} {:>12.3e} {:>12.3e}  {verdict}", r.name, r.error, r.tolerance);
    }
    out
}

fn mathieu() -> HillCoefficient {
    HillCoefficient::from_fn(std::f64::consts::PI, |z| 0.8 * (2.0 * z).cos()).expect("valid coefficient")
}

fn flat(p0: f64, t: f64) -> HillCoefficient {
    // integrated like any other coefficient, unlike `HillCoefficient::constant`
    HillCoefficient::from_fn(t, move |_| p0).expect("valid coefficient")
}

fn constant_discriminant() -> Result<(f64, f64), kg_floquet::Error> {
    let mut worst: f64 = 0.0;
    for &(p0, t) in &[(0.0, std::f64::consts::PI), (1.0, 2.5), (-2.0, 2.5)] {
        let coef = flat(p0, t);
        for k in 0..25 {
            let nu = -30.0 + (p0 + 35.0) * k as f64 / 24.0;
            let (d, ..) = constant::discriminant(p0, t, nu);
            let r = monodromy(&coef, nu)?;
            worst = worst.max((r.delta - d).abs() / d.abs().max(1.0));
        }
    }
    Ok((worst, 1e-8))
}

fn constant_derivatives() -> Result<(f64, f64), kg_floquet::Error> {
    let mut worst: f64 = 0.0;
    for &(p0, t) in &[(0.0, std::f64::consts::PI), (1.0, 2.5)] {
        let coef = flat(p0, t);
        for k in 0..15 {
            let nu = -30.0 + (p0 + 34.0) * k as f64 / 14.0;
            let (_, d1, d2) = constant::discriminant(p0, t, nu);
            let r = monodromy(&coef, nu)?;
            worst = worst
                .max((r.delta_nu - d1).abs() / d1.abs().max(1.0))
                .max((r.delta_nunu - d2).abs() / d2.abs().max(1.0));
        }
    }
    Ok((worst, 1e-7))
}

fn harmonic_period() -> Result<(f64, f64), kg_floquet::Error> {
    let c: f64 = 1.45;
    let t = compute_period(&SineGordon, WaveParameters::new(c, 1e-3)?)?;
    let t0 = 2.0 * std::f64::consts::PI * (c * c - 1.0).sqrt();
    Ok(((t - t0).abs() / t, 1e-3))
}

fn abel_real() -> Result<(f64, f64), kg_floquet::Error> {
    let coef = mathieu();
    let mut worst: f64 = 0.0;
    for k in 0..20 {
        let nu = -40.0 + 2.2 * k as f64;
        worst = worst.max((monodromy(&coef, nu)?.det() - 1.0).abs());
    }
    Ok((worst, 1e-9))
}

fn abel_complex() -> Result<(f64, f64), kg_floquet::Error> {
    let coef = mathieu();
    let mut worst: f64 = 0.0;
    for k in 0..10 {
        let nu = Complex64::new(-20.0 + 2.0 * k as f64, 0.5 - 0.1 * k as f64);
        worst = worst.max((monodromy(&coef, nu)?.det() - 1.0).norm());
    }
    Ok((worst, 1e-9))
}

fn fd_delta_nu() -> Result<(f64, f64), kg_floquet::Error> {
    let coef = mathieu();
    let h = 1e-4;
    let mut worst: f64 = 0.0;
    for &nu in &[-7.3, -3.1, -0.4, 1.2] {
        let r = monodromy(&coef, nu)?;
        let fd = (monodromy(&coef, nu + h)?.delta - monodromy(&coef, nu - h)?.delta) / (2.0 * h);
        worst = worst.max((fd - r.delta_nu).abs() / r.delta_nu.abs().max(1.0));
    }
    Ok((worst, 1e-6))
}

fn fd_delta_nunu() -> Result<(f64, f64), kg_floquet::Error> {
    let coef = mathieu();
    let h = 1e-4;
    let mut worst: f64 = 0.0;
    for &nu in &[-7.3, -3.1, -0.4, 1.2] {
        let r = monodromy(&coef, nu)?;
        let fd = (monodromy(&coef, nu + h)?.delta_nu - monodromy(&coef, nu - h)?.delta_nu) / (2.0 * h);
        worst = worst.max((fd - r.delta_nunu).abs() / r.delta_nunu.abs().max(1.0));
    }
    Ok((worst, 1e-6))
}

fn fd_potential() -> Result<(f64, f64), kg_floquet::Error> {
    let p: Arc<dyn Potential> = Arc::new(SineGordon);
    let h = 1e-5;
    let mut worst: f64 = 0.0;
    for k in 0..16 {
        let u = -3.0 + 0.43 * k as f64;
        let v = p.eval(u)?;
        let dv = (p.eval(u + h)?.v - p.eval(u - h)?.v) / (2.0 * h);
        let d2v = (p.eval(u + h)?.dv - p.eval(u - h)?.dv) / (2.0 * h);
        worst = worst.max((dv - v.dv).abs()).max((d2v - v.d2v).abs());
    }
    Ok((worst, 1e-8))
}

fn zero_potential_f() -> Result<(f64, f64), kg_floquet::Error> {
    let coef = flat(0.0, std::f64::consts::PI);
    let c: f64 = 1.45;
    let mut worst: f64 = 0.0;
    for k in 0..20 {
        let nu = -0.37 - 2.1 * k as f64;
        let f = extended_f(&coef, c, nu)?;
        worst = worst.max((f.value - c * c * nu).abs() / (c * c * nu).abs());
    }
    Ok((worst, 1e-9))
}
