//! Klein-Gordon potentials `V(u)` with their first two derivatives.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // inherent methods shadow it whenever std is linked
use num_traits::Float;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialValues {
    pub v: f64,
    pub dv: f64,
    pub d2v: f64,
}

pub trait Potential: Send + Sync + core::fmt::Debug {
    fn name(&self) -> &str;

    /// Named real parameters, for reports.
    fn params(&self) -> Vec<(String, f64)>;

    /// Spatial period of `V` in `u`, if any. Rotational waves exist only
    /// for periodic potentials.
    fn period(&self) -> Option<f64>;

    /// `(V, V', V'')` without finiteness checks; used in inner loops.
    fn values(&self, u: f64) -> PotentialValues;

    /// `V(a) - V(b)`. Implementations should avoid the cancellation of the
    /// naive difference when `a` and `b` are close.
    fn difference(&self, a: f64, b: f64) -> f64 {
        self.values(a).v - self.values(b).v
    }

    fn eval(&self, u: f64) -> Result<PotentialValues> {
        if !u.is_finite() {
            return Err(Error::EvaluationDomain { u });
        }
        let r = self.values(u);
        if r.v.is_finite() && r.dv.is_finite() && r.d2v.is_finite() {
            Ok(r)
        } else {
            Err(Error::EvaluationDomain { u })
        }
    }
}

/// `V(u) = 1 - cos u`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SineGordon;

impl Potential for SineGordon {
    fn name(&self) -> &str {
        "sine-gordon"
    }

    fn params(&self) -> Vec<(String, f64)> {
        Vec::new()
    }

    fn period(&self) -> Option<f64> {
        Some(2.0 * PI)
    }

    #[inline]
    fn values(&self, u: f64) -> PotentialValues {
        let (s, c) = u.sin_cos();
        let h = (0.5 * u).sin();
        PotentialValues {
            v: 2.0 * h * h,
            dv: s,
            d2v: c,
        }
    }

    fn difference(&self, a: f64, b: f64) -> f64 {
        // cos b - cos a
        2.0 * (0.5 * (a + b)).sin() * (0.5 * (a - b)).sin()
    }
}

/// `V(u) = sum_i c_i u^i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("polynomial needs at least one coefficient"));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("polynomial coefficients must be finite"));
        }
        Ok(Polynomial { coeffs })
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }
}

impl Potential for Polynomial {
    fn name(&self) -> &str {
        "polynomial"
    }

    fn params(&self) -> Vec<(String, f64)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (alloc::format!("c{i}"), c))
            .collect()
    }

    fn period(&self) -> Option<f64> {
        None
    }

    #[inline]
    fn values(&self, u: f64) -> PotentialValues {
        // Horner for the value and both derivatives at once
        let mut v = 0.0;
        let mut dv = 0.0;
        let mut d2v = 0.0;
        for &c in self.coeffs.iter().rev() {
            d2v = d2v * u + 2.0 * dv;
            dv = dv * u + v;
            v = v * u + c;
        }
        PotentialValues { v, dv, d2v }
    }

    fn difference(&self, a: f64, b: f64) -> f64 {
        // sum c_i (a^i - b^i) = (a - b) sum c_i h_{i-1}(a, b), with the
        // complete homogeneous sums h_k = a h_{k-1} + b^k
        let mut h = 0.0;
        let mut bk = 1.0;
        let mut acc = 0.0;
        for &c in self.coeffs.iter().skip(1) {
            h = a * h + bk;
            bk *= b;
            acc += c * h;
        }
        (a - b) * acc
    }
}

/// The potentials that can be selected by name from a configuration.
#[derive(Debug, Clone, PartialEq)]
pub enum PotentialKind {
    SineGordon(SineGordon),
    Polynomial(Polynomial),
}

impl PotentialKind {
    pub fn from_name(name: &str, coefficients: &[f64]) -> Result<Self> {
        match name {
            "sine-gordon" | "sine_gordon" | "sg" => Ok(PotentialKind::SineGordon(SineGordon)),
            "polynomial" => Ok(PotentialKind::Polynomial(Polynomial::new(coefficients.to_vec())?)),
            _ => Err(Error::InvalidInput("unknown potential name")),
        }
    }
}

impl Potential for PotentialKind {
    fn name(&self) -> &str {
        match self {
            PotentialKind::SineGordon(p) => p.name(),
            PotentialKind::Polynomial(p) => p.name(),
        }
    }
    fn params(&self) -> Vec<(String, f64)> {
        match self {
            PotentialKind::SineGordon(p) => p.params(),
            PotentialKind::Polynomial(p) => p.params(),
        }
    }
    fn period(&self) -> Option<f64> {
        match self {
            PotentialKind::SineGordon(p) => p.period(),
            PotentialKind::Polynomial(p) => p.period(),
        }
    }
    #[inline]
    fn values(&self, u: f64) -> PotentialValues {
        match self {
            PotentialKind::SineGordon(p) => p.values(u),
            PotentialKind::Polynomial(p) => p.values(u),
        }
    }
    fn difference(&self, a: f64, b: f64) -> f64 {
        match self {
            PotentialKind::SineGordon(p) => p.difference(a, b),
            PotentialKind::Polynomial(p) => p.difference(a, b),
        }
    }
}
