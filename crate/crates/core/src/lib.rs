//! Floquet spectra of Klein-Gordon equations linearized about periodic
//! traveling waves.
//!
//! The crate builds a periodic traveling wave `u = f(x - ct)` for a potential
//! `V`, reduces the linearized spectral problem to Hill's equation
//! `y'' + P(z) y = nu y` with `P = V''(f)/(c^2 - 1)`, and evaluates the Hill
//! discriminant together with its first two `nu`-derivatives. From the
//! discriminant it locates the points of the stable (imaginary-axis) spectrum
//! that are accumulation points of unstable spectrum, via the scalar equation
//! `nu = F(nu)`, and traces the full spectrum in the complex plane.
//!
//! The crate is `no_std` and needs only `alloc`. Grid sweeps go through the
//! [`Sweep`] trait so a std host can run them in parallel.

#![no_std]
// `!(x < y)` style guards are kept because they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod contour;
pub mod error;
pub mod hamiltonian_hopf;
pub mod hill;
pub mod ode;
pub mod potential;
pub mod quad;
pub mod roots;
pub mod spectrum;
pub mod sweep;
pub mod waveform;

pub use error::{Error, Result};
pub use hamiltonian_hopf::{
    compute_indices, corollary_report, extended_f, lambda_of_nu, nu_of_lambda, scan_hh_points,
    CorollaryReport, ExtendedFValue, FKind, HhPoint, Indices, ScanOptions, TransversalityData,
};
pub use hill::{band_structure, discriminant, monodromy, BandStructure, MonodromyResult};
pub use potential::{Polynomial, Potential, PotentialKind, PotentialValues, SineGordon};
pub use spectrum::{multipliers, trace_spectrum, MultiplierPair, SpectralCurves, Window};
pub use sweep::{Sequential, Sweep};
pub use waveform::{
    build_profile, classify_regime, compute_period, hill_coefficient, HillCoefficient, Regime,
    WaveParameters, WaveProfile,
};
