use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(&'static str),

    #[error("potential evaluation is not finite at u = {u}")]
    EvaluationDomain { u: f64 },

    /// The energy sits on a critical value of the effective potential
    /// (separatrix or equilibrium), so there is no periodic orbit.
    #[error("no periodic orbit: energy {energy} equals critical value {critical} of the effective potential ({kind})")]
    NoPeriodicOrbit {
        energy: f64,
        critical: f64,
        kind: &'static str,
    },

    #[error("no bounded orbit at energy {energy}: {reason}")]
    NoOrbit { energy: f64, reason: &'static str },

    #[error("could not bracket a turning point near u = {near}")]
    TurningPointBracket { near: f64 },

    #[error("quadrature did not converge: estimate {estimate}, error {error}")]
    QuadratureNonConvergence { estimate: f64, error: f64 },

    #[error("integrator failure at t = {t}: {reason}")]
    Integrator { t: f64, reason: &'static str },

    #[error("profile accuracy: energy/closure drift {drift} exceeds {tolerance}")]
    ProfileAccuracy { drift: f64, tolerance: f64 },

    #[error("scan resolution too coarse near nu = {nu}; refine the scan step")]
    ScanResolution { nu: f64 },

    #[error("root bracketing failed on [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },

    #[error("discriminant degenerate at nu = {nu}: first and second derivatives both vanish")]
    DegenerateDiscriminant { nu: f64 },

    #[error("not a wave coefficient: discriminant at nu = 0 is {delta0}, expected 2")]
    NotAWaveCoefficient { delta0: f64 },

    #[error("inconsistent with Hill theory: {0}")]
    InconsistentWithTheory(&'static str),

    #[error("probe nu = {nu} is too close to a resonance (|sin| = {sin_abs})")]
    ProbeRejected { nu: f64, sin_abs: f64 },
}
