//! Run configuration, read from TOML.
//!
//! ```toml
//! [potential]
//! name = "sine-gordon"      # or "polynomial"
//! coefficients = []         # a_0, a_1, ... for V(u) = sum a_k u^k
//!
//! [wave]
//! c = 1.45
//! energy = 6.0
//! nodes = 1024
//!
//! [scan]
//! nu_min = -362.0           # default -(40 / T)^2
//! step = 0.09               # step in sqrt(-nu); default (pi / T) / 16
//! saturation_run = 8
//!
//! [curve]
//! samples = 2000
//!
//! [spectrum]
//! re_min = -1.0
//! re_max = 1.0
//! im_min = 0.0
//! im_max = 21.0             # default |c^2 - 1| sqrt(-nu_min)
//! nx = 512
//! ny = 512
//!
//! [output]
//! dir = "out"
//! format = "json"           # or "csv"
//! ```

use std::path::{Path, PathBuf};

use kg_floquet::potential::PotentialKind;
use kg_floquet::waveform::MIN_NODES;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub potential: PotentialConfig,
    pub wave: WaveConfig,
    #[serde(default)]
    pub scan: ScanConfig,
    #[serde(default)]
    pub curve: CurveConfig,
    #[serde(default)]
    pub spectrum: SpectrumConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialConfig {
    pub name: String,
    #[serde(default)]
    pub coefficients: Vec<f64>,
}

impl Default for PotentialConfig {
    fn default() -> Self {
        PotentialConfig {
            name: "sine-gordon".into(),
            coefficients: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaveConfig {
    pub c: f64,
    pub energy: f64,
    #[serde(default = "default_nodes")]
    pub nodes: usize,
}

fn default_nodes() -> usize {
    1024
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu_min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step: Option<f64>,
    #[serde(default = "default_saturation_run")]
    pub saturation_run: usize,
}

fn default_saturation_run() -> usize {
    8
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            nu_min: None,
            step: None,
            saturation_run: default_saturation_run(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveConfig {
    #[serde(default = "default_samples")]
    pub samples: usize,
}

fn default_samples() -> usize {
    2000
}

impl Default for CurveConfig {
    fn default() -> Self {
        CurveConfig {
            samples: default_samples(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumConfig {
    #[serde(default = "default_re_min")]
    pub re_min: f64,
    #[serde(default = "default_re_max")]
    pub re_max: f64,
    #[serde(default)]
    pub im_min: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub im_max: Option<f64>,
    #[serde(default = "default_grid")]
    pub nx: usize,
    #[serde(default = "default_grid")]
    pub ny: usize,
}

fn default_re_min() -> f64 {
    -1.0
}

fn default_re_max() -> f64 {
    1.0
}

fn default_grid() -> usize {
    512
}

impl Default for SpectrumConfig {
    fn default() -> Self {
        SpectrumConfig {
            re_min: default_re_min(),
            re_max: default_re_max(),
            im_min: 0.0,
            im_max: None,
            nx: default_grid(),
            ny: default_grid(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dir: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
}

impl RunConfig {
    /// Minimal configuration for a sine-Gordon wave.
    pub fn sine_gordon(c: f64, energy: f64) -> Self {
        RunConfig {
            potential: PotentialConfig::default(),
            wave: WaveConfig {
                c,
                energy,
                nodes: default_nodes(),
            },
            scan: ScanConfig::default(),
            curve: CurveConfig::default(),
            spectrum: SpectrumConfig::default(),
            output: OutputConfig::default(),
        }
    }

    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("configuration serializes")
    }

    pub fn potential(&self) -> Result<PotentialKind, CliError> {
        PotentialKind::from_name(&self.potential.name, &self.potential.coefficients)
            .map_err(|e| CliError::Config(format!("potential '{}': {e}", self.potential.name)))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: &str| Err(CliError::Config(msg.to_string()));
        let w = &self.wave;
        if !w.c.is_finite() || !w.energy.is_finite() {
            return bad("wave.c and wave.energy must be finite");
        }
        if (w.c * w.c - 1.0).abs() <= 1e-12 {
            return bad("wave.c must satisfy c^2 != 1");
        }
        if w.nodes < MIN_NODES {
            return bad("wave.nodes must be at least 256");
        }
        if self.potential.coefficients.iter().any(|a| !a.is_finite()) {
            return bad("potential coefficients must be finite");
        }
        self.potential()?;
        if let Some(nu) = self.scan.nu_min {
            if !(nu.is_finite() && nu < 0.0) {
                return bad("scan.nu_min must be finite and negative");
            }
        }
        if let Some(step) = self.scan.step {
            if !(step.is_finite() && step > 0.0) {
                return bad("scan.step must be finite and positive");
            }
        }
        if self.curve.samples < 2 {
            return bad("curve.samples must be at least 2");
        }
        let s = &self.spectrum;
        if s.nx < 64 || s.ny < 64 {
            return bad("spectrum grid must be at least 64 x 64");
        }
        let finite_window = [s.re_min, s.re_max, s.im_min].iter().all(|v| v.is_finite())
            && s.im_max.is_none_or(|v| v.is_finite());
        if !finite_window || s.re_max <= s.re_min || s.im_max.is_some_and(|v| v <= s.im_min) {
            return bad("spectrum window must be a nonempty finite rectangle");
        }
        Ok(())
    }
}
