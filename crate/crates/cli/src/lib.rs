//! Command-line front end for `kg-floquet`: configuration, orchestration and
//! deterministic CSV/JSON output.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod parallel;
pub mod report;
pub mod selftest;

pub use config::{Format, RunConfig};
pub use error::CliError;
