//! Seeded Monte Carlo campaigns over `rgspectra-core`, their CSV/JSON
//! outputs, and the `rgspectra` command-line front end.

pub mod cli;
pub mod config;
mod error;
pub mod experiment;
pub mod formats;
pub mod output;
pub mod record;

pub use config::{ExperimentConfig, ExperimentKind};
pub use error::{LabError, Result};
pub use record::TrialRecord;
