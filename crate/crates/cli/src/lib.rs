//! Batch front end for `rbound-core`: JSON experiment configs in, canonical
//! JSON or CSV reports out, plus the acceptance suite run by `verify-all`.

pub mod config;
pub mod emit;
pub mod error;
pub mod experiment;
pub mod verify;

pub use config::{ExperimentConfig, Kind, Params};
pub use error::{CliError, Result};
pub use experiment::{run_experiment, Format, Report};
