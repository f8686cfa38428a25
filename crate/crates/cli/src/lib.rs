//! Command-line orchestration of the newswire pipeline: configuration,
//! per-stage drivers, and run manifests.

pub mod config;
pub mod error;
pub mod manifest;
pub mod stages;
pub mod synth;

pub use config::PipelineConfig;
pub use error::{CliError, CliResult};
