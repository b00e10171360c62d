//! Command-line front end: config, suites, reports and SVG slices.

pub mod commands;
pub mod config;
pub mod error;
pub mod props;
pub mod render;
pub mod report;

pub use commands::{run, Cli};
pub use config::ExperimentConfig;
pub use error::{CliError, CliResult};
pub use report::{Report, Row};
