//! Runner for the biphoton propagation pipeline: TOML-configured single runs
//! and sweeps, a self-validation suite, and grid-file unit conversion.

pub mod commands;
pub mod config;
pub mod error;
pub mod heatmap;
pub mod validate;

pub use commands::{convert, run, sweep, Overrides};
pub use config::{RunConfig, OUTPUT_DIR_ENV};
pub use error::{CliError, Result};
pub use heatmap::render_heatmap;
pub use validate::{validate, validate_with, ValidationReport};
