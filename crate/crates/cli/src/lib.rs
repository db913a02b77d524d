//! Configuration, sweeps, file formats and the `qcnr` command line on top
//! of `qcnr-core`.

pub mod commands;
pub mod config;
pub mod error;
pub mod export;
pub mod sweep;
pub mod trace;

pub use config::{load_config, parse_config, Format, RunConfig};
pub use error::{CliError, ConfigError};
pub use export::{export, parse, Output};
pub use sweep::{run_operation, run_sweep, Operation};
