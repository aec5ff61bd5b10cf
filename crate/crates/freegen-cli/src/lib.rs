//! Command-line front end: configuration, table output and verification
//! suites.

pub mod commands;
pub mod config;
pub mod error;
pub mod suites;

pub use commands::run;
pub use config::{parse_config, RunConfig};
pub use error::CliError;
