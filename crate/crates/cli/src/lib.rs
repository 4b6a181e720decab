//! Command-line front end for `numrad-core`: JSON matrix documents, CSV and
//! JSON reports, and built-in reproduction scenarios.

pub mod commands;
pub mod document;
pub mod error;
pub mod format;
pub mod scenarios;

pub use commands::{run, Cli, Outcome};
pub use error::{CliError, CliResult};
