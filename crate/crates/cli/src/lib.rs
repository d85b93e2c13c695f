//! Experiment runner behind the `tracedist` binary: file formats, commands and
//! CSV output.

pub mod cases;
pub mod commands;
pub mod error;
pub mod files;
pub mod format;

pub use error::{CliError, CliResult};
