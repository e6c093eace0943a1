//! Command-line front end: file formats and commands.

pub mod commands;
pub mod files;

pub use commands::{run, summary, Cli, Outcome};
