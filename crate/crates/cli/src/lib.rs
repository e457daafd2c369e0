//! Command-line front end: input formats, job configuration, constructions
//! and the `homology`, `persist`, `render`, `validate` and `score` commands.

pub mod build;
pub mod commands;
pub mod config;
pub mod error;
pub mod formats;
pub mod output;
pub mod render;

pub use error::{CliError, Result};
