//! Command-line driver: strict JSON configs, CSV series with a provenance
//! line, JSON summaries and optional SVG plots.

// `!(x > 0.0)` is the NaN-rejecting form used throughout
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod plot;

pub use args::Cli;
pub use commands::run;
pub use error::{CliError, Result};
