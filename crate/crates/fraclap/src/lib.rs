//! Batch front end for `fraclap-core`: the `fraclap` command, CSV and JSON
//! formats, run manifests, point-parallel evaluation and validation suites.

pub mod cli;
pub mod error;
pub mod io;
pub mod manifest;
pub mod parallel;
pub mod parse;
pub mod validate;

pub use error::{CliError, CliResult};
