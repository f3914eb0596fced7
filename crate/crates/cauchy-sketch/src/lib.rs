//! File formats, reports and the command-line front end for
//! [`cauchy_sketch_core`].
//!
//! - [`io`]: CSV and binary point sets and sketches.
//! - [`meta`]: the `.meta.json` sidecar.
//! - [`report`]: JSON-lines verification reports and their summary.
//! - [`cli`] and [`commands`]: `plan`, `sketch`, `estimate`, `verify`.

#![forbid(unsafe_code)]
#![warn(missing_docs)]

pub mod cli;
pub mod commands;
mod error;
pub mod io;
pub mod meta;
pub mod report;

pub use commands::{cmd_estimate, cmd_plan, cmd_sketch, cmd_verify, run};
pub use error::CliError;
