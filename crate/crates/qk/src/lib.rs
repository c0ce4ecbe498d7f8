//! File formats, reports and parallel drivers around `qk-core`.
//!
//! The `qk` binary is a thin layer over [`cli`].

pub mod cli;
pub mod drive;
pub mod edgelist;
pub mod error;
pub mod report;

pub use error::{CliError, ExitCode};
