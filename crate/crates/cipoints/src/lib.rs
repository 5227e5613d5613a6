//! Command-line front end for `cipoints-core`: variety files, parallel
//! drivers and CSV reports.

pub mod cli;
pub mod error;
pub mod format;
pub mod parallel;
pub mod report;

pub use error::{CliError, Result};
