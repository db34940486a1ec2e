//! Command line front end for `orbitgeo-core`: matrix commands over JSON
//! files and reproducible check suites with CSV reports.

pub mod checks;
pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod report;
pub mod runner;

pub use config::{Suite, SuiteConfig};
pub use error::{exit, CliError};
pub use report::{Report, Row};
