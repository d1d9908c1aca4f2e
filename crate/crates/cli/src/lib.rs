//! Scenario-driven verification harness for the `rgsslab` library: parses
//! scenario files, runs registered checks, and writes CSV/JSON reports.

pub mod checks;
pub mod cli;
pub mod error;
pub mod probes;
pub mod report;
pub mod runner;
pub mod scenario;
pub mod suites;

pub use error::{CliError, CliResult};
pub use report::{Format, Report, ReportRow};
pub use scenario::{Kind, Scenario};
pub use suites::Suite;
