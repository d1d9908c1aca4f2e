//! Command-line front end. Exit codes: 0 all checks pass, 1 some check
//! failed, 2 the scenario or command line was invalid.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::error::{CliError, CliResult};
use crate::report::{Format, Report};
use crate::runner;
use crate::scenario::Scenario;
use crate::suites::Suite;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = CliError::EXIT_CODE;

#[derive(Debug, Parser)]
#[command(name = "rgsslab", version, about = "Verification harness for renormalization-group symmetry computations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a scenario file and write its report.
    Run {
        #[arg(long)]
        scenario: PathBuf,
        /// Report path; defaults to the scenario's `output`, else stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Defaults to the report path's extension (.json → json), else csv.
        #[arg(long)]
        format: Option<Format>,
    },
    /// Run a built-in suite and print a summary table.
    Verify {
        #[arg(long, default_value = "quick")]
        suite: Suite,
        /// Also write the full report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the report of a scenario file or built-in suite.
    Report {
        #[arg(long)]
        format: Format,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, conflicts_with = "suite")]
        scenario: Option<PathBuf>,
        /// Defaults to `quick` when no scenario is given.
        #[arg(long)]
        suite: Option<Suite>,
    },
}

fn verdict(report: &Report) -> i32 {
    if report.pass() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn execute_inner<O: Write, E: Write>(cmd: Command, out: &mut O, err: &mut E) -> CliResult<i32> {
    let io = |source| CliError::Io { path: PathBuf::from("<stdout>"), source };
    match cmd {
        Command::Run { scenario, out: path, format } => {
            let s = Scenario::load(&scenario)?;
            let report = runner::run_scenario(&s);
            match path.or_else(|| s.output.clone()) {
                Some(p) => {
                    report.write_file(format.unwrap_or_else(|| Format::from_path(&p)), &p)?;
                    let _ = write!(err, "{}", report.summary_table());
                    let _ = writeln!(err, "report written to {}", p.display());
                }
                None => {
                    report.write(format.unwrap_or(Format::Csv), &mut *out)?;
                    let _ = write!(err, "{}", report.summary_table());
                }
            }
            Ok(verdict(&report))
        }
        Command::Verify { suite, out: path } => {
            let scenarios = suite.scenarios()?;
            let start = Instant::now();
            let report = runner::run(&scenarios);
            let secs = start.elapsed().as_secs_f64();
            write!(out, "{}", report.summary_table()).map_err(io)?;
            writeln!(out, "suite {suite}: {} in {secs:.1} s", if report.pass() { "PASS" } else { "FAIL" }).map_err(io)?;
            if let Some(p) = path {
                report.write_file(Format::from_path(&p), &p)?;
            }
            Ok(verdict(&report))
        }
        Command::Report { format, out: path, scenario, suite } => {
            let report = match scenario {
                Some(sc) => runner::run_scenario(&Scenario::load(&sc)?),
                None => runner::run(&suite.unwrap_or(Suite::Quick).scenarios()?),
            };
            report.write_file(format, &path)?;
            let _ = write!(err, "{}", report.summary_table());
            Ok(verdict(&report))
        }
    }
}

/// Runs a parsed command; errors are printed to `err` and mapped to exit 2.
pub fn execute<O: Write, E: Write>(cmd: Command, out: &mut O, err: &mut E) -> i32 {
    match execute_inner(cmd, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}

/// Process entry point: parse arguments, run, return the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_PASS };
        }
    };
    execute(cli.command, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
