//! Report rows, per-check summaries and their CSV/JSON serializations.

use std::fmt::Write as _;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::scenario::Kind;

pub const REPORT_SCHEMA: &str = "rgsslab.report/1";

/// CSV header, in column order.
pub const CSV_COLUMNS: [&str; 8] = ["check_id", "probe", "measured", "reference", "residual", "tolerance", "pass", "ms"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub check_id: String,
    pub probe: String,
    pub measured: f64,
    pub reference: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Wall time of the whole check, repeated on each of its rows.
    pub ms: u64,
}

impl ReportRow {
    /// `pass` is derived, never supplied: |residual| ≤ tolerance (NaN fails).
    pub fn new(check_id: &str, probe: String, measured: f64, reference: f64, residual: f64, tolerance: f64, ms: u64) -> Self {
        let pass = residual.abs() <= tolerance;
        Self { check_id: check_id.into(), probe, measured, reference, residual, tolerance, pass, ms }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub check_id: String,
    pub operation: String,
    pub identity: String,
    pub tolerance: f64,
    pub rows: usize,
    pub worst_residual: f64,
    pub pass: bool,
    /// Error or panic message when the check did not complete.
    pub error: Option<String>,
    pub ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub name: String,
    pub kind: Kind,
    pub seed: u64,
    pub checks: Vec<CheckSummary>,
    pub rows: Vec<ReportRow>,
}

impl ScenarioReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub scenarios: Vec<ScenarioReport>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format `{s}` (csv|json)")),
        }
    }
}

impl Format {
    /// JSON for `.json` paths, CSV otherwise.
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("json") => Format::Json,
            _ => Format::Csv,
        }
    }
}

impl Report {
    pub fn new(scenarios: Vec<ScenarioReport>) -> Self {
        Self { schema: REPORT_SCHEMA.into(), scenarios }
    }

    pub fn pass(&self) -> bool {
        self.scenarios.iter().all(ScenarioReport::pass)
    }

    /// Rows of all scenarios; with several scenarios the probe is prefixed by
    /// the scenario name.
    pub fn rows(&self) -> impl Iterator<Item = ReportRow> + '_ {
        let tag = self.scenarios.len() > 1;
        self.scenarios.iter().flat_map(move |s| {
            s.rows.iter().map(move |r| {
                let mut r = r.clone();
                if tag {
                    r.probe = format!("scenario={};{}", s.name, r.probe);
                }
                r
            })
        })
    }

    pub fn write_csv<W: Write>(&self, w: W) -> CliResult<()> {
        let mut wr = csv::WriterBuilder::new().has_headers(false).from_writer(w);
        wr.write_record(CSV_COLUMNS).map_err(|e| CliError::Report(e.to_string()))?;
        for r in self.rows() {
            wr.serialize(&r).map_err(|e| CliError::Report(e.to_string()))?;
        }
        wr.flush().map_err(|e| CliError::Report(e.to_string()))
    }

    pub fn write_json<W: Write>(&self, w: W) -> CliResult<()> {
        serde_json::to_writer_pretty(w, self).map_err(|e| CliError::Report(e.to_string()))
    }

    pub fn write<W: Write>(&self, format: Format, w: W) -> CliResult<()> {
        match format {
            Format::Csv => self.write_csv(w),
            Format::Json => self.write_json(w),
        }
    }

    pub fn to_string(&self, format: Format) -> CliResult<String> {
        let mut buf = Vec::new();
        self.write(format, &mut buf)?;
        String::from_utf8(buf).map_err(|e| CliError::Report(e.to_string()))
    }

    pub fn write_file(&self, format: Format, path: &std::path::Path) -> CliResult<()> {
        let io = |source| CliError::Io { path: path.to_path_buf(), source };
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(io)?;
        }
        let f = std::fs::File::create(path).map_err(io)?;
        let mut w = std::io::BufWriter::new(f);
        self.write(format, &mut w)?;
        w.flush().map_err(io)
    }

    /// Human-readable per-check table.
    pub fn summary_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:<16} {:<28} {:>5} {:>12} {:>10} {:>8}  result", "scenario", "check", "rows", "worst", "tol", "ms");
        for sc in &self.scenarios {
            for c in &sc.checks {
                let verdict = match (&c.error, c.pass) {
                    (Some(e), _) => format!("ERROR ({e})"),
                    (None, true) => "PASS".into(),
                    (None, false) => "FAIL".into(),
                };
                let _ = writeln!(
                    s,
                    "{:<16} {:<28} {:>5} {:>12.3e} {:>10.1e} {:>8}  {verdict}",
                    sc.name, c.check_id, c.rows, c.worst_residual, c.tolerance, c.ms
                );
            }
        }
        let checks: Vec<&CheckSummary> = self.scenarios.iter().flat_map(|s| &s.checks).collect();
        let passed = checks.iter().filter(|c| c.pass).count();
        let _ = writeln!(s, "{passed}/{} checks passed", checks.len());
        s
    }
}
