//! Executes scenarios. Checks are independent and run in parallel; a check
//! that errors or panics is reported as failed without affecting the others.
//! Assembly of the report is sequential and in registry order.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rayon::prelude::*;

use crate::checks::{CheckCtx, Measurement};
use crate::report::{CheckSummary, Report, ReportRow, ScenarioReport};
use crate::scenario::{Scenario, SelectedCheck};

pub const THREADS_ENV: &str = "RGSSLAB_THREADS";

/// Worker count from `RGSSLAB_THREADS` (unset, empty or 0: rayon's default).
pub fn thread_count() -> Option<usize> {
    std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()).filter(|n| *n > 0)
}

fn pool() -> rayon::ThreadPool {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_count() {
        b = b.num_threads(n);
    }
    b.build().expect("thread pool")
}

fn panic_message(p: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = p.downcast_ref::<&str>() {
        (*s).to_string()
    } else if let Some(s) = p.downcast_ref::<String>() {
        s.clone()
    } else {
        "non-string panic payload".into()
    }
}

fn run_check(s: &Scenario, sel: &SelectedCheck) -> (CheckSummary, Vec<ReportRow>) {
    let def = sel.def;
    let ctx = CheckCtx { params: &s.params, seed: s.seed, id: def.id };
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(|| (def.run)(&ctx)));
    let ms = start.elapsed().as_millis() as u64;
    let (measurements, error) = match outcome {
        Ok(Ok(m)) if m.is_empty() => (vec![], Some("no probes evaluated".to_string())),
        Ok(Ok(m)) => (m, None),
        Ok(Err(e)) => (vec![], Some(e.to_string())),
        Err(p) => (vec![], Some(format!("panic: {}", panic_message(p)))),
    };
    let measurements = if let Some(e) = &error {
        vec![Measurement::new(format!("error: {e}"), f64::NAN, f64::NAN, f64::NAN)]
    } else {
        measurements
    };
    let rows: Vec<ReportRow> = measurements
        .into_iter()
        .map(|m| ReportRow::new(def.id, m.probe, m.measured, m.reference, m.residual, sel.tolerance, ms))
        .collect();
    let worst_residual = rows.iter().map(|r| r.residual.abs()).fold(0.0, |m: f64, r| if r.is_nan() { r } else { m.max(r) });
    let summary = CheckSummary {
        check_id: def.id.into(),
        operation: def.operation.into(),
        identity: def.identity.into(),
        tolerance: sel.tolerance,
        rows: rows.len(),
        worst_residual,
        pass: error.is_none() && rows.iter().all(|r| r.pass),
        error,
        ms,
    };
    (summary, rows)
}

fn run_one(s: &Scenario) -> ScenarioReport {
    let results: Vec<_> = s.checks.par_iter().map(|c| run_check(s, c)).collect();
    let mut checks = Vec::with_capacity(results.len());
    let mut rows = Vec::new();
    for (c, r) in results {
        checks.push(c);
        rows.extend(r);
    }
    ScenarioReport { name: s.name.clone(), kind: s.kind(), seed: s.seed, checks, rows }
}

/// Runs the scenarios concurrently on a pool capped by `RGSSLAB_THREADS`.
pub fn run(scenarios: &[Scenario]) -> Report {
    let reports = pool().install(|| scenarios.par_iter().map(run_one).collect());
    Report::new(reports)
}

pub fn run_scenario(s: &Scenario) -> Report {
    run(std::slice::from_ref(s))
}
