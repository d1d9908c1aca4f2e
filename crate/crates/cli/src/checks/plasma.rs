use std::f64::consts::PI;

use rgsslab::plasma::{airy, fs_residual_r8, oracle, q_hot, scorer, solution_sampler, PlasmaConfig};
use rgsslab::{NumDiffConfig, Point, Result, RgsError, SolutionSampler};

use super::{coords, CheckCtx, Measurement, Worst};
use crate::scenario::{Fault, ModelParams, PlasmaParams};

fn params<'a>(ctx: &'a CheckCtx<'_>) -> &'a PlasmaParams {
    match ctx.params {
        ModelParams::Plasma(p) => p,
        _ => unreachable!("registry kind mismatch"),
    }
}

/// Special-function values as seen by the checks; a corrupted table is
/// simulated by a relative perturbation.
fn table(p: &PlasmaParams, v: f64) -> f64 {
    match p.fault {
        Some(Fault::SpecialTable) => v * (1.0 + 1e-4),
        _ => v,
    }
}

fn grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

pub fn pde_residual(ctx: &CheckCtx<'_>) -> Result<Vec<Measurement>> {
    let p = params(ctx);
    if p.fault == Some(Fault::Panic) {
        panic!("injected fault in plasma.pde_residual");
    }
    let mut out = Vec::new();
    for a in [0.0, 0.5 * p.a, p.a] {
        let cfg = PlasmaConfig::new(p.regime, a)?;
        let mut worst = Worst::default();
        let mut folds = 0;
        for mu in grid(-2.0, 2.0, 21) {
            for t in grid(0.0, 2.0 * PI, 25) {
                match rgsslab::plasma::pde_residual(&cfg, mu, t) {
                    Ok((r1, r2)) => {
                        let r = if r1.abs() >= r2.abs() { r1 } else { r2 };
                        worst.offer(Measurement::zero(coords(&[("mu", mu), ("t", t)]), r));
                    }
                    Err(RgsError::FoldEncountered { .. }) => folds += 1,
                    Err(e) => return Err(e),
                }
            }
        }
        out.extend(worst.finish(&format!("regime={:?};a={a};folds skipped={folds};", p.regime).to_lowercase()));
    }
    Ok(out)
}

pub fn fs_r8(ctx: &CheckCtx<'_>) -> Result<Vec<Measurement>> {
    let p = params(ctx);
    let sol = solution_sampler(p.regime, (-12.0, 12.0), NumDiffConfig::default());
    let mut rng = ctx.rng("probes");
    let mut worst = Worst::default();
    let mut skipped = 0;
    while worst.count < p.r8_probes {
        let x = rng.uniform(-2.0, 2.0);
        let t = rng.uniform(0.0, 2.0 * PI);
        let a = rng.uniform(0.0, p.a);
        let pt = Point::from_pairs(&[("x", x), ("t", t), ("a", a)]);
        // Multi-valued (post-fold) points have no single-valued solution.
        if sol.value(&pt).is_err() {
            skipped += 1;
            if skipped > 10 * p.r8_probes {
                return Err(RgsError::Precondition("no single-valued probes".into()));
            }
            continue;
        }
        let (s1, s2) = fs_residual_r8(&sol, &pt)?;
        let r = if s1.abs() >= s2.abs() { s1 } else { s2 };
        worst.offer(Measurement::zero(coords(&[("x", x), ("t", t), ("a", a)]), r));
    }
    Ok(worst.finish(&format!("regime={:?};skipped={skipped};", p.regime).to_lowercase()).into_iter().collect())
}

pub fn q_oracle(ctx: &CheckCtx<'_>) -> Result<Vec<Measurement>> {
    let p = params(ctx);
    let mut worst = Worst::default();
    for mu in grid(-5.0, 5.0, 41) {
        let q = q_hot(mu)?;
        let (c, s) = oracle::cubic_phase_integrals(mu);
        let (q1, q2) = (table(p, q.q1), table(p, q.q2));
        let m = if (q1 - c).abs() >= (q2 - s).abs() {
            Measurement::diff(format!("mu={mu};component=q1"), q1, c)
        } else {
            Measurement::diff(format!("mu={mu};component=q2"), q2, s)
        };
        worst.offer(m);
    }
    Ok(worst.finish("").into_iter().collect())
}

fn special_oracle(
    p: &PlasmaParams,
    f: fn(f64) -> Result<(f64, f64)>,
    reference: fn(f64) -> (f64, f64),
) -> Result<Vec<Measurement>> {
    let mut worst = Worst::default();
    for mu in grid(-5.0, 5.0, 41) {
        let (v, d) = f(mu)?;
        let (rv, rd) = reference(mu);
        let (v, d) = (table(p, v), table(p, d));
        let m = if (v - rv).abs() >= (d - rd).abs() {
            Measurement::diff(format!("mu={mu};derivative=0"), v, rv)
        } else {
            Measurement::diff(format!("mu={mu};derivative=1"), d, rd)
        };
        worst.offer(m);
    }
    Ok(worst.finish("").into_iter().collect())
}

pub fn airy_oracle(ctx: &CheckCtx<'_>) -> Result<Vec<Measurement>> {
    special_oracle(params(ctx), airy, oracle::airy_rk4)
}

pub fn scorer_oracle(ctx: &CheckCtx<'_>) -> Result<Vec<Measurement>> {
    special_oracle(params(ctx), scorer, oracle::scorer_rk4)
}
