use rgsslab::ode_embedding::{
    direct_solve, fs_residual_r1, r1_sampler, reconstruct_implicit, reconstruct_via_r1, reconstruct_via_r2, Anchor,
    CauchyData, PolyRhs,
};
use rgsslab::{IntegratorConfig, NumDiffConfig, Point, Result, RgsError};

use super::{coords, CheckCtx, Measurement, Worst};
use crate::probes::ProbeRng;
use crate::scenario::{ModelParams, OdeParams};

fn params<'a>(ctx: &'a CheckCtx<'_>) -> &'a OdeParams {
    match ctx.params {
        ModelParams::OdeEmbedding(p) => p,
        _ => unreachable!("registry kind mismatch"),
    }
}

#[derive(Debug, Clone, Copy)]
struct Probe {
    t: f64,
    data: CauchyData,
}

impl Probe {
    fn coords(&self) -> String {
        coords(&[("t", self.t), ("tau", self.data.tau), ("x", self.data.x)])
    }
}

/// Probes shared by the a-only checks: the same stream for every check so
/// that they are evaluated on identical points. 1 − a x (t − τ) ≥ margin keeps
/// the probes away from blow-up; 1 + a x τ ≥ margin keeps the R1 pull-back
/// to a = 0 finite.
fn probes(ctx: &CheckCtx<'_>, p: &OdeParams) -> Vec<Probe> {
    let mut rng = ProbeRng::new(ctx.seed, "ode-embedding/probes");
    let mut out = Vec::with_capacity(p.probes);
    while out.len() < p.probes {
        let tau = rng.uniform(-1.0, 1.0);
        let t = rng.uniform(-1.0, 1.0);
        let x = rng.sign() * rng.uniform(0.05, 1.5);
        if 1.0 - p.a * x * (t - tau) >= p.margin && 1.0 + p.a * x * tau >= p.margin {
            out.push(Probe { t, data: CauchyData::new(tau, x) });
        }
    }
    out
}

fn oracle(p: &OdeParams, pr: &Probe, cfg: &IntegratorConfig) -> Result<f64> {
    direct_solve(&PolyRhs::new(p.a, 0.0, 0.0), &pr.data, pr.t, cfg)
}

pub fn r1_reconstruction(ctx: &CheckCtx<'_>) -> Result<Vec<Measurement>> {
    let p = params(ctx);
    let cfg = IntegratorConfig::default();
    let mut worst = Worst::default();
    for pr in probes(ctx, p) {
        let u = reconstruct_via_r1(pr.t, &pr.data, p.a, &cfg)?;
        worst.offer(Measurement::rel(pr.coords(), u, oracle(p, &pr, &cfg)?));
    }
    Ok(worst.finish(&format!("a={};", p.a)).into_iter().collect())
}

pub fn implicit_reconstruction(ctx: &CheckCtx<'_>) -> Result<Vec<Measurement>> {
    let p = params(ctx);
    let cfg = IntegratorConfig::default();
    let rhs = PolyRhs::new(p.a, 0.0, 0.0);
    let mut worst = Worst::default();
    for pr in probes(ctx, p) {
        // Anchor on the side of x so that no zero of f lies in between.
        let u = reconstruct_implicit(&rhs, &pr.data, pr.t, Anchor { u0: pr.data.x })?;
        worst.offer(Measurement::rel(pr.coords(), u, oracle(p, &pr, &cfg)?));
    }
    Ok(worst.finish(&format!("a={};", p.a)).into_iter().collect())
}

pub fn fs_r1(ctx: &CheckCtx<'_>) -> Result<Vec<Measurement>> {
    let p = params(ctx);
    let sol = r1_sampler(IntegratorConfig::with_tolerances(1e-13, 1e-15), NumDiffConfig::default());
    let mut worst = Worst::default();
    for pr in probes(ctx, p) {
        let pt = Point::from_pairs(&[("t", pr.t), ("tau", pr.data.tau), ("x", pr.data.x), ("a", p.a)]);
        worst.offer(Measurement::zero(pr.coords(), fs_residual_r1(&sol, &pt)?));
    }
    Ok(worst.finish(&format!("a={};", p.a)).into_iter().collect())
}

/// R2 acts at a = 1; probes come from its admissible region x τ < 0, t τ > 0.
pub fn r2_continuation(ctx: &CheckCtx<'_>) -> Result<Vec<Measurement>> {
    let p = params(ctx);
    let cfg = IntegratorConfig::default();
    let mut out = Vec::new();
    for &b in &p.b_values {
        let mut rng = ctx.rng(&format!("b={b}"));
        let mut worst = Worst::default();
        let mut tries = 0;
        while worst.count < p.r2_probes {
            tries += 1;
            if tries > 100 * p.r2_probes {
                return Err(RgsError::Precondition("no admissible R2 probes".into()));
            }
            let tau = rng.uniform(-1.2, -0.6);
            let t = rng.uniform(tau + 0.05, -0.05);
            let x = rng.uniform(0.2, 0.8);
            let data = CauchyData::new(tau, x);
            if 1.0 - x * (t - tau) < p.margin {
                continue;
            }
            let Ok(o) = direct_solve(&PolyRhs::new(1.0, b, 0.0), &data, t, &cfg) else {
                continue;
            };
            // Same blow-up margin as the a-only probes, where x/u = 1 − x (t − τ).
            if x / o < p.margin {
                continue;
            }
            let u = reconstruct_via_r2(t, &data, b, &cfg)?;
            worst.offer(Measurement::diff(coords(&[("t", t), ("tau", tau), ("x", x)]), u, o));
        }
        out.extend(worst.finish(&format!("a=1;b={b};")));
    }
    Ok(out)
}
