use rgsslab::rgflow::{effective_coupling, functional_equation_residual, BetaFunction1, EffectiveCoupling};
use rgsslab::vfield::compose_residual;
use rgsslab::{IntegratorConfig, Point, Result, RgsError};

use super::{coords, CheckCtx, Measurement, Worst};
use crate::scenario::{BetaName, ModelParams, RgflowParams};

fn params<'a>(ctx: &'a CheckCtx<'_>) -> &'a RgflowParams {
    match ctx.params {
        ModelParams::Rgflow(p) => p,
        _ => unreachable!("registry kind mismatch"),
    }
}

fn beta(name: BetaName, k: f64) -> BetaFunction1 {
    match name {
        BetaName::Linear => BetaFunction1::linear(k),
        BetaName::Square => BetaFunction1::polynomial(vec![0.0, 0.0, 1.0]),
        BetaName::SquareCubic => BetaFunction1::polynomial(vec![0.0, 0.0, 1.0, 0.3]),
    }
}

/// Draws until `n` samples succeed; flows that blow up are not "safe" and are
/// redrawn, up to a cap.
fn sample_safe<F>(n: usize, mut draw: F) -> Result<(Worst, usize)>
where
    F: FnMut() -> Option<Measurement>,
{
    let mut worst = Worst::default();
    let mut rejected = 0;
    while worst.count < n {
        match draw() {
            Some(m) => worst.offer(m),
            None => {
                rejected += 1;
                if rejected > 10 * n {
                    return Err(RgsError::Precondition(format!("too many unsafe samples ({rejected})")));
                }
            }
        }
    }
    Ok((worst, rejected))
}

pub fn group_law(ctx: &CheckCtx<'_>) -> Result<Vec<Measurement>> {
    let p = params(ctx);
    let cfg = IntegratorConfig::default();
    let mut out = Vec::new();
    for name in p.beta.to_vec() {
        let field = beta(name, p.k).field();
        let mut rng = ctx.rng(name.as_str());
        let (worst, rejected) = sample_safe(p.samples, || {
            let g = rng.uniform(-p.g_max, p.g_max);
            let l1 = rng.uniform(-p.l_max, p.l_max);
            let l2 = rng.uniform(-p.l_max, p.l_max);
            let start = Point::new().with("g", g);
            let r = compose_residual(&field, &start, l1, l2, &cfg).ok()?;
            // Tolerance scale: the state stays O(1) on safe samples.
            Some(Measurement::zero(coords(&[("g", g), ("l1", l1), ("l2", l2)]), r))
        })?;
        out.extend(worst.finish(&format!("beta={};rejected={rejected};", name.as_str())));
    }
    Ok(out)
}

pub fn automodel(ctx: &CheckCtx<'_>) -> Result<Vec<Measurement>> {
    let p = params(ctx);
    let cfg = IntegratorConfig::default();
    let b = BetaFunction1::linear(p.k);
    let mut rng = ctx.rng("g");
    let mut worst = Worst::default();
    let n = p.automodel_points;
    for i in 0..n {
        let x = 10f64.powf(-1.0 + 2.0 * i as f64 / (n - 1) as f64);
        let g = rng.sign() * rng.uniform(0.05, p.g_max.max(0.05));
        let v = effective_coupling(&b, x, g, &cfg)?;
        worst.offer(Measurement::rel(coords(&[("x", x), ("g", g)]), v, g * x.powf(p.k)));
    }
    Ok(worst.finish(&format!("k={};", p.k)).into_iter().collect())
}

pub fn functional_equation(ctx: &CheckCtx<'_>) -> Result<Vec<Measurement>> {
    let p = params(ctx);
    let mut out = Vec::new();
    for name in p.beta.to_vec() {
        let ec = EffectiveCoupling::from_beta(beta(name, p.k), IntegratorConfig::default());
        let mut rng = ctx.rng(name.as_str());
        let n = p.samples.min(200);
        let (worst, rejected) = sample_safe(n, || {
            let x = 2f64.powf(rng.uniform(-1.0, 1.0));
            let a = 2f64.powf(rng.uniform(-1.0, 1.0));
            let g = rng.uniform(-p.g_max, p.g_max);
            let r = functional_equation_residual(&ec, x, a, g).ok()?;
            Some(Measurement::zero(coords(&[("x", x), ("a", a), ("g", g)]), r))
        })?;
        out.extend(worst.finish(&format!("beta={};rejected={rejected};", name.as_str())));
    }
    Ok(out)
}
