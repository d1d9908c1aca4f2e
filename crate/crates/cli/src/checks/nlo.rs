use rgsslab::nlo::{
    boundary_point, boundary_to_hodograph, default_probes, direct_nlo_solver, fs_residual, order_check, r7_coordinates,
    r7_scale, r9_coefficients, refinement_check, series_point, AlphaGrids, ApproxKind, BeamBoundary, BeamProfile,
    DirectSpec, Geometry, HodographSpec, R9Surface, SFunction, AXIS_SERIES_RADIUS,
};
use rgsslab::{IntegratorConfig, Result};

use super::{coords, CheckCtx, Measurement, Worst};
use crate::scenario::{BeamName, ModelParams, NloCylParams, NloFlatParams};

const SERIES_TERMS: usize = 40;

fn flat<'a>(ctx: &'a CheckCtx<'_>) -> &'a NloFlatParams {
    match ctx.params {
        ModelParams::NloFlat(p) => p,
        _ => unreachable!("registry kind mismatch"),
    }
}

fn cyl<'a>(ctx: &'a CheckCtx<'_>) -> &'a NloCylParams {
    match ctx.params {
        ModelParams::NloCyl(p) => p,
        _ => unreachable!("registry kind mismatch"),
    }
}

fn beam(name: BeamName) -> BeamProfile {
    match name {
        BeamName::Sech2 => BeamProfile::Sech2,
        BeamName::Gaussian => BeamProfile::Gaussian,
    }
}

/// Coarse grid: the series method evaluates off-node, so the window is what matters.
fn spec() -> HodographSpec {
    HodographSpec { n_count: 11, w_count: 6, ..HodographSpec::default() }
}

/// max |R7 coordinate| / largest term, per probe.
fn r7_relative(profile: &BeamProfile, alpha: f64) -> Result<Vec<(f64, f64, f64)>> {
    let h = boundary_to_hodograph(profile)?;
    default_probes()
        .into_iter()
        .map(|(w, n)| {
            let s = series_point(&h, alpha, w, n, SERIES_TERMS)?;
            let r = r7_coordinates(&s, w, n, alpha);
            Ok((w, n, r.max_abs() / r7_scale(&s, w, n, alpha)))
        })
        .collect()
}

pub fn r7_exact(ctx: &CheckCtx<'_>) -> Result<Vec<Measurement>> {
    let p = flat(ctx);
    let profile = beam(p.profile);
    Ok(r7_relative(&profile, p.alpha)?
        .into_iter()
        .map(|(w, n, r)| Measurement::zero(format!("profile={};{}", profile.name(), coords(&[("alpha", p.alpha), ("w", w), ("n", n)])), r))
        .collect())
}

/// Residual = decades by which the Gaussian violation falls short of O(1).
pub fn r7_control(ctx: &CheckCtx<'_>) -> Result<Vec<Measurement>> {
    let p = flat(ctx);
    let rel = r7_relative(&BeamProfile::Gaussian, p.alpha)?;
    let worst = rel.iter().fold(0.0f64, |m, r| m.max(r.2));
    let short = (1.0 / worst).log10().max(0.0);
    let probe = format!("profile=gaussian;alpha={};max over {} probes", p.alpha, rel.len());
    Ok(vec![Measurement::new(probe, worst, 1.0, short)])
}

/// Residual = max(0, 2 − slope): shortfall below second order.
fn order(ctx: &CheckCtx<'_>, kind: ApproxKind) -> Result<Vec<Measurement>> {
    let p = flat(ctx);
    let r = order_check(kind, &p.order_alphas, &default_probes(), &spec())?;
    let list = |v: &[f64]| v.iter().map(|x| format!("{x:e}")).collect::<Vec<_>>().join(" ");
    let probe = format!("kind={};alphas={};residuals={}", kind.name(), list(&r.alphas), list(&r.residuals));
    Ok(vec![Measurement::new(probe, r.slope, 2.0, (2.0 - r.slope).max(0.0))])
}

pub fn order_gauss_a(ctx: &CheckCtx<'_>) -> Result<Vec<Measurement>> {
    order(ctx, ApproxKind::GaussA)
}

pub fn order_gauss_b(ctx: &CheckCtx<'_>) -> Result<Vec<Measurement>> {
    order(ctx, ApproxKind::GaussB)
}

pub fn soliton_a_floor(ctx: &CheckCtx<'_>) -> Result<Vec<Measurement>> {
    let p = flat(ctx);
    let probes = default_probes();
    p.order_alphas
        .iter()
        .map(|&a| {
            let grids = AlphaGrids::solve(&BeamProfile::Sech2, a, &spec())?;
            let r = fs_residual(ApproxKind::SolitonA, &grids, &probes)?;
            Ok(Measurement::zero(format!("kind=soliton_a;alpha={a};max over {} probes", probes.len()), r))
        })
        .collect()
}

fn boundary(p: &NloCylParams, alpha: f64, beta: f64) -> Result<BeamBoundary> {
    BeamBoundary::new(beam(p.profile), p.t_curv, alpha, beta, Geometry::Cylindrical)
}

/// Residual = max(|Δv|, |Δn|); β is forced to 0 because the direct solver has no diffraction.
pub fn r9_vs_direct(ctx: &CheckCtx<'_>) -> Result<Vec<Measurement>> {
    let p = cyl(ctx);
    let b = boundary(p, p.alpha, 0.0)?;
    let surface = R9Surface::new(&b, IntegratorConfig::default())?;
    let t_end = p.t_probes.iter().cloned().fold(0.0, f64::max);
    let direct = direct_nlo_solver(&b, t_end, DirectSpec::default())?;
    let mut out = Vec::new();
    for &t in &p.t_probes {
        for &x in &p.x_probes {
            let (v, n) = surface.eval(t, x)?;
            let (vd, nd) = direct.eval(t, x)?;
            let probe = format!("{};dn={:e}", coords(&[("beta", 0.0), ("t", t), ("x", x)]), n - nd);
            out.push(Measurement::new(probe, v, vd, (v - vd).abs().max((n - nd).abs())));
        }
    }
    Ok(out)
}

/// α = β = 0 against v = −x/(T − t), n = N(x₀) (T/(T − t))², x₀ = xT/(T − t).
pub fn r9_focusing_exact(ctx: &CheckCtx<'_>) -> Result<Vec<Measurement>> {
    let p = cyl(ctx);
    let b = boundary(p, 0.0, 0.0)?;
    let surface = R9Surface::new(&b, IntegratorConfig::default())?;
    let tt = p.t_curv;
    let mut out = Vec::new();
    for &t in &p.t_probes {
        for &x in &p.x_probes {
            let (v, n) = surface.eval(t, x)?;
            let x0 = x * tt / (tt - t);
            let (ve, ne) = (-x / (tt - t), b.profile.value(x0) * (tt / (tt - t)).powi(2));
            let probe = format!("{};dn={:e}", coords(&[("alpha", 0.0), ("t", t), ("x", x)]), n - ne);
            out.push(Measurement::new(probe, v, ve, (v - ve).abs().max((n - ne).abs())));
        }
    }
    Ok(out)
}

pub fn r9_transversality(ctx: &CheckCtx<'_>) -> Result<Vec<Measurement>> {
    let p = cyl(ctx);
    let b = boundary(p, p.alpha, p.beta)?;
    let s = SFunction::new(&b)?;
    let mut out = Vec::new();
    for &x0 in p.x_probes.iter().chain(&[0.1, 2.0]) {
        let c = r9_coefficients(&b, &s, boundary_point(&b, x0))?;
        out.push(Measurement::diff(coords(&[("t", 0.0), ("x", x0), ("beta", p.beta)]), c[0], 1.0));
    }
    Ok(out)
}

/// Observed order of the central-difference FS residual at h, h/2, h/4.
pub fn r9_refinement(ctx: &CheckCtx<'_>) -> Result<Vec<Measurement>> {
    let p = cyl(ctx);
    let b = boundary(p, p.alpha, p.beta)?;
    // Third differences at h/4 amplify surface noise; integrate tightly.
    let surface = R9Surface::new(&b, IntegratorConfig::with_tolerances(1e-13, 1e-15))?;
    let h = 0.02;
    let mut out = Vec::new();
    for (t, x) in [(0.5, 0.5), (0.5, 1.0), (1.0, 0.7)] {
        let r = refinement_check(&surface, t, x, h)?;
        let probe = format!(
            "{};residuals={:e} {:e} {:e}",
            coords(&[("beta", p.beta), ("t", t), ("x", x), ("h", h)]),
            r.residuals[0],
            r.residuals[1],
            r.residuals[2]
        );
        out.push(Measurement::diff(probe, r.order, 2.0));
    }
    Ok(out)
}

pub fn axis_series(ctx: &CheckCtx<'_>) -> Result<Vec<Measurement>> {
    let p = cyl(ctx);
    // The diffraction term needs β > 0 to be exercised.
    let beta = if p.beta > 0.0 { p.beta } else { 1.0 };
    let b = boundary(p, p.alpha, beta)?;
    let s = SFunction::new(&b)?;
    let mut out = Vec::new();
    for f in [1.01, 1.5, 2.0] {
        let chi = f * AXIS_SERIES_RADIUS;
        let d = s.diffraction_direct(chi)?;
        let c = s.diffraction_series(chi)?;
        let mut worst = Worst::default();
        for k in 0..3 {
            worst.offer(Measurement::new(format!("chi={chi};derivative={k}"), c[k], d[k], (c[k] - d[k]) / (1.0 + d[k].abs())));
        }
        out.extend(worst.finish(&format!("beta={beta};")));
    }
    Ok(out)
}
