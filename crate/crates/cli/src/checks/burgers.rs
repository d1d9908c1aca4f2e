use rgsslab::burgers::{
    exact_sampler, exact_solution, fd_oracle as solve_fd, fs_residual_r5, fs_residual_r6, BurgersProblem, FdGrid, Profile,
    QuadratureConfig, TableProfile,
};
use rgsslab::{NumDiffConfig, Point, Result, RgsError};

use super::{coords, CheckCtx, Measurement, Worst};
use crate::scenario::{BurgersParams, BurgersProfileName, ModelParams};

fn params<'a>(ctx: &'a CheckCtx<'_>) -> &'a BurgersParams {
    match ctx.params {
        ModelParams::Burgers(p) => p,
        _ => unreachable!("registry kind mismatch"),
    }
}

fn problem(p: &BurgersParams) -> Result<BurgersProblem> {
    let profile = match p.profile {
        BurgersProfileName::Gaussian => Profile::gaussian(p.amplitude, p.width),
        BurgersProfileName::Constant => Profile::Constant(p.constant),
        BurgersProfileName::Table => {
            let path = p.table.as_ref().ok_or_else(|| RgsError::InvalidConfig("table path missing".into()))?;
            Profile::Table(TableProfile::from_file(path)?)
        }
    };
    BurgersProblem::new(p.a, p.nu, profile)
}

fn quad(p: &BurgersParams) -> QuadratureConfig {
    QuadratureConfig { nodes: p.nodes, ..QuadratureConfig::default() }
}

fn fd_grid(p: &BurgersParams, t_end: f64, dx: f64) -> FdGrid {
    // 90% of the explicit stability bound
    let dt = 0.9 * 0.4 * dx * dx / (2.0 * p.nu);
    FdGrid::new(-p.half_span, p.half_span, t_end, dx, dt)
}

const FD_X: [f64; 13] = [-3.0, -2.5, -2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0];

/// Error relative to max |u| over the sampled grid, one row per time level.
pub fn fd_oracle(ctx: &CheckCtx<'_>) -> Result<Vec<Measurement>> {
    let p = params(ctx);
    let prob = problem(p)?;
    let q = quad(p);
    let fd = solve_fd(&prob, &fd_grid(p, p.t_max, p.fd_dx))?;
    let times: Vec<f64> = [0.25, 0.5, 0.75, 1.0].iter().map(|f| f * p.t_max).collect();
    let mut exact = Vec::new();
    for &t in &times {
        for &x in &FD_X {
            exact.push(exact_solution(t, x, &prob, &q)?);
        }
    }
    let scale = exact.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    let mut out = Vec::new();
    for (i, &t) in times.iter().enumerate() {
        let mut worst = Worst::default();
        for (j, &x) in FD_X.iter().enumerate() {
            let e = exact[i * FD_X.len() + j];
            let f = fd.sample(t, x)?;
            worst.offer(Measurement::new(coords(&[("t", t), ("x", x)]), e, f, (e - f) / scale));
        }
        out.extend(worst.finish(&format!("dx={};scale={scale};", p.fd_dx)));
    }
    Ok(out)
}

pub fn fd_refinement(ctx: &CheckCtx<'_>) -> Result<Vec<Measurement>> {
    let p = params(ctx);
    let prob = problem(p)?;
    let q = quad(p);
    let t = p.t_max;
    let xs = [-1.0, -0.5, 0.0, 0.5, 1.0];
    let err = |dx: f64| -> Result<f64> {
        let fd = solve_fd(&prob, &fd_grid(p, t, dx))?;
        let mut m = 0.0f64;
        for &x in &xs {
            m = m.max((fd.sample(t, x)? - exact_solution(t, x, &prob, &q)?).abs());
        }
        Ok(m)
    };
    let (e1, e2) = (err(p.fd_dx)?, err(0.5 * p.fd_dx)?);
    let order = (e1 / e2).log2();
    let probe = format!("t={t};dx={};err_dx={e1:e};err_dx/2={e2:e}", p.fd_dx);
    Ok(vec![Measurement::diff(probe, order, 2.0)])
}

/// 5 × 5 (t, x) grid at a/2 and a.
fn fs_grid(p: &BurgersParams) -> Vec<(f64, f64, f64)> {
    let mut g = Vec::with_capacity(50);
    for a in [0.5 * p.a, p.a] {
        for i in 1..=5 {
            for x in [-1.0, -0.5, 0.0, 0.5, 1.0] {
                g.push((0.2 * i as f64 * p.t_max, x, a));
            }
        }
    }
    g
}

fn fs_check(ctx: &CheckCtx<'_>, r6: bool) -> Result<Vec<Measurement>> {
    let p = params(ctx);
    let prob = problem(p)?;
    let q = quad(p);
    let sol = exact_sampler(&prob, q, NumDiffConfig::default());
    let mut out = Vec::with_capacity(50);
    for (t, x, a) in fs_grid(p) {
        let pt = Point::from_pairs(&[("t", t), ("x", x), ("a", a), ("nu", p.nu)]);
        let r = if r6 { fs_residual_r6(&sol, &pt, &prob, &q)? } else { fs_residual_r5(&sol, &pt, &prob, &q)? };
        out.push(Measurement::zero(coords(&[("t", t), ("x", x), ("a", a)]), r));
    }
    Ok(out)
}

pub fn fs_r5(ctx: &CheckCtx<'_>) -> Result<Vec<Measurement>> {
    fs_check(ctx, false)
}

pub fn fs_r6(ctx: &CheckCtx<'_>) -> Result<Vec<Measurement>> {
    fs_check(ctx, true)
}

pub fn constant_profile(ctx: &CheckCtx<'_>) -> Result<Vec<Measurement>> {
    let p = params(ctx);
    let prob = BurgersProblem::new(p.a, p.nu, Profile::Constant(p.constant))?;
    let q = quad(p);
    let mut out = Vec::new();
    for (t, x) in [(0.1, 0.0), (0.5, 1.5), (1.0, -2.0), (5.0, 3.0)] {
        let u = exact_solution(t, x, &prob, &q)?;
        out.push(Measurement::diff(coords(&[("t", t), ("x", x), ("c", p.constant)]), u, p.constant));
    }
    Ok(out)
}
