//! Explicit finite-difference oracle for u_t = a u_x² + ν u_xx.

use serde::{Deserialize, Serialize};

use super::BurgersProblem;
use crate::error::{Result, RgsError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FdGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub t_end: f64,
    pub dx: f64,
    pub dt: f64,
    /// Interval between stored time levels (rounded to a whole number of steps).
    pub snapshot_dt: f64,
}

impl FdGrid {
    pub fn new(x_min: f64, x_max: f64, t_end: f64, dx: f64, dt: f64) -> Self {
        Self { x_min, x_max, t_end, dx, dt, snapshot_dt: 0.01 }
    }
}

/// Stored time levels of the explicit scheme with bilinear interpolation.
#[derive(Debug, Clone)]
pub struct FdSolution {
    x_min: f64,
    dx: f64,
    nx: usize,
    snap_dt: f64,
    snaps: Vec<Vec<f64>>,
    pub steps: usize,
    pub dt: f64,
}

/// Solves the problem on `grid` with Dirichlet data u = f at both ends.
pub fn fd_oracle(prob: &BurgersProblem, grid: &FdGrid) -> Result<FdSolution> {
    prob.validate()?;
    let FdGrid { x_min, x_max, t_end, dx, dt, snapshot_dt } = *grid;
    if !(x_max > x_min && dx > 0.0 && dt > 0.0 && t_end >= 0.0 && snapshot_dt > 0.0) {
        return Err(RgsError::InvalidConfig("invalid finite-difference grid".into()));
    }
    let limit = 0.4 * dx * dx / (2.0 * prob.nu);
    if dt > limit {
        return Err(RgsError::StabilityViolation { dt, limit });
    }
    // Boundary influence: the profile must be flat at both ends and the domain
    // must hold the diffusive spread of the data.
    let spread = 8.0 * (2.0 * prob.nu * t_end.max(0.0)).sqrt();
    let (_, dl, _) = prob.profile.eval3(x_min);
    let (_, dr, _) = prob.profile.eval3(x_max);
    if dl.abs().max(dr.abs()) > 1e-10 || x_max - x_min < 2.0 * spread {
        return Err(RgsError::DomainTooNarrow(format!(
            "[{x_min}, {x_max}] with boundary slopes ({dl:e}, {dr:e}) and spread {spread}"
        )));
    }
    let nx = ((x_max - x_min) / dx).round() as usize + 1;
    let dx = (x_max - x_min) / (nx - 1) as f64;
    let per_snap = (snapshot_dt / dt).ceil().max(1.0) as usize;
    let dt = snapshot_dt / per_snap as f64;
    let n_snaps = (t_end / snapshot_dt).ceil() as usize;
    let snap_dt = if n_snaps == 0 { snapshot_dt } else { t_end / n_snaps as f64 };
    let dt = if n_snaps == 0 { dt } else { snap_dt / per_snap as f64 };

    let mut u: Vec<f64> = (0..nx).map(|i| prob.profile.value(x_min + i as f64 * dx)).collect();
    let mut next = u.clone();
    let mut snaps = Vec::with_capacity(n_snaps + 1);
    snaps.push(u.clone());
    let (cx, cxx) = (1.0 / (2.0 * dx), prob.nu / (dx * dx));
    for _ in 0..n_snaps {
        for _ in 0..per_snap {
            for i in 1..nx - 1 {
                let ux = (u[i + 1] - u[i - 1]) * cx;
                next[i] = u[i] + dt * (prob.a * ux * ux + cxx * (u[i + 1] - 2.0 * u[i] + u[i - 1]));
            }
            std::mem::swap(&mut u, &mut next);
        }
        if u.iter().any(|v| !v.is_finite()) {
            return Err(RgsError::StabilityViolation { dt, limit });
        }
        snaps.push(u.clone());
    }
    Ok(FdSolution { x_min, dx, nx, snap_dt, snaps, steps: n_snaps * per_snap, dt })
}

impl FdSolution {
    pub fn t_end(&self) -> f64 {
        (self.snaps.len() - 1) as f64 * self.snap_dt
    }

    /// Bilinear interpolation in (t, x).
    pub fn sample(&self, t: f64, x: f64) -> Result<f64> {
        let x_max = self.x_min + (self.nx - 1) as f64 * self.dx;
        if !(x >= self.x_min && x <= x_max && t >= 0.0 && t <= self.t_end() * (1.0 + 1e-12)) {
            return Err(RgsError::Precondition(format!("({t}, {x}) outside the computed grid")));
        }
        let ft = (t / self.snap_dt).min((self.snaps.len() - 1) as f64);
        let k = (ft.floor() as usize).min(self.snaps.len().saturating_sub(2));
        let wt = if self.snaps.len() == 1 { 0.0 } else { ft - k as f64 };
        let fx = (x - self.x_min) / self.dx;
        let i = (fx.floor() as usize).min(self.nx - 2);
        let wx = fx - i as f64;
        let lerp = |s: &Vec<f64>| s[i] * (1.0 - wx) + s[i + 1] * wx;
        let a = lerp(&self.snaps[k]);
        if wt == 0.0 {
            return Ok(a);
        }
        Ok(a * (1.0 - wt) + lerp(&self.snaps[k + 1]) * wt)
    }
}
