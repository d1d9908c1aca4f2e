//! Adaptive Dormand–Prince 5(4) integration with blow-up detection, plus a
//! fixed-step classical RK4 kept as an independent oracle.

use serde::{Deserialize, Serialize};

use crate::error::{Result, RgsError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct IntegratorConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_step: f64,
    pub max_steps: usize,
    /// Any coordinate exceeding this magnitude aborts with `BlowUp`.
    pub blowup_bound: f64,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-11,
            abs_tol: 1e-13,
            max_step: f64::INFINITY,
            max_steps: 200_000,
            blowup_bound: 1e12,
        }
    }
}

impl IntegratorConfig {
    pub fn with_tolerances(rel_tol: f64, abs_tol: f64) -> Self {
        Self { rel_tol, abs_tol, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(RgsError::InvalidConfig("rel_tol and abs_tol must be positive".into()));
        }
        if self.max_steps == 0 {
            return Err(RgsError::InvalidConfig("max_steps must be at least 1".into()));
        }
        if !(self.max_step > 0.0) {
            return Err(RgsError::InvalidConfig("max_step must be positive".into()));
        }
        Ok(())
    }

    /// Tolerance scale used by the group-law contract.
    pub fn tolerance_for(&self, state_norm: f64) -> f64 {
        self.rel_tol * state_norm + self.abs_tol
    }
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn all_finite(y: &[f64]) -> bool {
    y.iter().all(|v| v.is_finite())
}

/// Integrates `y' = f(t, y)` from `t0` to `t1` with DOPRI5.
///
/// `f` writes the derivative into its third argument. Non-finite derivatives
/// are treated as a rejected step; persistent rejection ends in `BlowUp`.
pub fn dopri5<F>(mut f: F, t0: f64, y0: &[f64], t1: f64, cfg: &IntegratorConfig) -> Result<Vec<f64>>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    cfg.validate()?;
    let n = y0.len();
    let mut y = y0.to_vec();
    let span = t1 - t0;
    if span == 0.0 || n == 0 {
        return Ok(y);
    }
    let dir = span.signum();
    let min_step = 1e-14 * span.abs();

    let mut k1 = vec![0.0; n];
    let mut k2 = vec![0.0; n];
    let mut k3 = vec![0.0; n];
    let mut k4 = vec![0.0; n];
    let mut k5 = vec![0.0; n];
    let mut k6 = vec![0.0; n];
    let mut k7 = vec![0.0; n];
    let mut tmp = vec![0.0; n];
    let mut ynew = vec![0.0; n];

    f(t0, &y, &mut k1);
    if !all_finite(&k1) {
        return Err(RgsError::BlowUp { reached: t0 });
    }

    // Initial step from the derivative scale.
    let mut h = {
        let sc: Vec<f64> = y.iter().map(|v| cfg.abs_tol + cfg.rel_tol * v.abs()).collect();
        let d0 = (y.iter().zip(&sc).map(|(v, s)| (v / s).powi(2)).sum::<f64>() / n as f64).sqrt();
        let d1 = (k1.iter().zip(&sc).map(|(v, s)| (v / s).powi(2)).sum::<f64>() / n as f64).sqrt();
        let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
        h0.min(span.abs()).min(cfg.max_step).max(min_step * 10.0)
    };

    let mut t = t0;
    let mut steps = 0usize;
    let mut last_rejected = false;
    loop {
        let remaining = t1 - t;
        if remaining * dir <= 0.0 {
            break;
        }
        if steps >= cfg.max_steps {
            return Err(RgsError::StepLimit { steps, reached: t });
        }
        steps += 1;
        let mut last = false;
        if h >= remaining.abs() {
            h = remaining.abs();
            last = true;
        }
        let hs = h * dir;

        for i in 0..n {
            tmp[i] = y[i] + hs * A21 * k1[i];
        }
        f(t + C2 * hs, &tmp, &mut k2);
        for i in 0..n {
            tmp[i] = y[i] + hs * (A31 * k1[i] + A32 * k2[i]);
        }
        f(t + C3 * hs, &tmp, &mut k3);
        for i in 0..n {
            tmp[i] = y[i] + hs * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
        }
        f(t + C4 * hs, &tmp, &mut k4);
        for i in 0..n {
            tmp[i] = y[i] + hs * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
        }
        f(t + C5 * hs, &tmp, &mut k5);
        for i in 0..n {
            tmp[i] = y[i] + hs * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
        }
        f(t + hs, &tmp, &mut k6);
        for i in 0..n {
            ynew[i] = y[i] + hs * (A71 * k1[i] + A73 * k3[i] + A74 * k4[i] + A75 * k5[i] + A76 * k6[i]);
        }
        f(t + hs, &ynew, &mut k7);

        let finite = all_finite(&ynew) && all_finite(&k7);
        let err = if finite {
            let mut acc = 0.0;
            for i in 0..n {
                let e = hs * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
                let sc = cfg.abs_tol + cfg.rel_tol * y[i].abs().max(ynew[i].abs());
                acc += (e / sc).powi(2);
            }
            (acc / n as f64).sqrt()
        } else {
            f64::INFINITY
        };

        if err <= 1.0 {
            t = if last { t1 } else { t + hs };
            std::mem::swap(&mut y, &mut ynew);
            std::mem::swap(&mut k1, &mut k7);
            if y.iter().any(|v| v.abs() > cfg.blowup_bound) {
                return Err(RgsError::BlowUp { reached: t });
            }
            let fac = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            let fac = if last_rejected { fac.min(1.0) } else { fac };
            h = (h * fac).min(cfg.max_step);
            last_rejected = false;
            if last {
                break;
            }
        } else {
            let fac = if err.is_finite() { (0.9 * err.powf(-0.2)).clamp(0.1, 0.9) } else { 0.25 };
            h *= fac;
            last_rejected = true;
        }
        if h < min_step {
            return Err(RgsError::BlowUp { reached: t });
        }
    }
    Ok(y)
}

/// Classical fixed-step RK4, the oracle for `dopri5`.
pub fn rk4_fixed<F>(mut f: F, t0: f64, y0: &[f64], t1: f64, steps: usize) -> Vec<f64>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let n = y0.len();
    let mut y = y0.to_vec();
    if steps == 0 || t1 == t0 {
        return y;
    }
    let h = (t1 - t0) / steps as f64;
    let (mut k1, mut k2, mut k3, mut k4) = (vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]);
    let mut tmp = vec![0.0; n];
    for s in 0..steps {
        let t = t0 + s as f64 * h;
        f(t, &y, &mut k1);
        for i in 0..n {
            tmp[i] = y[i] + 0.5 * h * k1[i];
        }
        f(t + 0.5 * h, &tmp, &mut k2);
        for i in 0..n {
            tmp[i] = y[i] + 0.5 * h * k2[i];
        }
        f(t + 0.5 * h, &tmp, &mut k3);
        for i in 0..n {
            tmp[i] = y[i] + h * k3[i];
        }
        f(t + h, &tmp, &mut k4);
        for i in 0..n {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    y
}
