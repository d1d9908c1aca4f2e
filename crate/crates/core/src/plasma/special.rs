//! Airy Ai and Scorer Gi with first derivatives on the real window [−20, 20].

use crate::error::{Result, RgsError};
use crate::numerics::{dopri5, CompositeGauss, IntegratorConfig};

pub const WINDOW: f64 = 20.0;

/// Ai(0) = 1/(3^{2/3} Γ(2/3)).
pub const AI0: f64 = 0.355_028_053_887_817_24;
/// −Ai′(0) = 1/(3^{1/3} Γ(1/3)).
pub const AIP0_NEG: f64 = 0.258_819_403_792_806_8;
/// Gi(0) = 1/(3^{7/6} Γ(2/3)).
pub const GI0: f64 = 0.204_975_542_482_000_245;
/// Gi′(0) = 1/(3^{5/6} Γ(1/3)).
pub const GIP0: f64 = 0.149_429_452_451_275_45;

const SERIES_LO: f64 = -4.0;
const SERIES_HI: f64 = 2.0;

fn check_window(mu: f64) -> Result<()> {
    if !mu.is_finite() || mu.abs() > WINDOW {
        return Err(RgsError::AccuracyWindowExceeded { x: mu });
    }
    Ok(())
}

/// (Ai(μ), Ai′(μ)).
pub fn airy(mu: f64) -> Result<(f64, f64)> {
    check_window(mu)?;
    if (SERIES_LO..=SERIES_HI).contains(&mu) {
        Ok(airy_maclaurin(mu))
    } else if mu > SERIES_HI {
        Ok(airy_laplace(mu))
    } else {
        let y0 = airy_maclaurin(SERIES_LO);
        ode_to(mu, SERIES_LO, [y0.0, y0.1], 0.0)
    }
}

pub fn airy_ai(mu: f64) -> Result<f64> {
    airy(mu).map(|v| v.0)
}

/// (Gi(μ), Gi′(μ)).
pub fn scorer(mu: f64) -> Result<(f64, f64)> {
    check_window(mu)?;
    if mu >= 0.0 {
        Ok(scorer_contour(mu))
    } else {
        ode_to(mu, 0.0, [GI0, GIP0], -1.0 / std::f64::consts::PI)
    }
}

pub fn scorer_gi(mu: f64) -> Result<f64> {
    scorer(mu).map(|v| v.0)
}

/// Ai = Ai(0)·f − |Ai′(0)|·g with the two entire Maclaurin solutions.
fn airy_maclaurin(z: f64) -> (f64, f64) {
    let z3 = z * z * z;
    let (mut f, mut fp, mut g, mut gp) = (0.0, 0.0, 0.0, 0.0);
    // a_k z^{3k} and b_k z^{3k+1}
    let (mut a, mut b) = (1.0, 1.0);
    let mut zp = 1.0; // z^{3k}
    let mut zm = z * z; // z^{3k−1}, used from k = 1
    for k in 0..80usize {
        let kf = k as f64;
        let ta = a * zp;
        let tb = b * zp * z;
        f += ta;
        g += tb;
        if k > 0 {
            fp += 3.0 * kf * a * zm;
            zm *= z3;
        }
        gp += (3.0 * kf + 1.0) * b * zp;
        if k > 3 && ta.abs().max(tb.abs()) < 1e-18 * (f.abs() + g.abs()).max(1e-300) {
            break;
        }
        a /= (3.0 * kf + 2.0) * (3.0 * kf + 3.0);
        b /= (3.0 * kf + 3.0) * (3.0 * kf + 4.0);
        zp *= z3;
    }
    (AI0 * f - AIP0_NEG * g, AI0 * fp - AIP0_NEG * gp)
}

/// Ai(z) = e^{−ζ}/π ∫₀^∞ e^{−√z s²} cos(s³/3) ds, ζ = (2/3) z^{3/2}; z > 0.
fn airy_laplace(z: f64) -> (f64, f64) {
    let r = z.sqrt();
    let zeta = 2.0 / 3.0 * z * r;
    let s_max = (46.0 / r).sqrt();
    let q = CompositeGauss::new(16);
    let panels = 96;
    let i0 = q.integrate(|s| (-r * s * s).exp() * (s * s * s / 3.0).cos(), 0.0, s_max, panels);
    let i2 = q.integrate(|s| s * s * (-r * s * s).exp() * (s * s * s / 3.0).cos(), 0.0, s_max, panels);
    let pref = (-zeta).exp() / std::f64::consts::PI;
    (pref * i0, -pref * (r * i0 + i2 / (2.0 * r)))
}

/// Gi(z) = (1/π) Im[e^{iπ/6} ∫₀^∞ exp(−s³/3 + z s e^{2iπ/3}) ds], z ≥ 0.
fn scorer_contour(z: f64) -> (f64, f64) {
    use std::f64::consts::PI;
    let w = 3f64.sqrt() / 2.0 * z;
    let s_max = 5.3;
    let q = CompositeGauss::new(16);
    let panels = 64;
    let env = |s: f64| (-s * s * s / 3.0 - 0.5 * z * s).exp();
    let re0 = q.integrate(|s| env(s) * (w * s).cos(), 0.0, s_max, panels);
    let im0 = q.integrate(|s| env(s) * (w * s).sin(), 0.0, s_max, panels);
    let re1 = q.integrate(|s| s * env(s) * (w * s).cos(), 0.0, s_max, panels);
    let im1 = q.integrate(|s| s * env(s) * (w * s).sin(), 0.0, s_max, panels);
    // Im[e^{iθ}(re + i im)] = sin θ re + cos θ im
    let im_rot = |th: f64, re: f64, im: f64| th.sin() * re + th.cos() * im;
    (im_rot(PI / 6.0, re0, im0) / PI, im_rot(5.0 * PI / 6.0, re1, im1) / PI)
}

/// Integrates y″ = μ y + c from (μ0, y0).
fn ode_to(mu: f64, mu0: f64, y0: [f64; 2], c: f64) -> Result<(f64, f64)> {
    let cfg = IntegratorConfig::with_tolerances(1e-13, 1e-15);
    let y = dopri5(
        |m, y, dy| {
            dy[0] = y[1];
            dy[1] = m * y[0] + c;
        },
        mu0,
        &y0,
        mu,
        &cfg,
    )?;
    Ok((y[0], y[1]))
}

/// Independent reference evaluations used by tests and verification suites.
pub mod oracle {
    use super::{AI0, AIP0_NEG, GI0, GIP0};
    use crate::numerics::{rk4_fixed, CompositeGauss, Jet};

    /// Fixed-step RK4 on y″ = μy + c from the classical values at 0.
    fn rk4_from_zero(mu: f64, y0: [f64; 2], c: f64) -> (f64, f64) {
        let steps = ((mu.abs() / 5e-4).ceil() as usize).max(1);
        let y = rk4_fixed(
            |m, y, dy| {
                dy[0] = y[1];
                dy[1] = m * y[0] + c;
            },
            0.0,
            &y0,
            mu,
            steps,
        );
        (y[0], y[1])
    }

    pub fn airy_rk4(mu: f64) -> (f64, f64) {
        rk4_from_zero(mu, [AI0, -AIP0_NEG], 0.0)
    }

    pub fn scorer_rk4(mu: f64) -> (f64, f64) {
        rk4_from_zero(mu, [GI0, GIP0], -1.0 / std::f64::consts::PI)
    }

    /// (∫₀^∞ cos(μξ + ξ³/3) dξ, ∫₀^∞ sin(μξ + ξ³/3) dξ) by direct quadrature on
    /// [0, X] plus an integration-by-parts expansion of the tail.
    pub fn cubic_phase_integrals(mu: f64) -> (f64, f64) {
        let x_cut = 9.0;
        let phase = |xi: f64| mu * xi + xi * xi * xi / 3.0;
        let q = CompositeGauss::new(20);
        let panels = 1200;
        let c = q.integrate(|xi| phase(xi).cos(), 0.0, x_cut, panels);
        let s = q.integrate(|xi| phase(xi).sin(), 0.0, x_cut, panels);
        // tail = i e^{iφ(X)} Σ i^k r_k(X)/φ′(X),  r_0 = 1, r_{k+1} = (r_k/φ′)′
        let order = 10;
        let xi = Jet::variable(x_cut, order);
        let dphi = (&xi * &xi).add_scalar(mu);
        let mut r = Jet::constant(1.0, order);
        let (mut sre, mut sim) = (0.0, 0.0);
        let dphi0 = dphi.value();
        for k in 0..order {
            let term = r.value() / dphi0;
            match k % 4 {
                0 => sre += term,
                1 => sim += term,
                2 => sre -= term,
                _ => sim -= term,
            }
            let d = dphi.truncate(r.order());
            r = r.div(&d).deriv();
        }
        let (cp, sp) = (phase(x_cut).cos(), phase(x_cut).sin());
        // i (cp + i sp)(sre + i sim)
        let prod_re = cp * sre - sp * sim;
        let prod_im = cp * sim + sp * sre;
        (c - prod_im, s + prod_re)
    }
}
