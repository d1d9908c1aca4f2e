//! Reduced plasma-resonance system
//!   v_t + a v v_x − E = 0,   E_t + a v E_x + v = 0      (ω = ω_L = 1)
//! with its parametric exact solution and the symmetry −E ∂x + ∂a.

mod special;

use serde::{Deserialize, Serialize};

pub use special::{airy, airy_ai, oracle, scorer, scorer_gi, WINDOW as SPECIAL_WINDOW};

use crate::error::{Result, RgsError};
use crate::numerics::{bracketed, derivative_fn, NumDiffConfig};
use crate::vfield::{canonical_residual, FnSampler, Point, SolutionSampler, VectorField};

/// Residual probes require |x_μ| at least this large.
pub const FOLD_MARGIN: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Cold,
    Hot,
}

/// Nondimensional configuration (ω = Δ = L = 1, so the nonlinearity ε equals `a`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlasmaConfig {
    pub regime: Regime,
    pub a: f64,
}

impl PlasmaConfig {
    pub fn new(regime: Regime, a: f64) -> Result<Self> {
        let c = Self { regime, a };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a.is_finite() && self.a >= 0.0) {
            return Err(RgsError::InvalidConfig(format!("plasma nonlinearity a = {} must be ≥ 0", self.a)));
        }
        Ok(())
    }

    pub fn with_a(self, a: f64) -> Self {
        Self { a, ..self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QPair {
    pub q1: f64,
    pub q2: f64,
}

impl QPair {
    pub fn norm_sq(&self) -> f64 {
        self.q1 * self.q1 + self.q2 * self.q2
    }
}

pub fn q_cold(mu: f64) -> QPair {
    let d = 1.0 + mu * mu;
    QPair { q1: 1.0 / d, q2: mu / d }
}

fn q_cold_prime(mu: f64) -> QPair {
    let d = 1.0 + mu * mu;
    QPair { q1: -2.0 * mu / (d * d), q2: (1.0 - mu * mu) / (d * d) }
}

/// (π Ai(μ), π Gi(μ)) — the cubic-phase integrals ∫₀^∞ cos, sin(μξ + ξ³/3) dξ.
pub fn q_hot(mu: f64) -> Result<QPair> {
    q_with_prime(Regime::Hot, mu).map(|(q, _)| q)
}

/// Profile values and their analytic μ-derivatives.
pub fn q_with_prime(regime: Regime, mu: f64) -> Result<(QPair, QPair)> {
    use std::f64::consts::PI;
    match regime {
        Regime::Cold => Ok((q_cold(mu), q_cold_prime(mu))),
        Regime::Hot => {
            let (ai, aip) = airy(mu)?;
            let (gi, gip) = scorer(mu)?;
            Ok((QPair { q1: PI * ai, q2: PI * gi }, QPair { q1: PI * aip, q2: PI * gip }))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlasmaState {
    pub x: f64,
    pub v: f64,
    pub e: f64,
}

/// E = −(q₁ sin t + q₂ cos t), v = q₁ cos t − q₂ sin t, x = μ − aE.
pub fn parametric_solution(cfg: &PlasmaConfig, mu: f64, t: f64) -> Result<PlasmaState> {
    let (q, _) = q_with_prime(cfg.regime, mu)?;
    Ok(state_from(q, cfg.a, mu, t))
}

fn state_from(q: QPair, a: f64, mu: f64, t: f64) -> PlasmaState {
    let (s, c) = t.sin_cos();
    let e = -(q.q1 * s + q.q2 * c);
    PlasmaState { x: mu - a * e, v: q.q1 * c - q.q2 * s, e }
}

/// x_μ = 1 + a(q₁′ sin t + q₂′ cos t).
pub fn x_mu(cfg: &PlasmaConfig, mu: f64, t: f64) -> Result<f64> {
    let (_, dq) = q_with_prime(cfg.regime, mu)?;
    let (s, c) = t.sin_cos();
    Ok(1.0 + cfg.a * (dq.q1 * s + dq.q2 * c))
}

/// Jacobian of (μ, t) ↦ (x, v, E).
#[derive(Debug, Clone, Copy)]
struct Partials {
    st: PlasmaState,
    x_mu: f64,
    x_t: f64,
    v_mu: f64,
    v_t: f64,
    e_mu: f64,
    e_t: f64,
}

fn residual_from(j: &Partials, a: f64, mu: f64) -> Result<(f64, f64)> {
    if j.x_mu.abs() < FOLD_MARGIN {
        return Err(RgsError::FoldEncountered { mu, x_mu: j.x_mu });
    }
    let v_x = j.v_mu / j.x_mu;
    let e_x = j.e_mu / j.x_mu;
    let v_t = j.v_t - v_x * j.x_t;
    let e_t = j.e_t - e_x * j.x_t;
    let PlasmaState { v, e, .. } = j.st;
    Ok((v_t + a * v * v_x - e, e_t + a * v * e_x + v))
}

/// Residuals of both field equations at the image of (μ, t), using analytic
/// derivatives of the profile functions.
pub fn pde_residual(cfg: &PlasmaConfig, mu: f64, t: f64) -> Result<(f64, f64)> {
    let (q, dq) = q_with_prime(cfg.regime, mu)?;
    let st = state_from(q, cfg.a, mu, t);
    let (s, c) = t.sin_cos();
    let e_mu = -(dq.q1 * s + dq.q2 * c);
    let e_t = -(q.q1 * c - q.q2 * s);
    let j = Partials {
        st,
        x_mu: 1.0 - cfg.a * e_mu,
        x_t: -cfg.a * e_t,
        v_mu: dq.q1 * c - dq.q2 * s,
        v_t: -q.q1 * s - q.q2 * c,
        e_mu,
        e_t,
    };
    residual_from(&j, cfg.a, mu)
}

/// Same residual for an arbitrary parametric map (μ, t) ↦ (x, v, E), with
/// all derivatives taken numerically.
pub fn pde_residual_numeric<F>(map: F, a: f64, mu: f64, t: f64, nd: &NumDiffConfig) -> Result<(f64, f64)>
where
    F: Fn(f64, f64) -> PlasmaState,
{
    let st = map(mu, t);
    let d_mu = |k: fn(&PlasmaState) -> f64| derivative_fn(|m| k(&map(m, t)), mu, 1, nd);
    let d_t = |k: fn(&PlasmaState) -> f64| derivative_fn(|s| k(&map(mu, s)), t, 1, nd);
    let j = Partials {
        st,
        x_mu: d_mu(|s| s.x)?,
        x_t: d_t(|s| s.x)?,
        v_mu: d_mu(|s| s.v)?,
        v_t: d_t(|s| s.v)?,
        e_mu: d_mu(|s| s.e)?,
        e_t: d_t(|s| s.e)?,
    };
    residual_from(&j, a, mu)
}

/// The profile map with q₁ scaled by `factor` in the velocity only —
/// an inconsistent perturbation used as a negative control.
pub fn perturbed_map(cfg: PlasmaConfig, factor: f64) -> impl Fn(f64, f64) -> PlasmaState {
    move |mu, t| {
        let (q, _) = q_with_prime(cfg.regime, mu).unwrap_or((QPair { q1: f64::NAN, q2: f64::NAN }, q_cold(0.0)));
        let mut st = state_from(q, cfg.a, mu, t);
        let (s, c) = t.sin_cos();
        st.v = factor * q.q1 * c - q.q2 * s;
        st
    }
}

/// All μ in [lo, hi] with μ + a(q₁ sin t + q₂ cos t) = x, increasing.
pub fn invert_parametric(cfg: &PlasmaConfig, x: f64, t: f64, lo: f64, hi: f64) -> Result<Vec<f64>> {
    if !(hi > lo) {
        return Err(RgsError::Precondition(format!("empty search interval [{lo}, {hi}]")));
    }
    if cfg.a == 0.0 {
        return Ok(if (lo..=hi).contains(&x) { vec![x] } else { vec![] });
    }
    let g = |mu: f64| -> Result<f64> { Ok(parametric_solution(cfg, mu, t)?.x - x) };
    // |x_μ − 1| ≤ a·sup|q′|, so a scan finer than the fold width resolves every root.
    let samples = (((hi - lo) * (40.0 + 40.0 * cfg.a)).ceil() as usize).max(64);
    let step = (hi - lo) / samples as f64;
    let mut roots = Vec::new();
    let mut prev_mu = lo;
    let mut prev = g(lo)?;
    if prev == 0.0 {
        roots.push(lo);
    }
    for i in 1..=samples {
        let mu = lo + step * i as f64;
        let cur = g(mu)?;
        if cur == 0.0 {
            roots.push(mu);
        } else if prev != 0.0 && prev.signum() != cur.signum() {
            let r = bracketed(|m| g(m).unwrap_or(f64::NAN), prev_mu, mu, 1e-15)?;
            roots.push(r);
        }
        prev = cur;
        prev_mu = mu;
    }
    Ok(roots)
}

/// Upper bound of √(q₁² + q₂²) over the accuracy window.
fn q_bound(regime: Regime) -> f64 {
    match regime {
        Regime::Cold => 1.0,
        Regime::Hot => 1.9,
    }
}

/// Unique off-fold branch μ(x, t).
fn unique_mu(cfg: &PlasmaConfig, x: f64, t: f64, search: (f64, f64)) -> Result<f64> {
    // every root satisfies |μ − x| ≤ |a|·sup|q|
    let r = cfg.a.abs() * q_bound(cfg.regime) + 1e-9;
    let (lo, hi) = (search.0.max(x - r), search.1.min(x + r));
    if !(hi > lo) {
        return Err(RgsError::NotInvertible(format!("x = {x} outside the search interval")));
    }
    let roots = invert_parametric(cfg, x, t, lo, hi)?;
    match roots.as_slice() {
        [mu] => {
            let xm = x_mu(cfg, *mu, t)?;
            if xm.abs() < FOLD_MARGIN {
                return Err(RgsError::FoldEncountered { mu: *mu, x_mu: xm });
            }
            Ok(*mu)
        }
        [] => Err(RgsError::NotInvertible(format!("no branch through x = {x} at t = {t}"))),
        [mu, ..] => Err(RgsError::FoldEncountered { mu: *mu, x_mu: 0.0 }),
    }
}

/// (v, E) as functions of (x, t, a) by numerical inversion of the parametric map;
/// partials are numerically differentiated.
pub fn solution_sampler(regime: Regime, search: (f64, f64), nd: NumDiffConfig) -> FnSampler {
    FnSampler::numeric(
        &["v", "E"],
        move |p: &Point| {
            // negative a is admitted here so that ∂a can be differenced at a = 0
            let cfg = PlasmaConfig { regime, a: p.get("a")? };
            let (x, t) = (p.get("x")?, p.get("t")?);
            let mu = unique_mu(&cfg, x, t, search)?;
            let st = parametric_solution(&cfg, mu, t)?;
            Ok(vec![st.v, st.e])
        },
        nd,
    )
}

/// Like [`solution_sampler`] but with the nonlinearity frozen at `a0`
/// regardless of the probe's `a` — not a solution family in `a`.
pub fn frozen_sampler(regime: Regime, a0: f64, search: (f64, f64), nd: NumDiffConfig) -> FnSampler {
    FnSampler::numeric(
        &["v", "E"],
        move |p: &Point| {
            let cfg = PlasmaConfig::new(regime, a0)?;
            let (x, t) = (p.get("x")?, p.get("t")?);
            let mu = unique_mu(&cfg, x, t, search)?;
            let st = parametric_solution(&cfg, mu, t)?;
            Ok(vec![st.v, st.e])
        },
        nd,
    )
}

/// −E ∂x + ∂a over (t, x, a; v, E).
pub fn r8_field() -> VectorField {
    VectorField::new("lambda").with("x", |p: &Point| -p.val("E")).with_constant("a", 1.0)
}

/// (v_a − E v_x, E_a − E E_x).
pub fn fs_residual_r8(sol: &dyn SolutionSampler, p: &Point) -> Result<(f64, f64)> {
    let r = canonical_residual(&r8_field(), sol, p)?;
    // characteristic κ = η − ξ·∇u has the opposite sign
    Ok((-r[0], -r[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cfg(regime: Regime, a: f64) -> PlasmaConfig {
        PlasmaConfig::new(regime, a).unwrap()
    }

    #[test]
    fn cold_profile_examples() {
        assert_eq!(q_cold(0.0), QPair { q1: 1.0, q2: 0.0 });
        assert_eq!(q_cold(1.0), QPair { q1: 0.5, q2: 0.5 });
        let mut prev = q_cold(1.0);
        for i in 1..100 {
            let q = q_cold(1.0 + 0.5 * i as f64);
            assert!(q.q1 < prev.q1 && q.q2 < prev.q2 && q.norm_sq() <= 1.0);
            prev = q;
        }
        assert!(q_cold(1e8).q1 < 1e-15);
    }

    #[test]
    fn hot_profile_examples() {
        let q = q_hot(0.0).unwrap();
        assert!((q.q1 - 1.11536).abs() < 1e-5 && (q.q2 - 0.64395).abs() < 1e-5);
        let (c, s) = oracle::cubic_phase_integrals(3.0);
        let q = q_hot(3.0).unwrap();
        assert!((q.q1 - c).abs() < 1e-8 && (q.q2 - s).abs() < 1e-8);
    }

    #[test]
    fn parametric_examples() {
        let st = parametric_solution(&cfg(Regime::Cold, 0.0), 0.7, 1.3).unwrap();
        assert_eq!(st.x, 0.7);
        let a = 0.37;
        let st = parametric_solution(&cfg(Regime::Cold, a), 0.0, PI / 2.0).unwrap();
        assert!((st.e + 1.0).abs() < 1e-15 && st.v.abs() < 1e-15 && (st.x - a).abs() < 1e-15);
        for regime in [Regime::Cold, Regime::Hot] {
            let q = q_with_prime(regime, -0.8).unwrap().0;
            for k in 0..10 {
                let st = parametric_solution(&cfg(regime, 0.3), -0.8, 0.7 * k as f64).unwrap();
                assert!((st.v * st.v + st.e * st.e - q.norm_sq()).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn pde_residual_vanishes() {
        for regime in [Regime::Cold, Regime::Hot] {
            for a in [0.0, 0.3] {
                for (mu, t) in [(-1.5, 0.3), (0.2, 2.0), (1.7, 5.5)] {
                    let (r1, r2) = pde_residual(&cfg(regime, a), mu, t).unwrap();
                    assert!(r1.abs() < 1e-12 && r2.abs() < 1e-12, "{regime:?} {a} {mu} {t}: {r1} {r2}");
                }
            }
        }
    }

    #[test]
    fn numeric_residual_and_negative_control() {
        let c = cfg(Regime::Hot, 0.3);
        let nd = NumDiffConfig::default();
        let exact = perturbed_map(c, 1.0);
        let (r1, r2) = pde_residual_numeric(&exact, c.a, 0.4, 1.1, &nd).unwrap();
        assert!(r1.abs() < 1e-8 && r2.abs() < 1e-8, "{r1} {r2}");
        let bad = perturbed_map(c, 1.01);
        let (r1, r2) = pde_residual_numeric(&bad, c.a, 0.4, 1.1, &nd).unwrap();
        assert!(r1.abs().max(r2.abs()) > 1e-3);
    }

    #[test]
    fn fold_is_reported() {
        // cold, t = π: x_μ(0) = 1 − a
        let c = cfg(Regime::Cold, 1.0);
        assert!(matches!(pde_residual(&c, 0.0, PI), Err(RgsError::FoldEncountered { .. })));
    }

    #[test]
    fn inversion() {
        let roots = invert_parametric(&cfg(Regime::Cold, 0.0), 0.4, 1.0, -5.0, 5.0).unwrap();
        assert_eq!(roots, vec![0.4]);
        let c = cfg(Regime::Cold, 0.2);
        for (x, t) in [(0.3, 0.5), (-1.2, 2.5), (2.0, 4.0)] {
            let roots = invert_parametric(&c, x, t, -10.0, 10.0).unwrap();
            assert_eq!(roots.len(), 1);
            assert!((roots[0] - x).abs() <= c.a);
            let back = parametric_solution(&c, roots[0], t).unwrap().x;
            assert!((back - x).abs() < 1e-12);
        }
        // a = 2, t = π: x = μ − 2μ/(1+μ²) has roots 0, ±1 at x = 0
        let roots = invert_parametric(&cfg(Regime::Cold, 2.0), 0.0, PI, -5.0, 5.0).unwrap();
        assert_eq!(roots.len(), 3);
        assert!((roots[0] + 1.0).abs() < 1e-12 && roots[1].abs() < 1e-12 && (roots[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn r8_invariance() {
        let nd = NumDiffConfig::default();
        for regime in [Regime::Cold, Regime::Hot] {
            let sol = solution_sampler(regime, (-12.0, 12.0), nd);
            for (x, t, a) in [(0.3, 0.4, 0.2), (-0.8, 2.1, 0.2), (1.1, 4.0, 0.0)] {
                let p = Point::from_pairs(&[("x", x), ("t", t), ("a", a)]);
                let (s1, s2) = fs_residual_r8(&sol, &p).unwrap();
                assert!(s1.abs() < 1e-8 && s2.abs() < 1e-8, "{regime:?} {x} {t} {a}: {s1} {s2}");
            }
        }
    }

    #[test]
    fn frozen_sampler_fails_invariance() {
        let nd = NumDiffConfig::default();
        let sol = frozen_sampler(Regime::Cold, 0.2, (-12.0, 12.0), nd);
        let p = Point::from_pairs(&[("x", 0.3), ("t", 0.4), ("a", 0.2)]);
        let (s1, _) = fs_residual_r8(&sol, &p).unwrap();
        let e = sol.value(&p).unwrap()[1];
        let vx = sol.partial(&p, "x", 0, 1).unwrap();
        assert!((s1 + e * vx).abs() < 1e-10 && s1.abs() > 1e-3);
    }

    #[test]
    fn config_validation() {
        assert!(PlasmaConfig::new(Regime::Hot, -0.1).is_err());
        assert!(PlasmaConfig::new(Regime::Hot, f64::NAN).is_err());
    }
}
