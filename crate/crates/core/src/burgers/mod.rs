//! Modified Burgers problem u_t − a u_x² − ν u_xx = 0, u(0, x) = f(x):
//! kernel convolution ⟨⟨F⟩⟩, the exact solution (ν/a) ln⟨⟨1⟩⟩, FS residuals
//! of the two RG operators and a finite-difference oracle.

mod fd;
mod profile;

pub use fd::{fd_oracle, FdGrid, FdSolution};
pub use profile::{Profile, TableProfile};

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Result, RgsError};
use crate::numerics::CompositeGauss;
use crate::vfield::{numdiff, FnSampler, Point, SolutionSampler};
use crate::NumDiffConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BurgersProblem {
    pub a: f64,
    pub nu: f64,
    pub profile: Profile,
}

impl BurgersProblem {
    pub fn new(a: f64, nu: f64, profile: Profile) -> Result<Self> {
        let p = Self { a, nu, profile };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.nu > 0.0) || !self.nu.is_finite() {
            return Err(RgsError::InvalidConfig("nu must be positive".into()));
        }
        if !self.a.is_finite() {
            return Err(RgsError::InvalidConfig("a must be finite".into()));
        }
        Ok(())
    }

    fn with_params(&self, a: f64, nu: f64) -> Self {
        Self { a, nu, profile: self.profile.clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureConfig {
    /// Window half-width in units of √(2νt).
    pub half_width_sigmas: f64,
    pub nodes: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { half_width_sigmas: 8.0, nodes: 256 }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.half_width_sigmas >= 6.0) {
            return Err(RgsError::InvalidConfig("half_width_sigmas must be ≥ 6".into()));
        }
        if self.nodes < 64 {
            return Err(RgsError::InvalidConfig("nodes must be ≥ 64".into()));
        }
        Ok(())
    }
}

const GL_POINTS: usize = 16;
const TRUNCATION_RATIO: f64 = 1e-14;
const MAX_WIDENINGS: usize = 12;

/// ⟨⟨F⟩⟩(t, x) = (4πνt)^{−1/2} ∫ F(y) exp(−(x−y)²/(4νt) + a f(y)/ν) dy.
///
/// Composite Gauss–Legendre over a window centred at x, widened until the
/// integrand at both window edges is below 1e−14 of its peak.
pub fn convolve<F>(big_f: F, t: f64, x: f64, prob: &BurgersProblem, q: &QuadratureConfig) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    prob.validate()?;
    q.validate()?;
    if !(t > 0.0) {
        return Err(RgsError::Precondition("convolution requires t > 0".into()));
    }
    let sigma = (2.0 * prob.nu * t).sqrt();
    let four_nu_t = 4.0 * prob.nu * t;
    // Shift the exponent by the profile maximum to avoid overflow.
    let shift = (prob.a * prob.profile.sup() / prob.nu).max(0.0);
    let weight = |y: f64| {
        let (f, _, _) = prob.profile.eval3(y);
        (-(x - y) * (x - y) / four_nu_t + prob.a * f / prob.nu - shift).exp()
    };
    let mut half = q.half_width_sigmas * sigma;
    let r = prob.profile.support_radius();
    if r.is_finite() && r > 0.0 {
        half = half.max(r + 8.0);
    }
    let rule = CompositeGauss::new(GL_POINTS);
    let panel_width = sigma / 2.0;
    for _ in 0..=MAX_WIDENINGS {
        let (lo, hi) = (x - half, x + half);
        let panels = (q.nodes / GL_POINTS).max(((hi - lo) / panel_width).ceil() as usize).max(2);
        let mut peak: f64 = 0.0;
        let integral = rule.integrate(
            |y| {
                let w = weight(y);
                peak = peak.max(w.abs());
                big_f(y) * w
            },
            lo,
            hi,
            panels,
        );
        let edge = (big_f(lo) * weight(lo)).abs().max((big_f(hi) * weight(hi)).abs());
        let wpeak = peak.max(f64::MIN_POSITIVE);
        if edge <= TRUNCATION_RATIO * wpeak {
            return Ok(integral * shift.exp() / (PI * four_nu_t).sqrt());
        }
        half *= 1.5;
        if half > 1e6 {
            return Err(RgsError::TruncationWarning { ratio: edge / wpeak });
        }
    }
    let (lo, hi) = (x - half, x + half);
    let edge = (big_f(lo) * weight(lo)).abs().max((big_f(hi) * weight(hi)).abs());
    Err(RgsError::TruncationWarning { ratio: edge })
}

/// u(t, x); t = 0 returns f(x) and a = 0 the heat evolution of f.
pub fn exact_solution(t: f64, x: f64, prob: &BurgersProblem, q: &QuadratureConfig) -> Result<f64> {
    prob.validate()?;
    if t == 0.0 {
        return Ok(prob.profile.value(x));
    }
    if t < 0.0 {
        return Err(RgsError::Precondition("t must be non-negative".into()));
    }
    if prob.a == 0.0 {
        let p = &prob.profile;
        return convolve(|y| p.value(y), t, x, prob, q);
    }
    let z = convolve(|_| 1.0, t, x, prob, q)?;
    Ok(prob.nu / prob.a * z.ln())
}

/// Heat solution for a Gaussian profile A·exp(−x²/w²).
pub fn heat_gaussian(t: f64, x: f64, nu: f64, amplitude: f64, width: f64) -> f64 {
    let s = width * width + 4.0 * nu * t;
    amplitude * width / s.sqrt() * (-x * x / s).exp()
}

/// Fundamental solution of α_t = ν α_xx.
pub fn heat_kernel(t: f64, x: f64, nu: f64) -> f64 {
    (-x * x / (4.0 * nu * t)).exp() / (4.0 * PI * nu * t).sqrt()
}

/// Sampler of `exact_solution` over (t, x, a, nu); a and nu override the problem.
pub fn exact_sampler(prob: &BurgersProblem, q: QuadratureConfig, nd: NumDiffConfig) -> FnSampler {
    let prob = prob.clone();
    FnSampler::numeric(
        &["u"],
        move |p| {
            let a = p.get("a").unwrap_or(prob.a);
            let nu = p.get("nu").unwrap_or(prob.nu);
            Ok(vec![exact_solution(p.get("t")?, p.get("x")?, &prob.with_params(a, nu), &q)?])
        },
        nd,
    )
}

fn params(p: &Point, prob: &BurgersProblem) -> Result<(f64, f64, f64, f64)> {
    Ok((p.get("t")?, p.get("x")?, p.get("a").unwrap_or(prob.a), p.get("nu").unwrap_or(prob.nu)))
}

/// −u_a − u/a + (1/a) e^{−au/ν} ⟨⟨f⟩⟩.
pub fn fs_residual_r5(sol: &dyn SolutionSampler, p: &Point, prob: &BurgersProblem, q: &QuadratureConfig) -> Result<f64> {
    let (t, x, a, nu) = params(p, prob)?;
    if a == 0.0 {
        return Err(RgsError::Precondition("R5 residual requires a ≠ 0".into()));
    }
    let pr = prob.with_params(a, nu);
    let u = sol.value(p)?[0];
    let u_a = sol.partial(p, "a", 0, 1)?;
    let prof = &pr.profile;
    let bracket = convolve(|y| prof.value(y), t, x, &pr, q)?;
    Ok(-u_a - u / a + (-a * u / nu).exp() * bracket / a)
}

/// −u_t + e^{−au/ν} ⟨⟨a f_x² + ν f_xx⟩⟩.
pub fn fs_residual_r6(sol: &dyn SolutionSampler, p: &Point, prob: &BurgersProblem, q: &QuadratureConfig) -> Result<f64> {
    let (t, x, a, nu) = params(p, prob)?;
    if !(t > 0.0) {
        return Err(RgsError::Precondition("R6 residual requires t > 0".into()));
    }
    let pr = prob.with_params(a, nu);
    let u = sol.value(p)?[0];
    let u_t = sol.partial(p, "t", 0, 1)?;
    let prof = &pr.profile;
    let bracket = convolve(
        |y| {
            let (_, d1, d2) = prof.eval3(y);
            a * d1 * d1 + nu * d2
        },
        t,
        x,
        &pr,
        q,
    )?;
    Ok(-u_t + (-a * u / nu).exp() * bracket)
}

/// α_t − ν α_xx at (t, x) taken from `p`.
pub fn alpha_heat_residual<F>(alpha: F, nu: f64, p: &Point, nd: &NumDiffConfig) -> Result<f64>
where
    F: Fn(f64, f64) -> f64,
{
    let f = |q: &Point| Ok(alpha(q.get("t")?, q.get("x")?));
    let at = numdiff(f, p, "t", 1, nd)?;
    let axx = numdiff(f, p, "x", 2, nd)?;
    Ok(at - nu * axx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss(a: f64, nu: f64) -> BurgersProblem {
        BurgersProblem::new(a, nu, Profile::gaussian(1.0, 1.0)).unwrap()
    }

    fn q() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn convolution_examples() {
        let zero = BurgersProblem::new(1.0, 0.5, Profile::Constant(0.0)).unwrap();
        assert!((convolve(|_| 1.0, 0.7, 0.3, &zero, &q()).unwrap() - 1.0).abs() < 1e-13);
        let c = BurgersProblem::new(1.0, 0.5, Profile::Constant(0.4)).unwrap();
        let v = convolve(|_| 1.0, 0.7, 0.3, &c, &q()).unwrap();
        assert!((v - (0.8f64).exp()).abs() < 1e-12);
        let lin = gauss(0.0, 0.5);
        assert!(convolve(|y| y, 0.7, 0.0, &lin, &q()).unwrap().abs() < 1e-14);
    }

    #[test]
    fn constant_profile_is_stationary() {
        let c = BurgersProblem::new(0.7, 0.3, Profile::Constant(0.4)).unwrap();
        for (t, x) in [(0.1, 0.0), (1.0, 3.0), (5.0, -2.0)] {
            assert!((exact_solution(t, x, &c, &q()).unwrap() - 0.4).abs() < 1e-10);
        }
    }

    #[test]
    fn initial_time_is_exact() {
        let p = gauss(1.0, 0.5);
        assert_eq!(exact_solution(0.0, 0.3, &p, &q()).unwrap(), (-0.09f64).exp());
    }

    #[test]
    fn linear_limit_matches_heat_solution() {
        let p = gauss(0.0, 0.5);
        let v = exact_solution(0.25, 0.4, &p, &q()).unwrap();
        assert!((v - heat_gaussian(0.25, 0.4, 0.5, 1.0, 1.0)).abs() < 1e-13);
    }

    #[test]
    fn fs_residuals_on_exact_solution() {
        let p = gauss(1.0, 0.5);
        let s = exact_sampler(&p, q(), NumDiffConfig::default());
        let pt = Point::new().with("t", 0.5).with("x", 0.3).with("a", 1.0).with("nu", 0.5);
        assert!(fs_residual_r5(&s, &pt, &p, &q()).unwrap().abs() <= 1e-5);
        assert!(fs_residual_r6(&s, &pt, &p, &q()).unwrap().abs() <= 1e-5);
    }

    #[test]
    fn fs_residuals_constant_profile() {
        let p = BurgersProblem::new(0.8, 0.5, Profile::Constant(0.3)).unwrap();
        let s = exact_sampler(&p, q(), NumDiffConfig::default());
        let pt = Point::new().with("t", 0.5).with("x", 0.3).with("a", 0.8).with("nu", 0.5);
        assert!(fs_residual_r5(&s, &pt, &p, &q()).unwrap().abs() <= 1e-9);
        assert!(fs_residual_r6(&s, &pt, &p, &q()).unwrap().abs() <= 1e-9);
    }

    #[test]
    fn r5_detects_perturbation() {
        let p = gauss(1.0, 0.5);
        let s = exact_sampler(&p, q(), NumDiffConfig::default());
        let bumped = FnSampler::numeric(&["u"], move |pt| Ok(vec![s.value(pt)?[0] + 0.1]), NumDiffConfig::default());
        let pt = Point::new().with("t", 0.5).with("x", 0.3).with("a", 1.0).with("nu", 0.5);
        assert!(fs_residual_r5(&bumped, &pt, &p, &q()).unwrap().abs() > 1e-2);
    }

    #[test]
    fn r6_linear_case() {
        let p = gauss(0.0, 0.5);
        let s = FnSampler::scalar("u", |pt| heat_gaussian(pt.val("t"), pt.val("x"), 0.5, 1.0, 1.0));
        let pt = Point::new().with("t", 0.5).with("x", 0.3).with("a", 0.0).with("nu", 0.5);
        assert!(fs_residual_r6(&s, &pt, &p, &q()).unwrap().abs() <= 1e-6);
    }

    #[test]
    fn alpha_heat_examples() {
        let nd = NumDiffConfig::default();
        let pt = Point::new().with("t", 0.5).with("x", 0.2);
        assert!(alpha_heat_residual(|t, x| heat_kernel(t, x, 0.3), 0.3, &pt, &nd).unwrap().abs() <= 1e-6);
        assert_eq!(alpha_heat_residual(|_, _| 2.0, 0.3, &pt, &nd).unwrap(), 0.0);
        assert!((alpha_heat_residual(|_, x| x * x, 0.3, &pt, &nd).unwrap() + 0.6).abs() < 1e-8);
    }

    #[test]
    fn galilean_shift() {
        let p = gauss(1.0, 0.5);
        let ps = BurgersProblem::new(1.0, 0.5, Profile::gaussian(1.0, 1.0).shifted(0.7)).unwrap();
        let a = exact_solution(0.4, 0.2, &p, &q()).unwrap();
        let b = exact_solution(0.4, 0.9, &ps, &q()).unwrap();
        assert!((a - b).abs() <= 1e-10);
    }

    #[test]
    fn validation() {
        assert!(BurgersProblem::new(1.0, 0.0, Profile::Constant(0.0)).is_err());
        let bad = QuadratureConfig { half_width_sigmas: 3.0, nodes: 256 };
        assert!(convolve(|_| 1.0, 1.0, 0.0, &gauss(1.0, 0.5), &bad).is_err());
    }
}
