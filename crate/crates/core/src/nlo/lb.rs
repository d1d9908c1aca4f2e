//! Canonical Lie–Bäcklund coordinates R = f∂τ + g∂χ evaluated on hodograph solutions.

use serde::{Deserialize, Serialize};

use super::beam::{boundary_to_hodograph, BeamProfile};
use super::hodograph::{solve_hodograph, HodographGrid, HodographSample, HodographSpec};
use crate::error::{Result, RgsError};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct LbCoordPair {
    pub f: f64,
    pub g: f64,
}

impl LbCoordPair {
    pub fn max_abs(&self) -> f64 {
        self.f.abs().max(self.g.abs())
    }
}

/// f = f⁰ + αf¹, g = g⁰ + αg¹.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Binomial {
    pub f0: f64,
    pub f1: f64,
    pub g0: f64,
    pub g1: f64,
}

impl Binomial {
    pub fn at(&self, alpha: f64) -> LbCoordPair {
        LbCoordPair { f: self.f0 + alpha * self.f1, g: self.g0 + alpha * self.g1 }
    }
}

fn r7_binomial(s: &HodographSample, w: f64, n: f64) -> Binomial {
    Binomial {
        f0: 2.0 * n * (1.0 - n) * s.tau_nn - n * s.tau_n - 2.0 * n * w * (s.chi_n + n * s.chi_nn),
        f1: 0.5 * n * w * w * s.tau_nn,
        g0: 2.0 * n * (1.0 - n) * s.chi_nn + (2.0 - 3.0 * n) * s.chi_n,
        g1: w * (2.0 * n * s.tau_nn + s.tau_n) + 0.5 * w * w * (n * s.chi_nn + s.chi_n),
    }
}

/// Coordinates of the exact second-order operator for the sech² beam.
pub fn r7_coordinates(s: &HodographSample, w: f64, n: f64, alpha: f64) -> LbCoordPair {
    r7_binomial(s, w, n).at(alpha)
}

/// Largest individual term entering the coordinates, the scale for relative residuals.
pub fn r7_scale(s: &HodographSample, w: f64, n: f64, alpha: f64) -> f64 {
    [
        2.0 * n * (1.0 - n) * s.tau_nn,
        n * s.tau_n,
        2.0 * n * w * s.chi_n,
        2.0 * n * n * w * s.chi_nn,
        0.5 * alpha * n * w * w * s.tau_nn,
        2.0 * n * (1.0 - n) * s.chi_nn,
        (2.0 - 3.0 * n) * s.chi_n,
        2.0 * alpha * w * n * s.tau_nn,
        alpha * w * s.tau_n,
        0.5 * alpha * w * w * n * s.chi_nn,
        0.5 * alpha * w * w * s.chi_n,
    ]
    .iter()
    .fold(0.0f64, |m, t| m.max(t.abs()))
}

/// R7 coordinates from a solved grid.
pub fn lb_coordinates_r7(grid: &HodographGrid, w: f64, n: f64) -> Result<LbCoordPair> {
    let s = grid.sample(w, n)?;
    Ok(r7_coordinates(&s, w, n, grid.alpha))
}

/// Reading of the (3/4)·v·τ_n term of the third operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum G3Reading {
    /// v = αw, taken literally.
    Velocity,
    /// w in place of v.
    W,
}

/// Coordinates of the three basic operators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LbOperators {
    pub f: [f64; 3],
    pub g: [f64; 3],
}

impl LbOperators {
    /// (f₁ + 2(f₂ + f₃), g₁ + 2(g₂ + g₃)).
    pub fn combination(&self) -> LbCoordPair {
        LbCoordPair {
            f: self.f[0] + 2.0 * (self.f[1] + self.f[2]),
            g: self.g[0] + 2.0 * (self.g[1] + self.g[2]),
        }
    }
}

pub fn lb_operators(s: &HodographSample, w: f64, n: f64, alpha: f64, reading: G3Reading) -> LbOperators {
    let q = -n + 0.25 * alpha * w * w;
    let lead = match reading {
        G3Reading::Velocity => alpha * w,
        G3Reading::W => w,
    };
    LbOperators {
        f: [
            -0.5 * s.tau + n * s.tau_n + 0.5 * n * w * s.chi_n,
            n * s.tau_n,
            0.25 * s.tau - n * s.tau_n - 1.25 * w * n * s.chi_n + q * n * s.tau_nn - w * n * n * s.chi_nn,
        ],
        g: [
            -0.5 * alpha * w * s.tau_n + n * s.chi_n,
            s.chi_n + n * s.chi_nn,
            0.75 * lead * s.tau_n - (2.0 * n - 0.25 * alpha * w * w) * s.chi_n + alpha * w * n * s.tau_nn + q * n * s.chi_nn,
        ],
    }
}

/// Truncated (binomial) approximate-symmetry coordinate sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ApproxKind {
    SolitonA,
    SolitonB,
    GaussA,
    GaussB,
}

impl ApproxKind {
    pub const ALL: [ApproxKind; 4] = [ApproxKind::SolitonA, ApproxKind::SolitonB, ApproxKind::GaussA, ApproxKind::GaussB];

    /// The beam profile the coordinate set is built for.
    pub fn profile(self) -> BeamProfile {
        match self {
            ApproxKind::SolitonA | ApproxKind::SolitonB => BeamProfile::Sech2,
            ApproxKind::GaussA | ApproxKind::GaussB => BeamProfile::Gaussian,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ApproxKind::SolitonA => "soliton_a",
            ApproxKind::SolitonB => "soliton_b",
            ApproxKind::GaussA => "gauss_a",
            ApproxKind::GaussB => "gauss_b",
        }
    }
}

/// Grids at α and at neighbouring α values for ∂α derivatives.
#[derive(Debug, Clone)]
pub struct AlphaGrids {
    pub center: HodographGrid,
    first: HodographGrid,
    second: HodographGrid,
    delta: f64,
    /// (α, α+δ, α+2δ) when α < δ; (α−δ, α+δ) otherwise.
    one_sided: bool,
}

impl AlphaGrids {
    pub fn delta_for(alpha: f64) -> f64 {
        (0.05 * alpha).max(1e-3)
    }

    pub fn solve(profile: &BeamProfile, alpha: f64, spec: &HodographSpec) -> Result<Self> {
        let h = boundary_to_hodograph(profile)?;
        let delta = Self::delta_for(alpha);
        let one_sided = alpha < delta;
        let center = solve_hodograph(&h, alpha, spec)?;
        let (a1, a2) = if one_sided { (alpha + delta, alpha + 2.0 * delta) } else { (alpha - delta, alpha + delta) };
        Ok(Self {
            center,
            first: solve_hodograph(&h, a1, spec)?,
            second: solve_hodograph(&h, a2, spec)?,
            delta,
            one_sided,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.center.alpha
    }

    /// (τ_α, χ_α) at (w, n) by second-order differences in α.
    pub fn alpha_derivatives(&self, w: f64, n: f64) -> Result<(f64, f64)> {
        let a = self.first.sample(w, n)?;
        let b = self.second.sample(w, n)?;
        let d = self.delta;
        if self.one_sided {
            let c = self.center.sample(w, n)?;
            Ok(((-3.0 * c.tau + 4.0 * a.tau - b.tau) / (2.0 * d), (-3.0 * c.chi + 4.0 * a.chi - b.chi) / (2.0 * d)))
        } else {
            Ok(((b.tau - a.tau) / (2.0 * d), (b.chi - a.chi) / (2.0 * d)))
        }
    }
}

fn binomial(kind: ApproxKind, s: &HodographSample, w: f64, n: f64, alpha_derivs: Option<(f64, f64)>) -> Result<Binomial> {
    let (t, c) = (s.tau, s.chi);
    Ok(match kind {
        ApproxKind::SolitonA => r7_binomial(s, w, n),
        ApproxKind::SolitonB => {
            let th = c.tanh();
            let sech2 = 1.0 / (c.cosh() * c.cosh());
            Binomial {
                f0: 1.0 + 2.0 * n * s.chi_n * th,
                f1: (t * t / n - 2.0 * t * s.tau_n + 2.0 * t * t * th) * sech2,
                g0: 0.0,
                g1: -2.0 * t * s.chi_n * sech2 - 2.0 * s.tau_n * th,
            }
        }
        ApproxKind::GaussA => Binomial {
            f0: 1.0 + 2.0 * n * c * s.chi_n,
            f1: -2.0 * t * s.tau_n + t * t / n,
            g0: 0.0,
            g1: -2.0 * (t * s.chi_n + c * s.tau_n),
        },
        ApproxKind::GaussB => {
            let (tau_a, chi_a) = alpha_derivs
                .ok_or_else(|| RgsError::DerivativeUnavailable("α-derivatives need neighbouring-α grids".into()))?;
            Binomial {
                f0: 2.0 * n * (t * s.chi_n + s.tau_n * c),
                f1: 2.0 * c * tau_a,
                g0: 1.0 + 2.0 * n * c * s.chi_n,
                g1: 2.0 * (c * chi_a - t * s.tau_n),
            }
        }
    })
}

/// The selected truncated coordinates (f⁰ + αf¹, g⁰ + αg¹) at (w, n).
pub fn approx_coeffs(kind: ApproxKind, grids: &AlphaGrids, w: f64, n: f64) -> Result<LbCoordPair> {
    let s = grids.center.sample(w, n)?;
    let ad = match kind {
        ApproxKind::GaussB => Some(grids.alpha_derivatives(w, n)?),
        _ => None,
    };
    Ok(binomial(kind, &s, w, n, ad)?.at(grids.alpha()))
}

/// The α-independent part (f⁰, g⁰) at (w, n).
pub fn approx_coeffs_leading(kind: ApproxKind, grids: &AlphaGrids, w: f64, n: f64) -> Result<LbCoordPair> {
    let s = grids.center.sample(w, n)?;
    let b = binomial(kind, &s, w, n, Some((0.0, 0.0)))?;
    Ok(LbCoordPair { f: b.f0, g: b.g0 })
}

/// Largest |f|, |g| over the probes.
pub fn fs_residual(kind: ApproxKind, grids: &AlphaGrids, probes: &[(f64, f64)]) -> Result<f64> {
    let mut m = 0.0f64;
    for &(w, n) in probes {
        m = m.max(approx_coeffs(kind, grids, w, n)?.max_abs());
    }
    Ok(m)
}

/// Residuals below this are indistinguishable from roundoff.
pub const NOISE_FLOOR: f64 = 1e-11;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderReport {
    pub kind: ApproxKind,
    pub alphas: Vec<f64>,
    pub residuals: Vec<f64>,
    /// Least-squares slope of log residual against log α.
    pub slope: f64,
}

/// Measured order in α of the truncated coordinates' FS residual.
pub fn order_check(kind: ApproxKind, alphas: &[f64], probes: &[(f64, f64)], spec: &HodographSpec) -> Result<OrderReport> {
    if alphas.len() < 3 {
        return Err(RgsError::Precondition("order check needs at least three α values".into()));
    }
    let ratio = alphas[1] / alphas[0];
    let geometric = alphas.iter().all(|a| *a > 0.0)
        && alphas.windows(2).all(|p| ((p[1] / p[0]) / ratio - 1.0).abs() < 1e-9)
        && (ratio - 1.0).abs() > 1e-6;
    if !geometric {
        return Err(RgsError::Precondition("α values must form a geometric progression".into()));
    }
    if probes.is_empty() {
        return Err(RgsError::Precondition("no probes".into()));
    }
    let profile = kind.profile();
    let mut residuals = Vec::with_capacity(alphas.len());
    for &a in alphas {
        let grids = AlphaGrids::solve(&profile, a, spec)?;
        residuals.push(fs_residual(kind, &grids, probes)?);
    }
    let worst = residuals.iter().cloned().fold(0.0, f64::max);
    if residuals.iter().any(|r| *r < NOISE_FLOOR) {
        return Err(RgsError::ResidualBelowNoiseFloor { residual: worst });
    }
    let xs: Vec<f64> = alphas.iter().map(|a| a.ln()).collect();
    let ys: Vec<f64> = residuals.iter().map(|r| r.ln()).collect();
    let m = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / m, ys.iter().sum::<f64>() / m);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(OrderReport { kind, alphas: alphas.to_vec(), residuals, slope: sxy / sxx })
}

/// Default interior probe set (w, n).
pub fn default_probes() -> Vec<(f64, f64)> {
    let mut p = Vec::new();
    for &n in &[0.3, 0.4, 0.5, 0.6, 0.7] {
        for &w in &[0.1, 0.2, 0.3] {
            p.push((w, n));
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::super::hodograph::series_point;
    use super::*;

    fn sample(profile: BeamProfile, alpha: f64, w: f64, n: f64) -> HodographSample {
        series_point(&boundary_to_hodograph(&profile).unwrap(), alpha, w, n, 40).unwrap()
    }

    #[test]
    fn r7_vanishes_on_sech2_solution() {
        for &(w, n) in &[(0.2, 0.5), (0.4, 0.3), (0.5, 0.7)] {
            let s = sample(BeamProfile::Sech2, 0.1, w, n);
            let r = r7_coordinates(&s, w, n, 0.1);
            assert!(r.max_abs() <= 1e-10 * r7_scale(&s, w, n, 0.1), "{r:?}");
        }
    }

    #[test]
    fn r7_boundary_compatibility() {
        for n in [0.2, 0.5, 0.8] {
            let s = sample(BeamProfile::Sech2, 0.1, 0.0, n);
            let r = r7_coordinates(&s, 0.0, n, 0.1);
            assert!(r.f.abs() < 1e-12 && r.g.abs() < 1e-6);
        }
    }

    #[test]
    fn r7_discriminates_profiles() {
        let s = sample(BeamProfile::Gaussian, 0.1, 0.2, 0.5);
        let r = r7_coordinates(&s, 0.2, 0.5, 0.1);
        assert!(r.max_abs() > 1e-2 * r7_scale(&s, 0.2, 0.5, 0.1));
    }

    #[test]
    fn g3_readings() {
        let (a, w, n) = (0.1, 0.2, 0.5);
        let s = sample(BeamProfile::Sech2, a, w, n);
        let lit = lb_operators(&s, w, n, a, G3Reading::Velocity).combination();
        let alt = lb_operators(&s, w, n, a, G3Reading::W).combination();
        assert!(lit.g.abs() < 1e-12);
        assert!(alt.g.abs() > 1e-4);
        assert_eq!(lit.f, alt.f);
    }

    #[test]
    fn approx_examples() {
        let spec = HodographSpec { n_count: 11, w_count: 6, ..Default::default() };
        let sol = AlphaGrids::solve(&BeamProfile::Sech2, 0.1, &spec).unwrap();
        let a = approx_coeffs(ApproxKind::SolitonA, &sol, 0.2, 0.5).unwrap();
        assert_eq!(a, lb_coordinates_r7(&sol.center, 0.2, 0.5).unwrap());
        let gauss = AlphaGrids::solve(&BeamProfile::Gaussian, 0.1, &spec).unwrap();
        for n in [0.3, 0.5, 0.7] {
            let lead = approx_coeffs_leading(ApproxKind::GaussA, &gauss, 0.0, n).unwrap();
            assert!(lead.f.abs() < 1e-8);
        }
        let zero = AlphaGrids::solve(&BeamProfile::Gaussian, 0.0, &spec).unwrap();
        for k in ApproxKind::ALL {
            let full = approx_coeffs(k, &zero, 0.2, 0.5).unwrap();
            let lead = approx_coeffs_leading(k, &zero, 0.2, 0.5).unwrap();
            assert_eq!(full, lead, "{k:?}");
        }
    }

    #[test]
    fn alpha_derivatives_match_series() {
        let spec = HodographSpec { n_count: 11, w_count: 6, ..Default::default() };
        for alpha in [0.0005, 0.1] {
            let g = AlphaGrids::solve(&BeamProfile::Gaussian, alpha, &spec).unwrap();
            let (ta, ca) = g.alpha_derivatives(0.3, 0.5).unwrap();
            let s = g.center.sample(0.3, 0.5).unwrap();
            assert!((ta - s.tau_alpha).abs() < 1e-8 && (ca - s.chi_alpha).abs() < 1e-8);
        }
    }

    #[test]
    fn order_check_behaviour() {
        let spec = HodographSpec { n_count: 11, w_count: 6, ..Default::default() };
        let probes = default_probes();
        let alphas = [0.1, 0.05, 0.025];
        let r = order_check(ApproxKind::GaussA, &alphas, &probes, &spec).unwrap();
        assert!(r.slope >= 1.7, "{r:?}");
        assert!(matches!(
            order_check(ApproxKind::SolitonA, &alphas, &probes, &spec),
            Err(RgsError::ResidualBelowNoiseFloor { .. })
        ));
        assert!(matches!(order_check(ApproxKind::GaussA, &[0.1], &probes, &spec), Err(RgsError::Precondition(_))));
        assert!(order_check(ApproxKind::GaussA, &[0.1, 0.05, 0.02], &probes, &spec).is_err());
    }
}
