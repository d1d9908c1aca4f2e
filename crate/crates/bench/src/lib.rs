//! Shared fixtures for the kernel benchmarks.

use rgsslab::burgers::{BurgersProblem, Profile};
use rgsslab::nlo::{BeamBoundary, BeamProfile, Geometry};
use rgsslab::rgflow::BetaFunction1;

/// β = g² + 0.3 g³.
pub fn two_loop_beta() -> BetaFunction1 {
    BetaFunction1::polynomial(vec![0.0, 0.0, 1.0, 0.3])
}

pub fn gaussian_burgers() -> BurgersProblem {
    BurgersProblem::new(1.0, 0.5, Profile::gaussian(1.0, 1.0)).expect("valid problem")
}

pub fn cylindrical_beam() -> BeamBoundary {
    BeamBoundary::new(BeamProfile::Gaussian, 10.0, 0.05, 0.01, Geometry::Cylindrical).expect("valid beam")
}

/// Evenly spaced sample points on [lo, hi].
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1).max(1) as f64).collect()
}
