use std::f64::consts::PI;

use proptest::prelude::*;
use rgsslab::plasma::{airy, oracle, pde_residual, q_cold, q_hot, scorer, PlasmaConfig, Regime};
use rgsslab::RgsError;

#[test]
fn airy_reference_values() {
    // Abramowitz & Stegun, table 10.11
    let cases = [
        (0.0, 0.355_028_053_887_817_2, -0.258_819_403_792_806_8),
        (1.0, 0.135_292_416_312_881_4, -0.159_147_441_296_793_2),
        (-2.0, 0.227_407_428_201_685_6, 0.618_259_020_741_691_6),
    ];
    for (mu, ai, aip) in cases {
        let (v, d) = airy(mu).unwrap();
        assert!((v - ai).abs() < 1e-12, "Ai({mu}) = {v}");
        assert!((d - aip).abs() < 1e-12, "Ai'({mu}) = {d}");
    }
}

#[test]
fn scorer_at_origin() {
    // Gi(0) = Bi(0)/3, Gi'(0) = Bi'(0)/3
    let (g, gp) = scorer(0.0).unwrap();
    assert!((g - 0.614_926_627_446_000_7 / 3.0).abs() < 1e-12, "{g}");
    assert!((gp - 0.448_288_357_353_826_4 / 3.0).abs() < 1e-12, "{gp}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn special_functions_match_oracles(mu in -5.0f64..5.0) {
        let (a, ap) = airy(mu).unwrap();
        let (ra, rap) = oracle::airy_rk4(mu);
        prop_assert!((a - ra).abs() < 1e-9 && (ap - rap).abs() < 1e-9);
        let (g, gp) = scorer(mu).unwrap();
        let (rg, rgp) = oracle::scorer_rk4(mu);
        prop_assert!((g - rg).abs() < 1e-9 && (gp - rgp).abs() < 1e-9);
        let q = q_hot(mu).unwrap();
        let (c, s) = oracle::cubic_phase_integrals(mu);
        prop_assert!((q.q1 - c).abs() < 1e-8 && (q.q2 - s).abs() < 1e-8);
        prop_assert!((q.q1 - PI * a).abs() < 1e-15);
    }

    #[test]
    fn airy_equation_holds(mu in -4.0f64..4.0) {
        let h = 1e-3;
        let f = |m: f64| airy(m).unwrap().0;
        let second = (f(mu + h) - 2.0 * f(mu) + f(mu - h)) / (h * h);
        prop_assert!((second - mu * f(mu)).abs() < 1e-6);
    }

    #[test]
    fn hot_regime_is_exact_off_fold(mu in -2.0f64..2.0, t in 0.0f64..(2.0 * PI), a in 0.0f64..0.5) {
        let cfg = PlasmaConfig::new(Regime::Hot, a).unwrap();
        match pde_residual(&cfg, mu, t) {
            Ok((r1, r2)) => prop_assert!(r1.abs() < 1e-8 && r2.abs() < 1e-8),
            Err(RgsError::FoldEncountered { .. }) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}

#[test]
fn cold_profile_is_lorentzian() {
    let q = q_cold(2.0);
    assert!((q.q1 - 0.2).abs() < 1e-15 && (q.q2 - 0.4).abs() < 1e-15);
}

#[test]
fn outside_window_is_an_error() {
    assert!(airy(100.0).is_err());
}
