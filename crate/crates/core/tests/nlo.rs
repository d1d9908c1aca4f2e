use rgsslab::nlo::{
    default_probes, fs_residual, order_check, r9_coefficients, boundary_point, AlphaGrids, ApproxKind, BeamBoundary,
    BeamProfile, Geometry, HodographSpec, R9Surface, SFunction,
};
use rgsslab::IntegratorConfig;

fn spec() -> HodographSpec {
    HodographSpec { n_count: 11, w_count: 6, ..HodographSpec::default() }
}

#[test]
fn soliton_a_is_exact_for_every_alpha() {
    let probes = default_probes();
    for alpha in [0.1, 0.05, 0.025] {
        let grids = AlphaGrids::solve(&BeamProfile::Sech2, alpha, &spec()).unwrap();
        let r = fs_residual(ApproxKind::SolitonA, &grids, &probes).unwrap();
        assert!(r < 1e-10, "alpha={alpha}: {r}");
    }
}

#[test]
fn gauss_a_is_second_order() {
    let r = order_check(ApproxKind::GaussA, &[0.1, 0.05, 0.025], &default_probes(), &spec()).unwrap();
    assert!(r.slope >= 1.7, "slope {}", r.slope);
}

#[test]
fn geometric_focusing_without_nonlinearity() {
    let tt = 10.0;
    let b = BeamBoundary::new(BeamProfile::Gaussian, tt, 0.0, 0.0, Geometry::Cylindrical).unwrap();
    let s = R9Surface::new(&b, IntegratorConfig::default()).unwrap();
    for (t, x) in [(0.5, 0.5), (2.0, 1.0), (5.0, 0.3)] {
        let (v, n) = s.eval(t, x).unwrap();
        let x0 = x * tt / (tt - t);
        assert!((v + x / (tt - t)).abs() < 1e-9, "v at {t},{x}");
        assert!((n - b.profile.value(x0) * (tt / (tt - t)).powi(2)).abs() < 1e-9, "n at {t},{x}");
    }
}

#[test]
fn r9_is_transversal_to_the_boundary() {
    let b = BeamBoundary::new(BeamProfile::Gaussian, 10.0, 0.05, 0.01, Geometry::Cylindrical).unwrap();
    let s = SFunction::new(&b).unwrap();
    for x0 in [0.0, 0.3, 1.0, 2.5] {
        let c = r9_coefficients(&b, &s, boundary_point(&b, x0)).unwrap();
        assert_eq!(c[0], 1.0);
    }
}
