use proptest::prelude::*;
use rgsslab::rgflow::{effective_coupling, functional_equation_residual, BetaFunction1, EffectiveCoupling};
use rgsslab::vfield::{compose_residual, flow};
use rgsslab::{IntegratorConfig, Point};

fn betas() -> Vec<BetaFunction1> {
    vec![
        BetaFunction1::linear(1.5),
        BetaFunction1::polynomial(vec![0.0, 0.0, 1.0]),
        BetaFunction1::polynomial(vec![0.0, 0.0, 1.0, 0.3]),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_law_holds(g in -0.4f64..0.4, l1 in -1.0f64..1.0, l2 in -1.0f64..1.0) {
        let cfg = IntegratorConfig::default();
        for b in betas() {
            let p = Point::from_pairs(&[("g", g)]);
            if let Ok(r) = compose_residual(&b.field(), &p, l1, l2, &cfg) {
                prop_assert!(r <= 1e-8, "{r}");
            }
        }
    }

    #[test]
    fn flow_is_invertible(g in -0.3f64..0.3, l in -0.8f64..0.8) {
        let cfg = IntegratorConfig::default();
        let f = BetaFunction1::polynomial(vec![0.0, 0.0, 1.0, 0.3]).field();
        let p = Point::from_pairs(&[("g", g)]);
        let back = flow(&f, &flow(&f, &p, l, &cfg).unwrap(), -l, &cfg).unwrap();
        prop_assert!(back.max_distance(&p) < 1e-10);
    }

    #[test]
    fn linear_beta_is_powerlike(lx in -2.3f64..2.3, g in 0.05f64..0.4) {
        let x = lx.exp();
        let u = effective_coupling(&BetaFunction1::linear(1.5), x, g, &IntegratorConfig::default()).unwrap();
        let exact = g * x.powf(1.5);
        prop_assert!(((u - exact) / exact).abs() < 1e-9);
    }

    #[test]
    fn functional_equation(lx in -0.7f64..0.7, la in -0.7f64..0.7, g in 0.05f64..0.3) {
        let ec = EffectiveCoupling::from_beta(BetaFunction1::polynomial(vec![0.0, 0.0, 1.0]), IntegratorConfig::default());
        let r = functional_equation_residual(&ec, lx.exp(), la.exp(), g).unwrap();
        prop_assert!(r.abs() < 1e-8);
    }
}

#[test]
fn one_loop_coupling_closed_form() {
    // β = g² with x dg/dx = β: ḡ = g/(1 − g ln x)
    let b = BetaFunction1::polynomial(vec![0.0, 0.0, 1.0]);
    for (x, g) in [(2.0, 0.3), (0.5, -0.2), (5.0, 0.1)] {
        let u = effective_coupling(&b, x, g, &IntegratorConfig::default()).unwrap();
        let exact = g / (1.0 - g * f64::ln(x));
        assert!((u - exact).abs() < 1e-10, "{x} {g}: {u} vs {exact}");
    }
}
