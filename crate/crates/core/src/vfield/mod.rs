//! Extended-space points, vector fields, Lie-equation flows and invariance
//! residuals.

mod field;
mod point;
mod sampler;

pub use field::{Coefficient, VectorField};
pub use point::Point;
pub use sampler::{numeric_partial, FnSampler, PartialFn, SamplerMode, SolutionSampler, ValueFn};

use crate::error::{Result, RgsError};
use crate::numerics::{derivative, dopri5, rk4_fixed, IntegratorConfig, NumDiffConfig};

fn field_system(field: &VectorField, start: &Point) -> Result<(Vec<String>, Vec<Coefficient>, Vec<f64>)> {
    field.check_point(start)?;
    let names: Vec<String> = field.variables().map(String::from).collect();
    let coeffs: Vec<Coefficient> = names.iter().map(|n| field.coefficient(n).expect("listed").clone()).collect();
    let y0 = names.iter().map(|n| start.get(n)).collect::<Result<Vec<_>>>()?;
    Ok((names, coeffs, y0))
}

fn rhs<'a>(
    names: &'a [String],
    coeffs: &'a [Coefficient],
    work: &'a mut Point,
) -> impl FnMut(f64, &[f64], &mut [f64]) + 'a {
    move |_, y, dy| {
        for (n, v) in names.iter().zip(y) {
            work.set(n, *v);
        }
        for (d, c) in dy.iter_mut().zip(coeffs) {
            *d = c(work);
        }
    }
}

/// Integrates d(coords)/dλ = coefficients from 0 to `lambda`.
/// `lambda == 0` returns the start point unchanged.
pub fn flow(field: &VectorField, start: &Point, lambda: f64, cfg: &IntegratorConfig) -> Result<Point> {
    if !start.is_finite() {
        return Err(RgsError::Precondition("start point has non-finite coordinates".into()));
    }
    let (names, coeffs, y0) = field_system(field, start)?;
    if lambda == 0.0 {
        return Ok(start.clone());
    }
    let mut work = start.clone();
    let y = dopri5(rhs(&names, &coeffs, &mut work), 0.0, &y0, lambda, cfg)?;
    let mut out = start.clone();
    for (n, v) in names.iter().zip(y) {
        out.set(n, v);
    }
    Ok(out)
}

/// Fixed-step RK4 flow; the independent oracle for [`flow`].
pub fn flow_rk4(field: &VectorField, start: &Point, lambda: f64, steps: usize) -> Result<Point> {
    let (names, coeffs, y0) = field_system(field, start)?;
    let mut work = start.clone();
    let y = rk4_fixed(rhs(&names, &coeffs, &mut work), 0.0, &y0, lambda, steps);
    let mut out = start.clone();
    for (n, v) in names.iter().zip(y) {
        out.set(n, v);
    }
    if !out.is_finite() {
        return Err(RgsError::BlowUp { reached: lambda });
    }
    Ok(out)
}

/// Points along the flow at the given increasing parameter values.
pub fn flow_trajectory(
    field: &VectorField,
    start: &Point,
    lambdas: &[f64],
    cfg: &IntegratorConfig,
) -> Result<Vec<Point>> {
    let mut out = Vec::with_capacity(lambdas.len());
    let mut cur = start.clone();
    let mut at = 0.0;
    for &l in lambdas {
        cur = flow(field, &cur, l - at, cfg)?;
        at = l;
        out.push(cur.clone());
    }
    Ok(out)
}

/// Max-norm of T(l2)T(l1)p − T(l1+l2)p.
pub fn compose_residual(
    field: &VectorField,
    start: &Point,
    l1: f64,
    l2: f64,
    cfg: &IntegratorConfig,
) -> Result<f64> {
    let two_step = flow(field, &flow(field, start, l1, cfg)?, l2, cfg)?;
    let one_step = flow(field, start, l1 + l2, cfg)?;
    Ok(two_step.max_distance(&one_step))
}

/// Numerical partial derivative of a point function in `var`.
pub fn numdiff<F>(f: F, p: &Point, var: &str, order: u8, nd: &NumDiffConfig) -> Result<f64>
where
    F: Fn(&Point) -> Result<f64>,
{
    let x = p.get(var)?;
    let mut q = p.clone();
    derivative(
        |v| {
            q.set(var, v);
            f(&q)
        },
        x,
        order,
        nd,
        var,
    )
}

/// Canonical coordinates κ_j = η_j − Σᵢ ξᵢ ∂u_j/∂xᵢ at `p`; dependents are set
/// from the sampler before the coefficients are evaluated.
pub fn canonical_residual(field: &VectorField, sol: &dyn SolutionSampler, p: &Point) -> Result<Vec<f64>> {
    let deps = sol.dependents();
    let vals = sol.value(p)?;
    let mut pp = p.clone();
    for (n, v) in deps.iter().zip(&vals) {
        pp.set(n, *v);
    }
    field.check_point(&pp)?;
    let mut out = Vec::with_capacity(deps.len());
    for (j, dep) in deps.iter().enumerate() {
        let mut k = field.coefficient_at(dep, &pp);
        for var in field.variables() {
            if deps.iter().any(|d| d == var) {
                continue;
            }
            let xi = field.coefficient_at(var, &pp);
            if xi == 0.0 {
                continue;
            }
            k -= xi * sol.partial(&pp, var, j, 1)?;
        }
        out.push(k);
    }
    Ok(out)
}

/// R C − φ·C for a scalar candidate covariant `c`.
pub fn covariant_residual<P>(field: &VectorField, c: &dyn SolutionSampler, phi: P, p: &Point) -> Result<f64>
where
    P: Fn(&Point) -> f64,
{
    field.check_point(p)?;
    let deps = c.dependents();
    let cv = c.value(p)?[0];
    let mut rc = 0.0;
    for var in field.variables() {
        if deps.iter().any(|d| d == var) {
            continue;
        }
        let xi = field.coefficient_at(var, p);
        if xi != 0.0 {
            rc += xi * c.partial(p, var, 0, 1)?;
        }
    }
    Ok(rc - phi(p) * cv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn beta_field(beta: impl Fn(f64) -> f64 + Send + Sync + 'static) -> VectorField {
        VectorField::new("lambda").with_constant("l", -1.0).with("g", move |p| beta(p.val("g")))
    }

    fn cfg() -> IntegratorConfig {
        IntegratorConfig::default()
    }

    #[test]
    fn square_beta_flow_closed_form() {
        let p = Point::new().with("l", 0.0).with("g", 0.5);
        let q = flow(&beta_field(|g| g * g), &p, 1.0, &cfg()).unwrap();
        assert!((q.get("l").unwrap() + 1.0).abs() < 1e-12);
        assert!((q.get("g").unwrap() - 1.0).abs() < 1e-9);
        let r = flow_rk4(&beta_field(|g| g * g), &p, 1.0, 4000).unwrap();
        assert!(q.max_distance(&r) < 1e-9);
    }

    #[test]
    fn zero_lambda_is_identity() {
        let p = Point::new().with("l", 0.1).with("g", 0.123456789);
        let q = flow(&beta_field(|g| g * g), &p, 0.0, &cfg()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn translation_only() {
        let p = Point::new().with("l", 2.0).with("g", 0.7);
        let q = flow(&beta_field(|_| 0.0), &p, 3.0, &cfg()).unwrap();
        assert!((q.get("l").unwrap() + 1.0).abs() < 1e-12);
        assert_eq!(q.get("g").unwrap(), 0.7);
    }

    #[test]
    fn blow_up_reports_reached_parameter() {
        let p = Point::new().with("l", 0.0).with("g", 1.0);
        match flow(&beta_field(|g| g * g), &p, 2.0, &cfg()) {
            Err(RgsError::BlowUp { reached }) => assert!((reached - 1.0).abs() < 1e-3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_variable() {
        let p = Point::new().with("g", 1.0);
        assert_eq!(flow(&beta_field(|g| g), &p, 1.0, &cfg()), Err(RgsError::MissingVariable("l".into())));
    }

    #[test]
    fn compose_examples() {
        let p = Point::new().with("l", 0.0).with("g", 0.3);
        assert!(compose_residual(&beta_field(|g| g * g), &p, 0.5, 0.7, &cfg()).unwrap() <= 1e-8);
        assert!(compose_residual(&beta_field(|g| g * g), &p, 0.0, 0.7, &cfg()).unwrap() <= 1e-15);
        let p = Point::new().with("l", 0.0).with("g", 0.1);
        assert!(compose_residual(&beta_field(|g| 2.0 * g), &p, 1.0, 1.0, &cfg()).unwrap() <= 1e-8);
    }

    #[test]
    fn inverse_flow() {
        let p = Point::new().with("l", 0.3).with("g", 0.2);
        let f = beta_field(|g| g * g + 0.3 * g * g * g);
        let q = flow(&f, &flow(&f, &p, 1.5, &cfg()).unwrap(), -1.5, &cfg()).unwrap();
        assert!(p.max_distance(&q) < 1e-9);
    }

    fn r_operator(sign: f64) -> VectorField {
        VectorField::new("lambda").with_constant("l", 1.0).with("g", move |p| -sign * p.val("g").powi(2))
    }

    #[test]
    fn invariant_coupling_is_annihilated() {
        let inv = FnSampler::scalar("I", |p| {
            let (l, g) = (p.val("l"), p.val("g"));
            g / (1.0 - g * l)
        });
        let p = Point::new().with("l", 0.4).with("g", 0.6);
        let k = canonical_residual(&r_operator(1.0), &inv, &p).unwrap();
        assert!(k[0].abs() < 1e-9, "{k:?}");
        // g/(1+gℓ) is invariant under the opposite-sign operator ∂ℓ + g²∂g.
        let inv2 = FnSampler::scalar("I", |p| {
            let (l, g) = (p.val("l"), p.val("g"));
            g / (1.0 + g * l)
        });
        assert!(canonical_residual(&r_operator(-1.0), &inv2, &p).unwrap()[0].abs() < 1e-9);
        assert!(canonical_residual(&r_operator(1.0), &inv2, &p).unwrap()[0].abs() > 1e-2);
    }

    #[test]
    fn non_invariant_and_constant() {
        let p = Point::new().with("l", 0.4).with("g", 0.6);
        let ell = FnSampler::scalar("I", |p| p.val("l"));
        let k = canonical_residual(&r_operator(1.0), &ell, &p).unwrap();
        assert!((k[0] + 1.0).abs() < 1e-10);
        let c = FnSampler::scalar("I", |_| 3.0);
        assert_eq!(canonical_residual(&r_operator(1.0), &c, &p).unwrap()[0], 0.0);
    }

    #[test]
    fn covariant_examples() {
        let p = Point::new().with("l", 0.3).with("g", 0.4);
        let cov = FnSampler::scalar("C", |p| {
            let (l, g) = (p.val("l"), p.val("g"));
            let inv = g / (1.0 - g * l);
            l.exp() * (1.0 + inv * inv).sqrt()
        });
        let r = covariant_residual(&r_operator(1.0), &cov, |_| 1.0, &p).unwrap();
        assert!(r.abs() <= 1e-6, "{r}");
        let one = FnSampler::scalar("C", |_| 1.0);
        assert_eq!(covariant_residual(&r_operator(1.0), &one, |_| 1.0, &p).unwrap(), -1.0);
        let inv = FnSampler::scalar("C", |p| p.val("g") / (1.0 - p.val("g") * p.val("l")));
        assert!(covariant_residual(&r_operator(1.0), &inv, |_| 0.0, &p).unwrap().abs() < 1e-9);
    }

    #[test]
    fn residual_linear_in_field() {
        let p = Point::new().with("l", 0.4).with("g", 0.6);
        let sol = FnSampler::scalar("I", |p| p.val("l").sin() * p.val("g"));
        let f1 = r_operator(1.0);
        let f2 = VectorField::new("lambda").with("l", |p| p.val("g")).with_constant("g", 0.5);
        let a = canonical_residual(&f1, &sol, &p).unwrap()[0];
        let b = canonical_residual(&f2, &sol, &p).unwrap()[0];
        let c = canonical_residual(&f1.sum(&f2), &sol, &p).unwrap()[0];
        assert!((a + b - c).abs() < 1e-12);
    }

    #[test]
    fn point_numdiff() {
        let p = Point::new().with("x", 2.0);
        let d = numdiff(|q| Ok(q.get("x")?.powi(2)), &p, "x", 1, &NumDiffConfig::default()).unwrap();
        assert!((d - 4.0).abs() < 1e-9);
    }
}
