//! Cauchy problem u_t = f(u), u(τ) = x with f = a u² + b u³ + c u⁴: embedding
//! equation, RG operators R1–R4, FS residual and flow-based reconstruction.

use serde::{Deserialize, Serialize};

use crate::error::{Result, RgsError};
use crate::numerics::{bracketed, dopri5, integrate_adaptive, IntegratorConfig};
use crate::vfield::{flow, FnSampler, Point, SolutionSampler, VectorField};
use crate::NumDiffConfig;

/// f(u) = a u² + b u³ + c u⁴.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolyRhs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl PolyRhs {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        Self { a, b, c }
    }

    pub fn eval(&self, u: f64) -> f64 {
        poly(self.a, self.b, self.c, u)
    }

    /// Real zeros of f (always includes 0), sorted.
    pub fn zeros(&self) -> Vec<f64> {
        let mut z = vec![0.0];
        let (a, b, c) = (self.a, self.b, self.c);
        if c != 0.0 {
            let disc = b * b - 4.0 * a * c;
            if disc >= 0.0 {
                let q = -0.5 * (b + b.signum() * disc.sqrt());
                let q = if q == 0.0 { -0.5 * disc.sqrt() } else { q };
                z.push(q / c);
                if q != 0.0 {
                    z.push(a / q);
                }
            }
        } else if b != 0.0 {
            z.push(-a / b);
        }
        z.retain(|v| v.is_finite());
        z.sort_by(f64::total_cmp);
        z.dedup();
        z
    }

    fn from_point(p: &Point) -> Self {
        Self::new(p.val("a"), p.val("b"), p.val("c"))
    }

    fn point(&self, data: &CauchyData, t: f64, u: f64) -> Point {
        Point::new()
            .with("t", t)
            .with("tau", data.tau)
            .with("x", data.x)
            .with("a", self.a)
            .with("b", self.b)
            .with("c", self.c)
            .with("u", u)
    }
}

fn poly(a: f64, b: f64, c: f64, u: f64) -> f64 {
    u * u * (a + u * (b + u * c))
}

/// Reference time τ and value x = u(τ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CauchyData {
    pub tau: f64,
    pub x: f64,
}

impl CauchyData {
    pub fn new(tau: f64, x: f64) -> Self {
        Self { tau, x }
    }
}

/// Brute-force oracle: adaptive integration from τ to t.
pub fn direct_solve(rhs: &PolyRhs, data: &CauchyData, t: f64, cfg: &IntegratorConfig) -> Result<f64> {
    let r = *rhs;
    let y = dopri5(|_, y, dy| dy[0] = r.eval(y[0]), data.tau, &[data.x], t, cfg)?;
    Ok(y[0])
}

/// u_τ + f(x)·u_x for a two-parameter family u(t; τ, x) given by `sol`.
pub fn embedding_residual(sol: &dyn SolutionSampler, rhs: &PolyRhs, p: &Point) -> Result<f64> {
    let x = p.get("x")?;
    let u_tau = sol.partial(p, "tau", 0, 1)?;
    let u_x = sol.partial(p, "x", 0, 1)?;
    Ok(u_tau + rhs.eval(x) * u_x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RgKind {
    R1,
    R2,
    R3,
    R4,
}

/// Which parameter derivative f_k enters the bracket ⟨f_k/f²⟩.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamDerivative {
    A,
    B,
    C,
}

impl ParamDerivative {
    fn power(self) -> i32 {
        match self {
            ParamDerivative::A => 2,
            ParamDerivative::B => 3,
            ParamDerivative::C => 4,
        }
    }

    fn name(self) -> &'static str {
        match self {
            ParamDerivative::A => "a",
            ParamDerivative::B => "b",
            ParamDerivative::C => "c",
        }
    }
}

/// Indefinite integrals ⟨g⟩(z) realised as ∫_{anchor}^{z} g.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Anchor {
    pub u0: f64,
}

impl Default for Anchor {
    fn default() -> Self {
        Self { u0: 1.0 }
    }
}

impl Anchor {
    fn check_side(&self, rhs: &PolyRhs, z: f64) -> Result<()> {
        let (lo, hi) = if z < self.u0 { (z, self.u0) } else { (self.u0, z) };
        if let Some(zero) = rhs.zeros().into_iter().find(|r| *r >= lo && *r <= hi) {
            return Err(RgsError::QuadratureSingularity { at: zero });
        }
        Ok(())
    }

    /// ∫_{u0}^{z} f_k(s)/f(s)² ds.
    pub fn bracket(&self, rhs: &PolyRhs, k: ParamDerivative, z: f64) -> Result<f64> {
        self.check_side(rhs, z)?;
        let r = *rhs;
        let p = k.power();
        integrate_adaptive(|s| s.powi(p) / r.eval(s).powi(2), self.u0, z, 1e-15, 1e-13)
    }

    /// F(z) = ∫_{u0}^{z} ds/f(s).
    pub fn primitive(&self, rhs: &PolyRhs, z: f64) -> Result<f64> {
        self.check_side(rhs, z)?;
        let r = *rhs;
        integrate_adaptive(|s| 1.0 / r.eval(s), self.u0, z, 1e-15, 1e-13)
    }
}

/// RG operator over {t, τ, x, a, b, c, u}; the group parameter `lambda`
/// advances a (R1), b (R3) or c (R4), and contracts b for R2.
pub fn rg_operator(which: RgKind, rhs: &PolyRhs, anchor: Anchor) -> Result<VectorField> {
    match which {
        RgKind::R1 => {
            if rhs.b != 0.0 || rhs.c != 0.0 {
                return Err(RgsError::ConstraintViolated("R1 requires b = c = 0".into()));
            }
            Ok(VectorField::new("lambda")
                .with("x", |p| p.val("x").powi(2) * p.val("tau"))
                .with_constant("a", 1.0)
                .with("u", |p| p.val("u").powi(2) * p.val("t")))
        }
        RgKind::R2 => {
            if rhs.a != 1.0 || rhs.c != 0.0 {
                return Err(RgsError::ConstraintViolated("R2 requires a = 1, c = 0".into()));
            }
            Ok(r2_field())
        }
        RgKind::R3 => Ok(bracket_operator(ParamDerivative::B, anchor)),
        RgKind::R4 => Ok(bracket_operator(ParamDerivative::C, anchor)),
    }
}

fn r2_field() -> VectorField {
    VectorField::new("lambda")
        .with("x", |p| {
            let (x, b) = (p.val("x"), p.val("b"));
            x * x * (1.0 + b * x) * p.val("tau") + x
        })
        .with("u", |p| {
            let (u, b) = (p.val("u"), p.val("b"));
            u * u * (1.0 + b * u) * p.val("t") + u
        })
        .with("b", |p| -p.val("b"))
}

fn bracket_operator(k: ParamDerivative, anchor: Anchor) -> VectorField {
    VectorField::new("lambda")
        .with("t", move |p| -anchor.bracket(&PolyRhs::from_point(p), k, p.val("u")).unwrap_or(f64::NAN))
        .with("tau", move |p| -anchor.bracket(&PolyRhs::from_point(p), k, p.val("x")).unwrap_or(f64::NAN))
        .with_constant(k.name(), 1.0)
}

/// Point-symmetry operators X1…X7 of the embedded problem.
pub fn x_operator(k: u8, anchor: Anchor) -> Result<VectorField> {
    let f_u = |p: &Point| PolyRhs::from_point(p).eval(p.val("u"));
    let f_x = |p: &Point| PolyRhs::from_point(p).eval(p.val("x"));
    let field = VectorField::new("lambda");
    Ok(match k {
        1 => field.with_constant("t", 1.0).with("u", f_u),
        2 => field.with_constant("tau", 1.0).with("x", f_x),
        3 => field.with("u", f_u),
        4 => field.with("x", f_x),
        5..=7 => {
            let d = [ParamDerivative::A, ParamDerivative::B, ParamDerivative::C][(k - 5) as usize];
            field
                .with("x", move |p| {
                    let r = PolyRhs::from_point(p);
                    r.eval(p.val("x")) * anchor.bracket(&r, d, p.val("x")).unwrap_or(f64::NAN)
                })
                .with("u", move |p| {
                    let r = PolyRhs::from_point(p);
                    r.eval(p.val("u")) * anchor.bracket(&r, d, p.val("u")).unwrap_or(f64::NAN)
                })
                .with_constant(d.name(), 1.0)
        }
        _ => return Err(RgsError::Precondition(format!("no operator X{k}"))),
    })
}

/// u(t) for b = c = 0 from the R1 flow: pull x back to a = 0, start from the
/// unperturbed solution u = x there, and flow forward to `a`.
pub fn reconstruct_via_r1(t: f64, data: &CauchyData, a: f64, cfg: &IntegratorConfig) -> Result<f64> {
    // The pull-back moves x along x/(1 − xτλ); it passes x = ∞ unless 1 + a x τ > 0.
    if 1.0 + a * data.x * data.tau <= 0.0 {
        return Err(RgsError::ConstraintViolated("R1 pull-back to a = 0 requires 1 + a x τ > 0".into()));
    }
    let field = rg_operator(RgKind::R1, &PolyRhs::new(a, 0.0, 0.0), Anchor::default())?;
    let target = PolyRhs::new(a, 0.0, 0.0).point(data, t, 0.0);
    let base = flow(&field, &target, -a, cfg)?;
    let mut start = base.clone();
    start.set("u", base.get("x")?);
    let end = flow(&field, &start, a, cfg)?;
    end.get("u")
}

/// Perturbation theory in b about the a = 1 solution, through second order.
pub fn perturbative_b(t: f64, data: &CauchyData, b: f64) -> f64 {
    let x = data.x;
    let y = 1.0 - x * (t - data.tau);
    let l = y.ln();
    let u0 = x / y;
    let u1 = -u0 * u0 * l;
    let h = -x * ((-l * l + l + 1.0) / y - 1.0);
    u0 + b * u1 + b * b * u0 * u0 * h
}

/// Length of the R2 pull-back used by [`reconstruct_via_r2`].
pub const R2_PULLBACK: f64 = 10.0;

/// u(t) at a = 1, c = 0 and the given b from the R2 flow.
///
/// The R2 orbit contracts b like e^{−λ}; the target is pulled back by
/// [`R2_PULLBACK`] to b·e^{−Λ}, seeded with perturbation theory there and
/// flowed back. The orbit of x stays finite only when x·τ < 0 and t·τ > 0.
pub fn reconstruct_via_r2(t: f64, data: &CauchyData, b: f64, cfg: &IntegratorConfig) -> Result<f64> {
    if !(data.x * data.tau < 0.0 && t * data.tau > 0.0) {
        return Err(RgsError::ConstraintViolated(
            "R2 continuation needs x·τ < 0 and t·τ > 0 (otherwise the orbit passes x = ∞)".into(),
        ));
    }
    let field = r2_field();
    let target = PolyRhs::new(1.0, b, 0.0).point(data, t, data.x);
    let pulled = flow(&field, &target, R2_PULLBACK, cfg)?;
    let seed_data = CauchyData::new(data.tau, pulled.get("x")?);
    let b_s = pulled.get("b")?;
    let mut seed = pulled.clone();
    seed.set("u", perturbative_b(t, &seed_data, b_s));
    let back = flow(&field, &seed, -R2_PULLBACK, cfg)?;
    back.get("u")
}

/// Root of F(u) − F(x) = t − τ with F = ⟨1/f⟩.
pub fn reconstruct_implicit(rhs: &PolyRhs, data: &CauchyData, t: f64, anchor: Anchor) -> Result<f64> {
    let x = data.x;
    let target = t - data.tau;
    let fx = rhs.eval(x);
    if target == 0.0 || fx == 0.0 {
        return Ok(x);
    }
    let fx_anchor = anchor.primitive(rhs, x)?;
    let g = |u: f64| -> f64 {
        match anchor.primitive(rhs, u) {
            Ok(v) => v - fx_anchor - target,
            Err(_) => f64::NAN,
        }
    };
    let dir = fx.signum() * target.signum();
    let zeros = rhs.zeros();
    let wall = if dir > 0.0 {
        zeros.iter().copied().filter(|z| *z > x).fold(f64::INFINITY, f64::min)
    } else {
        zeros.iter().copied().filter(|z| *z < x).fold(f64::NEG_INFINITY, f64::max)
    };
    // G is monotone between zeros of f, with sign(G(x)) = −sign(target).
    let mut lo = x;
    let mut k = 1;
    loop {
        let hi = if wall.is_finite() {
            wall - (wall - x) * 0.5f64.powi(k)
        } else {
            x + dir * (0.1 * x.abs().max(1.0)) * 2f64.powi(k - 1)
        };
        if hi.abs() > 1e12 || k > 200 || hi == wall {
            return Err(RgsError::NoRootInBracket { lo: x, hi });
        }
        let gh = g(hi);
        if gh.is_nan() {
            return Err(RgsError::QuadratureSingularity { at: hi });
        }
        if gh.signum() == target.signum() || gh == 0.0 {
            let (a, b) = if lo < hi { (lo, hi) } else { (hi, lo) };
            return bracketed(g, a, b, 1e-15);
        }
        lo = hi;
        k += 1;
    }
}

/// t·u² − x²τ·u_x − u_a for a sampler of u(t, τ, x, a).
pub fn fs_residual_r1(sol: &dyn SolutionSampler, p: &Point) -> Result<f64> {
    let (t, tau, x) = (p.get("t")?, p.get("tau")?, p.get("x")?);
    let u = sol.value(p)?[0];
    let u_x = sol.partial(p, "x", 0, 1)?;
    let u_a = sol.partial(p, "a", 0, 1)?;
    Ok(t * u * u - x * x * tau * u_x - u_a)
}

/// Flows the solution configuration along `field` by λ and compares the
/// flowed u with a direct re-solve of the transformed Cauchy problem.
pub fn solution_transport_check(
    field: &VectorField,
    rhs: &PolyRhs,
    data: &CauchyData,
    t: f64,
    lambda: f64,
    cfg: &IntegratorConfig,
) -> Result<f64> {
    let u = direct_solve(rhs, data, t, cfg)?;
    let start = rhs.point(data, t, u);
    let end = flow(field, &start, lambda, cfg)?;
    let rhs2 = PolyRhs::from_point(&end);
    let data2 = CauchyData::new(end.get("tau")?, end.get("x")?);
    let resolved = direct_solve(&rhs2, &data2, end.get("t")?, cfg)?;
    Ok((end.get("u")? - resolved).abs())
}

/// Closed-form a-only family u = x/(1 − a x (t − τ)).
pub fn r1_exact(t: f64, tau: f64, x: f64, a: f64) -> f64 {
    x / (1.0 - a * x * (t - tau))
}

/// Numerically differentiated sampler of u(t, τ, x, a, b, c) via `direct_solve`;
/// absent b, c default to 0.
pub fn direct_sampler(cfg: IntegratorConfig, nd: NumDiffConfig) -> FnSampler {
    FnSampler::numeric(
        &["u"],
        move |p| {
            let rhs = PolyRhs::new(p.get("a")?, p.get("b").unwrap_or(0.0), p.get("c").unwrap_or(0.0));
            Ok(vec![direct_solve(&rhs, &CauchyData::new(p.get("tau")?, p.get("x")?), p.get("t")?, &cfg)?])
        },
        nd,
    )
}

/// Sampler of the R1 reconstruction (numerically differentiated).
pub fn r1_sampler(cfg: IntegratorConfig, nd: NumDiffConfig) -> FnSampler {
    FnSampler::numeric(
        &["u"],
        move |p| {
            let data = CauchyData::new(p.get("tau")?, p.get("x")?);
            Ok(vec![reconstruct_via_r1(p.get("t")?, &data, p.get("a")?, &cfg)?])
        },
        nd,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> IntegratorConfig {
        IntegratorConfig::default()
    }

    #[test]
    fn direct_solve_examples() {
        let d = CauchyData::new(0.0, 1.0);
        assert_eq!(direct_solve(&PolyRhs::new(0.0, 0.0, 0.0), &d, 3.0, &cfg()).unwrap(), 1.0);
        assert!((direct_solve(&PolyRhs::new(1.0, 0.0, 0.0), &d, 0.5, &cfg()).unwrap() - 2.0).abs() < 1e-9);
        match direct_solve(&PolyRhs::new(1.0, 0.0, 0.0), &d, 1.5, &cfg()) {
            Err(RgsError::BlowUp { reached }) => assert!((reached - 1.0).abs() < 1e-3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zeros_of_rhs() {
        assert_eq!(PolyRhs::new(1.0, 0.0, 0.0).zeros(), vec![0.0]);
        let z = PolyRhs::new(-2.0, 1.0, 0.0).zeros();
        assert_eq!(z, vec![0.0, 2.0]);
        let z = PolyRhs::new(2.0, -3.0, 1.0).zeros();
        assert!((z[1] - 1.0).abs() < 1e-15 && (z[2] - 2.0).abs() < 1e-15);
    }

    fn exact_family() -> FnSampler {
        FnSampler::scalar("u", |p| r1_exact(p.val("t"), p.val("tau"), p.val("x"), p.val("a")))
    }

    #[test]
    fn embedding_residual_examples() {
        let rhs = PolyRhs::new(1.0, 0.0, 0.0);
        let p = Point::new().with("t", 0.4).with("tau", 0.1).with("x", 0.8).with("a", 1.0);
        assert!(embedding_residual(&exact_family(), &rhs, &p).unwrap().abs() <= 1e-7);
        let c = FnSampler::scalar("u", |_| 2.0);
        assert_eq!(embedding_residual(&c, &rhs, &p).unwrap(), 0.0);
        let ux = FnSampler::scalar("u", |p| p.val("x"));
        assert!((embedding_residual(&ux, &rhs, &p).unwrap() - 0.64).abs() < 1e-10);
    }

    #[test]
    fn operator_coefficients() {
        let r1 = rg_operator(RgKind::R1, &PolyRhs::new(1.0, 0.0, 0.0), Anchor::default()).unwrap();
        let p = Point::new().with("x", 2.0).with("tau", 1.0).with("t", 3.0).with("u", 0.5);
        assert_eq!(r1.coefficient_at("x", &p), 4.0);
        assert_eq!(r1.coefficient_at("a", &p), 1.0);
        assert_eq!(r1.coefficient_at("u", &p), 0.75);
        let r2 = rg_operator(RgKind::R2, &PolyRhs::new(1.0, 0.5, 0.0), Anchor::default()).unwrap();
        let p = Point::new().with("x", 1.0).with("tau", 0.0).with("u", 1.0).with("t", 0.0).with("b", 0.5);
        assert_eq!(r2.coefficient_at("x", &p), 1.0);
        assert_eq!(r2.coefficient_at("u", &p), 1.0);
        assert_eq!(r2.coefficient_at("b", &p), -0.5);
        assert!(matches!(
            rg_operator(RgKind::R1, &PolyRhs::new(1.0, 0.1, 0.0), Anchor::default()),
            Err(RgsError::ConstraintViolated(_))
        ));
    }

    #[test]
    fn r3_coefficient_difference_is_anchor_free() {
        let p = Point::new()
            .with("t", 0.0)
            .with("tau", 0.0)
            .with("x", 0.5)
            .with("a", 1.0)
            .with("b", 0.0)
            .with("c", 0.0)
            .with("u", 2.0);
        for u0 in [1.0, 0.3, 7.0] {
            let r3 = rg_operator(RgKind::R3, &PolyRhs::new(1.0, 0.0, 0.0), Anchor { u0 }).unwrap();
            let d = r3.coefficient_at("t", &p) - r3.coefficient_at("tau", &p);
            assert!((d + (2.0f64 / 0.5).ln()).abs() < 1e-12, "{d}");
        }
    }

    #[test]
    fn r1_reconstruction() {
        let d = CauchyData::new(0.0, 1.0);
        assert!((reconstruct_via_r1(0.5, &d, 1.0, &cfg()).unwrap() - 2.0).abs() < 1e-10);
        assert_eq!(reconstruct_via_r1(0.0, &d, 1.0, &cfg()).unwrap(), 1.0);
        assert_eq!(reconstruct_via_r1(0.7, &d, 0.0, &cfg()).unwrap(), 1.0);
    }

    #[test]
    fn implicit_reconstruction() {
        let d = CauchyData::new(0.0, 1.0);
        let v = reconstruct_implicit(&PolyRhs::new(1.0, 0.0, 0.0), &d, 0.5, Anchor::default()).unwrap();
        assert!((v - 2.0).abs() < 1e-10);
        let rhs = PolyRhs::new(1.0, 0.3, 0.1);
        let d = CauchyData::new(0.0, 0.5);
        let v = reconstruct_implicit(&rhs, &d, 0.4, Anchor::default()).unwrap();
        let o = direct_solve(&rhs, &d, 0.4, &cfg()).unwrap();
        assert!((v - o).abs() <= 1e-7 * o.abs(), "{v} {o}");
        assert_eq!(reconstruct_implicit(&rhs, &d, 0.0, Anchor::default()).unwrap(), 0.5);
    }

    #[test]
    fn implicit_blow_up_and_backward() {
        let rhs = PolyRhs::new(1.0, 0.0, 0.0);
        let d = CauchyData::new(0.0, 1.0);
        assert!(matches!(
            reconstruct_implicit(&rhs, &d, 2.0, Anchor::default()),
            Err(RgsError::NoRootInBracket { .. })
        ));
        // Backward in time the solution approaches the zero of f at u = 0.
        let v = reconstruct_implicit(&rhs, &d, -3.0, Anchor::default()).unwrap();
        assert!((v - 0.25).abs() < 1e-10);
    }

    #[test]
    fn implicit_anchor_across_zero() {
        let rhs = PolyRhs::new(1.0, 0.0, 0.0);
        let d = CauchyData::new(0.0, -1.0);
        assert!(matches!(
            reconstruct_implicit(&rhs, &d, 0.3, Anchor { u0: 1.0 }),
            Err(RgsError::QuadratureSingularity { .. })
        ));
        let v = reconstruct_implicit(&rhs, &d, 0.3, Anchor { u0: -2.0 }).unwrap();
        assert!((v - r1_exact(0.3, 0.0, -1.0, 1.0)).abs() < 1e-10);
    }

    #[test]
    fn fs_residual_examples() {
        let p = Point::new().with("t", 0.6).with("tau", 0.2).with("x", 0.7).with("a", 0.9);
        assert!(fs_residual_r1(&exact_family(), &p).unwrap().abs() <= 1e-6);
        let c = FnSampler::scalar("u", |_| 1.5);
        let p0 = p.clone().with("tau", 0.0);
        assert!((fs_residual_r1(&c, &p0).unwrap() - 0.6 * 2.25).abs() < 1e-12);
        // First-order perturbation theory: residual O(a).
        let pt = FnSampler::scalar("u", |p| {
            let x = p.val("x");
            x + p.val("a") * x * x * (p.val("t") - p.val("tau"))
        });
        let r1 = fs_residual_r1(&pt, &p.clone().with("a", 0.1)).unwrap().abs();
        let r2 = fs_residual_r1(&pt, &p.clone().with("a", 0.05)).unwrap().abs();
        assert!(r1 > 0.0 && (r1 / r2 - 2.0).abs() < 0.2, "{r1} {r2}");
    }

    #[test]
    fn perturbative_seed_order() {
        let d = CauchyData::new(-1.0, 0.5);
        let e = |b: f64| {
            let o = direct_solve(&PolyRhs::new(1.0, b, 0.0), &d, -0.3, &cfg()).unwrap();
            (o - perturbative_b(-0.3, &d, b)).abs()
        };
        let ratio = e(0.02) / e(0.01);
        assert!((ratio - 8.0).abs() < 0.5, "{ratio}");
    }

    #[test]
    fn r2_continuation() {
        let d = CauchyData::new(-1.0, 0.5);
        for b in [0.1, 0.3, 0.5] {
            let r = reconstruct_via_r2(-0.3, &d, b, &cfg()).unwrap();
            let o = direct_solve(&PolyRhs::new(1.0, b, 0.0), &d, -0.3, &cfg()).unwrap();
            assert!((r - o).abs() <= 1e-6, "b={b}: {r} vs {o}");
        }
        assert!(matches!(
            reconstruct_via_r2(0.3, &CauchyData::new(0.0, 0.5), 0.2, &cfg()),
            Err(RgsError::ConstraintViolated(_))
        ));
    }

    #[test]
    fn transport_checks() {
        let rhs = PolyRhs::new(1.0, 0.0, 0.0);
        let d = CauchyData::new(0.0, 0.5);
        let a = Anchor::default();
        assert!(solution_transport_check(&x_operator(1, a).unwrap(), &rhs, &d, 0.4, 0.3, &cfg()).unwrap() <= 1e-6);
        assert!(solution_transport_check(&x_operator(3, a).unwrap(), &rhs, &d, 0.4, 0.0, &cfg()).unwrap() == 0.0);
        let x34 = x_operator(3, a).unwrap().sum(&x_operator(4, a).unwrap());
        assert!(solution_transport_check(&x34, &rhs, &d, 0.4, 0.1, &cfg()).unwrap() <= 1e-6);
        let rhs = PolyRhs::new(1.0, 0.3, 0.1);
        for k in [2u8, 5, 6, 7] {
            let r = solution_transport_check(&x_operator(k, a).unwrap(), &rhs, &d, 0.4, 0.1, &cfg()).unwrap();
            assert!(r <= 1e-6, "X{k}: {r}");
        }
    }

    #[test]
    fn x3_alone_is_not_a_symmetry() {
        let rhs = PolyRhs::new(1.0, 0.0, 0.0);
        let d = CauchyData::new(0.0, 0.5);
        let r = solution_transport_check(&x_operator(3, Anchor::default()).unwrap(), &rhs, &d, 0.4, 0.1, &cfg())
            .unwrap();
        // X3 moves u along its own trajectory by "time" 0.1 without moving t.
        let u = r1_exact(0.4, 0.0, 0.5, 1.0);
        let expected = (r1_exact(0.1, 0.0, u, 1.0) - u).abs();
        assert!((r - expected).abs() < 1e-9, "{r} {expected}");
    }
}
