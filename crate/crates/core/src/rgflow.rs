//! Effective-coupling flows x·dḡ/dx = β(ḡ) and their functional-equation checks.

use std::fmt;
use std::sync::Arc;

use crate::error::{Result, RgsError};
use crate::numerics::IntegratorConfig;
use crate::vfield::{flow, Point, VectorField};

/// One-coupling β function with its admissible g-domain.
#[derive(Clone)]
pub struct BetaFunction1 {
    beta: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub domain: (f64, f64),
}

impl fmt::Debug for BetaFunction1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BetaFunction1 {{ domain: {:?} }}", self.domain)
    }
}

impl BetaFunction1 {
    pub fn new<F: Fn(f64) -> f64 + Send + Sync + 'static>(beta: F) -> Self {
        Self { beta: Arc::new(beta), domain: (-10.0, 10.0) }
    }

    /// β = k·g (automodel case).
    pub fn linear(k: f64) -> Self {
        Self::new(move |g| k * g)
    }

    /// β = Σ cᵢ gⁱ.
    pub fn polynomial(coeffs: Vec<f64>) -> Self {
        Self::new(move |g| coeffs.iter().rev().fold(0.0, |acc, c| acc * g + c))
    }

    pub fn eval(&self, g: f64) -> f64 {
        (self.beta)(g)
    }

    /// Lie-equation field in s = ln x acting on `g`.
    pub fn field(&self) -> VectorField {
        let b = self.beta.clone();
        VectorField::new("s").with("g", move |p| b(p.val("g")))
    }
}

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(RgsError::Precondition(format!("argument x = {x} must be positive")))
    }
}

/// ḡ(x, g) solving x·dḡ/dx = β(ḡ), ḡ(1, g) = g.
///
/// A singularity before `x` is reported as `BlowUp` whose `reached` field is
/// the refined singular x (not ln x).
pub fn effective_coupling(b: &BetaFunction1, x: f64, g: f64, cfg: &IntegratorConfig) -> Result<f64> {
    check_x(x)?;
    if !(b.domain.0..=b.domain.1).contains(&g) {
        return Err(RgsError::Precondition(format!("g = {g} outside the domain {:?}", b.domain)));
    }
    let field = b.field();
    let start = Point::new().with("g", g);
    match flow(&field, &start, x.ln(), cfg) {
        Ok(p) => p.get("g"),
        Err(RgsError::BlowUp { reached }) | Err(RgsError::StepLimit { reached, .. }) => {
            let s = refine_singularity(&field, &start, reached, x.ln(), cfg);
            Err(RgsError::BlowUp { reached: s.exp() })
        }
        Err(e) => Err(e),
    }
}

/// Bisection on the flow length between the last good parameter and the target.
fn refine_singularity(field: &VectorField, start: &Point, reached: f64, target: f64, cfg: &IntegratorConfig) -> f64 {
    let mut good = 0.0;
    let mut bad = target;
    // The reported parameter was reached successfully; start from it when usable.
    if reached.abs() < target.abs() && flow(field, start, reached, cfg).is_ok() {
        good = reached;
    }
    for _ in 0..80 {
        let mid = 0.5 * (good + bad);
        if flow(field, start, mid, cfg).is_ok() {
            good = mid;
        } else {
            bad = mid;
        }
        if (bad - good).abs() <= 1e-13 * (1.0 + good.abs()) {
            break;
        }
    }
    0.5 * (good + bad)
}

/// Singular argument x* of ḡ(·, g) in the direction of growing x (Landau pole).
pub fn landau_pole(b: &BetaFunction1, g: f64, x_max: f64, cfg: &IntegratorConfig) -> Result<f64> {
    match effective_coupling(b, x_max, g, cfg) {
        Err(RgsError::BlowUp { reached }) => Ok(reached),
        Ok(_) => Err(RgsError::Precondition(format!("no singularity below x = {x_max}"))),
        Err(e) => Err(e),
    }
}

/// ḡ(x, g) as a reusable function.
#[derive(Clone)]
pub struct EffectiveCoupling {
    gbar: Arc<dyn Fn(f64, f64) -> Result<f64> + Send + Sync>,
}

impl fmt::Debug for EffectiveCoupling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("EffectiveCoupling")
    }
}

impl EffectiveCoupling {
    pub fn new<F: Fn(f64, f64) -> Result<f64> + Send + Sync + 'static>(f: F) -> Self {
        Self { gbar: Arc::new(f) }
    }

    pub fn from_beta(b: BetaFunction1, cfg: IntegratorConfig) -> Self {
        Self::new(move |x, g| effective_coupling(&b, x, g, &cfg))
    }

    /// ḡ = g·x^k.
    pub fn powerlike(k: f64) -> Self {
        Self::new(move |x, g| {
            check_x(x)?;
            Ok(g * x.powf(k))
        })
    }

    pub fn eval(&self, x: f64, g: f64) -> Result<f64> {
        (self.gbar)(x, g)
    }
}

/// |ḡ(x, g) − ḡ(x/a, ḡ(a, g))|.
pub fn functional_equation_residual(ec: &EffectiveCoupling, x: f64, a: f64, g: f64) -> Result<f64> {
    check_x(a)?;
    let direct = ec.eval(x, g)?;
    let composed = ec.eval(x / a, ec.eval(a, g)?)?;
    Ok((direct - composed).abs())
}

/// Two-coupling β functions β₁(y; g, h), β₂(y; g, h).
#[derive(Clone)]
pub struct BetaFunction2 {
    beta1: Arc<dyn Fn(f64, f64, f64) -> f64 + Send + Sync>,
    beta2: Arc<dyn Fn(f64, f64, f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for BetaFunction2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("BetaFunction2")
    }
}

impl BetaFunction2 {
    pub fn new<F1, F2>(beta1: F1, beta2: F2) -> Self
    where
        F1: Fn(f64, f64, f64) -> f64 + Send + Sync + 'static,
        F2: Fn(f64, f64, f64) -> f64 + Send + Sync + 'static,
    {
        Self { beta1: Arc::new(beta1), beta2: Arc::new(beta2) }
    }
}

/// (ḡ, h̄) at x with mass-ratio argument y, integrating x·d/dx of both
/// couplings from x = 1. The ratio y/x is evaluated analytically as y·e^{−s}.
pub fn two_coupling_flow(
    b: &BetaFunction2,
    x: f64,
    y: f64,
    g: f64,
    h: f64,
    cfg: &IntegratorConfig,
) -> Result<(f64, f64)> {
    check_x(x)?;
    if !(y > 0.0) {
        return Err(RgsError::Precondition(format!("mass ratio y = {y} must be positive")));
    }
    let (b1, b2) = (b.beta1.clone(), b.beta2.clone());
    let field = VectorField::new("lambda")
        .with_constant("s", 1.0)
        .with("g", move |p| b1(y * (-p.val("s")).exp(), p.val("g"), p.val("h")))
        .with("h", move |p| b2(y * (-p.val("s")).exp(), p.val("g"), p.val("h")));
    let start = Point::new().with("s", 0.0).with("g", g).with("h", h);
    let end = flow(&field, &start, x.ln(), cfg)?;
    Ok((end.get("g")?, end.get("h")?))
}

/// |T(x₁x₂) − T(x₂ with y/x₁)∘T(x₁)| in max-norm over (ḡ, h̄).
pub fn two_coupling_composition_residual(
    b: &BetaFunction2,
    x1: f64,
    x2: f64,
    y: f64,
    g: f64,
    h: f64,
    cfg: &IntegratorConfig,
) -> Result<f64> {
    let (g12, h12) = two_coupling_flow(b, x1 * x2, y, g, h, cfg)?;
    let (g1, h1) = two_coupling_flow(b, x1, y, g, h, cfg)?;
    let (g2, h2) = two_coupling_flow(b, x2, y / x1, g1, h1, cfg)?;
    Ok((g12 - g2).abs().max((h12 - h2).abs()))
}
