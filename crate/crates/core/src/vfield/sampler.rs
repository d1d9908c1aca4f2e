use std::sync::Arc;

use super::Point;
use crate::error::{Result, RgsError};
use crate::numerics::{derivative, NumDiffConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplerMode {
    Analytic,
    NumericDifferentiated,
}

/// A (candidate) solution: dependent values and partial derivatives at a point.
pub trait SolutionSampler: Send + Sync {
    /// Names of the dependent variables, in value order.
    fn dependents(&self) -> &[String];

    fn value(&self, p: &Point) -> Result<Vec<f64>>;

    /// ∂ᵒʳᵈᵉʳ u_dep / ∂var^order at `p`, order ≤ 2.
    fn partial(&self, p: &Point, var: &str, dep: usize, order: u8) -> Result<f64>;

    fn mode(&self) -> SamplerMode;
}

pub type ValueFn = Arc<dyn Fn(&Point) -> Result<Vec<f64>> + Send + Sync>;
pub type PartialFn = Arc<dyn Fn(&Point, &str, usize, u8) -> Result<Option<f64>> + Send + Sync>;

/// Closure-backed sampler; partials are analytic when a partial closure is
/// supplied and it answers, numerically differentiated otherwise.
#[derive(Clone)]
pub struct FnSampler {
    names: Vec<String>,
    value: ValueFn,
    partial: Option<PartialFn>,
    nd: NumDiffConfig,
}

impl FnSampler {
    pub fn numeric<F>(names: &[&str], f: F, nd: NumDiffConfig) -> Self
    where
        F: Fn(&Point) -> Result<Vec<f64>> + Send + Sync + 'static,
    {
        Self { names: names.iter().map(|s| s.to_string()).collect(), value: Arc::new(f), partial: None, nd }
    }

    /// Single dependent, infallible value closure.
    pub fn scalar<F>(name: &str, f: F) -> Self
    where
        F: Fn(&Point) -> f64 + Send + Sync + 'static,
    {
        Self::numeric(&[name], move |p| Ok(vec![f(p)]), NumDiffConfig::default())
    }

    pub fn with_partials<G>(mut self, g: G) -> Self
    where
        G: Fn(&Point, &str, usize, u8) -> Result<Option<f64>> + Send + Sync + 'static,
    {
        self.partial = Some(Arc::new(g));
        self
    }

    pub fn with_numdiff(mut self, nd: NumDiffConfig) -> Self {
        self.nd = nd;
        self
    }
}

/// Numerical partial derivative of dependent `dep` of any sampler.
pub fn numeric_partial(
    s: &dyn SolutionSampler,
    p: &Point,
    var: &str,
    dep: usize,
    order: u8,
    nd: &NumDiffConfig,
) -> Result<f64> {
    let x = p.get(var)?;
    let mut q = p.clone();
    derivative(
        |v| {
            q.set(var, v);
            let vals = s.value(&q)?;
            vals.get(dep).copied().ok_or_else(|| RgsError::DerivativeUnavailable(format!("dependent #{dep}")))
        },
        x,
        order,
        nd,
        var,
    )
}

impl SolutionSampler for FnSampler {
    fn dependents(&self) -> &[String] {
        &self.names
    }

    fn value(&self, p: &Point) -> Result<Vec<f64>> {
        (self.value)(p)
    }

    fn partial(&self, p: &Point, var: &str, dep: usize, order: u8) -> Result<f64> {
        if order > 2 {
            return Err(RgsError::DerivativeUnavailable(format!("order {order} in `{var}`")));
        }
        if let Some(g) = &self.partial {
            if let Some(v) = g(p, var, dep, order)? {
                return Ok(v);
            }
        }
        numeric_partial(self, p, var, dep, order, &self.nd)
    }

    fn mode(&self) -> SamplerMode {
        if self.partial.is_some() {
            SamplerMode::Analytic
        } else {
            SamplerMode::NumericDifferentiated
        }
    }
}
