use std::fmt;
use std::sync::Arc;

use super::Point;
use crate::error::{Result, RgsError};

pub type Coefficient = Arc<dyn Fn(&Point) -> f64 + Send + Sync>;

/// Infinitesimal operator Σ cᵢ(p) ∂ᵢ, flowable in the group parameter.
#[derive(Clone)]
pub struct VectorField {
    param: String,
    coeffs: Vec<(String, Coefficient)>,
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VectorField")
            .field("param", &self.param)
            .field("vars", &self.variables().collect::<Vec<_>>())
            .finish()
    }
}

impl VectorField {
    pub fn new(param: &str) -> Self {
        Self { param: param.to_string(), coeffs: Vec::new() }
    }

    /// Adds (or replaces) the coefficient of ∂_name.
    pub fn with<F>(mut self, name: &str, f: F) -> Self
    where
        F: Fn(&Point) -> f64 + Send + Sync + 'static,
    {
        let c: Coefficient = Arc::new(f);
        if let Some(slot) = self.coeffs.iter_mut().find(|(n, _)| n == name) {
            slot.1 = c;
        } else {
            self.coeffs.push((name.to_string(), c));
        }
        self
    }

    pub fn with_constant(self, name: &str, v: f64) -> Self {
        self.with(name, move |_| v)
    }

    pub fn param(&self) -> &str {
        &self.param
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.coeffs.iter().map(|(n, _)| n.as_str())
    }

    pub fn coefficient(&self, name: &str) -> Option<&Coefficient> {
        self.coeffs.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }

    /// Coefficient value; variables without a coefficient contribute 0.
    pub fn coefficient_at(&self, name: &str, p: &Point) -> f64 {
        self.coefficient(name).map(|c| c(p)).unwrap_or(0.0)
    }

    pub fn eval(&self, p: &Point) -> Vec<(String, f64)> {
        self.coeffs.iter().map(|(n, c)| (n.clone(), c(p))).collect()
    }

    /// Checks that every variable the field acts on exists in `p`.
    pub fn check_point(&self, p: &Point) -> Result<()> {
        for (n, _) in &self.coeffs {
            if !p.contains(n) {
                return Err(RgsError::MissingVariable(n.clone()));
            }
        }
        Ok(())
    }

    /// Sum of two fields sharing the group parameter name of `self`.
    pub fn sum(&self, other: &VectorField) -> VectorField {
        let mut out = self.clone();
        for (n, c) in &other.coeffs {
            let c = c.clone();
            match out.coeffs.iter().position(|(m, _)| m == n) {
                Some(i) => {
                    let a = out.coeffs[i].1.clone();
                    out.coeffs[i].1 = Arc::new(move |p: &Point| a(p) + c(p));
                }
                None => out.coeffs.push((n.clone(), c)),
            }
        }
        out
    }

    pub fn scaled(&self, s: f64) -> VectorField {
        self.multiplied(move |_| s)
    }

    /// Pointwise product of every coefficient with `m(p)` (reparameterization).
    pub fn multiplied<F>(&self, m: F) -> VectorField
    where
        F: Fn(&Point) -> f64 + Send + Sync + 'static,
    {
        let m = Arc::new(m);
        let coeffs = self
            .coeffs
            .iter()
            .map(|(n, c)| {
                let c = c.clone();
                let m = m.clone();
                let f: Coefficient = Arc::new(move |p: &Point| m(p) * c(p));
                (n.clone(), f)
            })
            .collect();
        VectorField { param: self.param.clone(), coeffs }
    }
}
