//! Central-difference derivatives with Richardson extrapolation.
//!
//! Error model: a single stencil of order `p` has truncation error O(h^p);
//! each Richardson level removes the next even power.

use serde::{Deserialize, Serialize};

use crate::error::{Result, RgsError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct NumDiffConfig {
    /// 2 or 4.
    pub scheme_order: u8,
    pub base_step: f64,
    pub richardson_levels: u32,
}

impl Default for NumDiffConfig {
    fn default() -> Self {
        Self { scheme_order: 4, base_step: 1e-4, richardson_levels: 1 }
    }
}

impl NumDiffConfig {
    pub fn validate(&self) -> Result<()> {
        if self.scheme_order != 2 && self.scheme_order != 4 {
            return Err(RgsError::InvalidConfig("scheme_order must be 2 or 4".into()));
        }
        if !(self.base_step > 0.0) {
            return Err(RgsError::InvalidConfig("base_step must be positive".into()));
        }
        Ok(())
    }

    /// Step used at coordinate value `x` for a derivative of `order`.
    /// Second derivatives use a tenfold larger step to keep roundoff (∝ ε/h²) small.
    pub fn step(&self, x: f64, order: u8) -> f64 {
        let h = self.base_step * x.abs().max(1.0);
        if order == 2 {
            10.0 * h
        } else {
            h
        }
    }
}

fn stencil<F>(f: &mut F, x: f64, h: f64, order: u8, scheme: u8, name: &str) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut ev = |s: f64| -> Result<f64> {
        let v = f(x + s * h)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(RgsError::StencilOutOfDomain(name.to_string()))
        }
    };
    match (order, scheme) {
        (1, 2) => Ok((ev(1.0)? - ev(-1.0)?) / (2.0 * h)),
        (1, _) => Ok((-ev(2.0)? + 8.0 * ev(1.0)? - 8.0 * ev(-1.0)? + ev(-2.0)?) / (12.0 * h)),
        (2, 2) => Ok((ev(1.0)? - 2.0 * ev(0.0)? + ev(-1.0)?) / (h * h)),
        (2, _) => Ok((-ev(2.0)? + 16.0 * ev(1.0)? - 30.0 * ev(0.0)? + 16.0 * ev(-1.0)? - ev(-2.0)?)
            / (12.0 * h * h)),
        _ => Err(RgsError::InvalidConfig(format!("derivative order {order} not supported"))),
    }
}

/// Derivative of a scalar function of one variable; `name` labels errors.
pub fn derivative<F>(mut f: F, x: f64, order: u8, nd: &NumDiffConfig, name: &str) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    nd.validate()?;
    if order == 0 {
        return f(x);
    }
    let h = nd.step(x, order);
    let levels = nd.richardson_levels as usize;
    let mut table: Vec<f64> = Vec::with_capacity(levels + 1);
    for l in 0..=levels {
        table.push(stencil(&mut f, x, h / (1u64 << l) as f64, order, nd.scheme_order, name)?);
    }
    // Neville-style elimination of h^p, h^(p+2), ...
    let p = nd.scheme_order as i32;
    for k in 0..levels {
        let factor = 2f64.powi(p + 2 * k as i32);
        for l in 0..(levels - k) {
            table[l] = (factor * table[l + 1] - table[l]) / (factor - 1.0);
        }
    }
    Ok(table[0])
}

/// Convenience wrapper for infallible functions.
pub fn derivative_fn<F>(f: F, x: f64, order: u8, nd: &NumDiffConfig) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    derivative(|s| Ok(f(s)), x, order, nd, "x")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_first_derivative() {
        let d = derivative_fn(|x| x * x, 2.0, 1, &NumDiffConfig::default()).unwrap();
        assert!((d - 4.0).abs() < 1e-9);
    }

    #[test]
    fn sine_second_derivative_at_zero() {
        let d = derivative_fn(f64::sin, 0.0, 2, &NumDiffConfig::default()).unwrap();
        assert!(d.abs() < 1e-7);
    }

    #[test]
    fn exp_first_derivative() {
        let d = derivative_fn(f64::exp, 1.0, 1, &NumDiffConfig::default()).unwrap();
        assert!((d - std::f64::consts::E).abs() < 1e-8);
    }

    #[test]
    fn second_derivative_accuracy() {
        let d = derivative_fn(f64::exp, 0.5, 2, &NumDiffConfig::default()).unwrap();
        assert!((d - 0.5f64.exp()).abs() < 1e-8);
    }

    #[test]
    fn non_finite_stencil() {
        let err = derivative(|x| Ok(x.ln()), 0.0, 1, &NumDiffConfig::default(), "u").unwrap_err();
        assert_eq!(err, RgsError::StencilOutOfDomain("u".into()));
    }

    #[test]
    fn convergence_rate_matches_scheme_order() {
        for scheme in [2u8, 4] {
            let err = |h: f64| {
                let nd = NumDiffConfig { scheme_order: scheme, base_step: h, richardson_levels: 0 };
                (derivative_fn(f64::sin, 0.7, 1, &nd).unwrap() - 0.7f64.cos()).abs()
            };
            let ratio = err(0.1) / err(0.05);
            assert!(ratio >= 2f64.powf(scheme as f64 - 0.5), "scheme {scheme}: {ratio}");
        }
    }

    #[test]
    fn rejects_bad_scheme() {
        let nd = NumDiffConfig { scheme_order: 3, ..Default::default() };
        assert!(derivative_fn(f64::sin, 0.0, 1, &nd).is_err());
    }
}
