//! Boundary intensity profiles and their hodograph inverses.

use serde::{Deserialize, Serialize};

use crate::burgers::TableProfile;
use crate::error::{Result, RgsError};
use crate::numerics::{bracketed, Jet};

/// Transverse intensity N(x) at the medium boundary; even in x, N(0) = max.
#[derive(Debug, Clone)]
pub enum BeamProfile {
    /// N = cosh⁻²(x)
    Sech2,
    /// N = exp(−x²)
    Gaussian,
    /// Tabulated on x ≥ 0, extended evenly.
    Table(TableProfile),
}

impl BeamProfile {
    pub fn table(t: TableProfile) -> Result<Self> {
        let p = BeamProfile::Table(t);
        p.validate()?;
        Ok(p)
    }

    pub fn name(&self) -> &'static str {
        match self {
            BeamProfile::Sech2 => "sech2",
            BeamProfile::Gaussian => "gaussian",
            BeamProfile::Table(_) => "table",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let BeamProfile::Table(t) = self else { return Ok(()) };
        let (lo, hi) = t.domain();
        if lo > 0.0 || hi <= 0.0 {
            return Err(RgsError::InvalidConfig("beam table must cover x = 0 and some x > 0".into()));
        }
        let m = 400;
        let mut prev = f64::INFINITY;
        for i in 0..=m {
            let x = hi * i as f64 / m as f64;
            let v = t.eval3(x).0;
            if !(v > 0.0) {
                return Err(RgsError::SingularProfile { at: x });
            }
            if v >= prev {
                return Err(RgsError::NotInvertible(format!("beam table not decreasing near x = {x}")));
            }
            prev = v;
        }
        Ok(())
    }

    /// (N, N′, N″) at x.
    pub fn derivs(&self, x: f64) -> (f64, f64, f64) {
        match self {
            BeamProfile::Table(t) => {
                let (v, d1, d2) = t.eval3(x.abs());
                (v, d1 * x.signum(), d2)
            }
            _ => {
                let j = self.jet(x, 2).expect("closed-form profile");
                (j.value(), j.derivative_at(1), j.derivative_at(2))
            }
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        self.derivs(x).0
    }

    /// Taylor jet of N about x0 (closed-form profiles only).
    pub fn jet(&self, x0: f64, order: usize) -> Result<Jet> {
        let x = Jet::variable(x0, order);
        match self {
            BeamProfile::Sech2 => {
                let s = x.cosh().recip();
                Ok(&s * &s)
            }
            BeamProfile::Gaussian => Ok((&x * &x).scale(-1.0).exp()),
            BeamProfile::Table(_) => Err(RgsError::NotSupported("Taylor jets of a tabulated profile".into())),
        }
    }

    /// Peak and far-field values bracketing the admissible n.
    fn n_range(&self) -> (f64, f64) {
        match self {
            BeamProfile::Table(t) => (t.eval3(t.domain().1).0, t.eval3(0.0).0),
            _ => (0.0, 1.0),
        }
    }
}

/// The boundary function H(n): inverse of N on x ≥ 0.
#[derive(Debug, Clone)]
pub struct HFunction {
    profile: BeamProfile,
}

/// χ(0, n) = H(n) with N(H(n)) = n.
pub fn boundary_to_hodograph(profile: &BeamProfile) -> Result<HFunction> {
    profile.validate()?;
    Ok(HFunction { profile: profile.clone() })
}

impl HFunction {
    pub fn profile(&self) -> &BeamProfile {
        &self.profile
    }

    pub fn eval(&self, n: f64) -> Result<f64> {
        let (lo, hi) = self.profile.n_range();
        if !(n > lo && n <= hi) {
            return Err(RgsError::NotInvertible(format!("n = {n} outside ({lo}, {hi}]")));
        }
        match &self.profile {
            BeamProfile::Sech2 => Ok((1.0 / n.sqrt()).acosh()),
            BeamProfile::Gaussian => Ok((-n.ln()).max(0.0).sqrt()),
            BeamProfile::Table(t) => {
                if n == hi {
                    return Ok(0.0);
                }
                bracketed(|x| t.eval3(x).0 - n, 0.0, t.domain().1, 1e-14)
            }
        }
    }

    /// Taylor jet of H about n0 (closed-form profiles only).
    pub fn jet(&self, n0: f64, order: usize) -> Result<Jet> {
        if !(n0 > 0.0 && n0 < 1.0) {
            return Err(RgsError::NotInvertible(format!("H is singular at n = {n0}")));
        }
        let n = Jet::variable(n0, order);
        match &self.profile {
            BeamProfile::Sech2 => Ok(n.powf(-0.5).acosh()),
            BeamProfile::Gaussian => Ok(n.ln().scale(-1.0).sqrt()),
            BeamProfile::Table(_) => Err(RgsError::NotSupported("Taylor jets of a tabulated profile".into())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    Flat,
    Cylindrical,
}

impl Geometry {
    pub fn nu(self) -> f64 {
        match self {
            Geometry::Flat => 1.0,
            Geometry::Cylindrical => 2.0,
        }
    }
}

/// Boundary data v(0,x) = −x/T, n(0,x) = N(x) plus the medium parameters.
#[derive(Debug, Clone)]
pub struct BeamBoundary {
    pub profile: BeamProfile,
    /// Wavefront curvature scale; `f64::INFINITY` is a flat front.
    pub t_curv: f64,
    pub alpha: f64,
    pub beta: f64,
    pub geometry: Geometry,
}

impl BeamBoundary {
    pub fn new(profile: BeamProfile, t_curv: f64, alpha: f64, beta: f64, geometry: Geometry) -> Result<Self> {
        let b = Self { profile, t_curv, alpha, beta, geometry };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha >= 0.0 && self.alpha.is_finite() && self.beta >= 0.0 && self.beta.is_finite()) {
            return Err(RgsError::InvalidConfig(format!(
                "alpha = {}, beta = {} must be finite and ≥ 0",
                self.alpha, self.beta
            )));
        }
        if !(self.t_curv > 0.0) {
            return Err(RgsError::InvalidConfig(format!("curvature scale T = {} must be > 0", self.t_curv)));
        }
        self.profile.validate()
    }

    /// 1/T (0 for a flat front).
    pub fn inv_t(&self) -> f64 {
        if self.t_curv.is_infinite() {
            0.0
        } else {
            1.0 / self.t_curv
        }
    }

    pub fn v0(&self, x: f64) -> f64 {
        -x * self.inv_t()
    }
}
