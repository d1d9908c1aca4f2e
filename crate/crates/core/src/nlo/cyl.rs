//! Cylindrical-beam operator R9 and the solution surface swept by its orbits.

use super::beam::{BeamBoundary, BeamProfile, Geometry};
use crate::error::{Result, RgsError};
use crate::numerics::{bracketed, dopri5, IntegratorConfig, Jet};
use crate::vfield::{FnSampler, Point, VectorField};

/// Below this |χ| the β-part of S is evaluated from its Taylor series about 0.
pub const AXIS_SERIES_RADIUS: f64 = 1e-3;

/// S(χ) = αN(χ) + β/(χ√N) ∂χ(χ ∂χ√N) with S′ and S″.
#[derive(Debug, Clone)]
pub struct SFunction {
    profile: BeamProfile,
    alpha: f64,
    beta: f64,
}

impl SFunction {
    pub fn new(b: &BeamBoundary) -> Result<Self> {
        if b.beta != 0.0 && matches!(b.profile, BeamProfile::Table(_)) {
            return Err(RgsError::NotSupported("diffraction term for a tabulated profile".into()));
        }
        Ok(Self { profile: b.profile.clone(), alpha: b.alpha, beta: b.beta })
    }

    /// [S, S′, S″] at χ.
    pub fn eval(&self, chi: f64) -> Result<[f64; 3]> {
        let (n, n1, n2) = self.profile.derivs(chi);
        if !(n > 1e-200) || !chi.is_finite() {
            return Err(RgsError::SingularProfile { at: chi });
        }
        let mut s = [self.alpha * n, self.alpha * n1, self.alpha * n2];
        if self.beta != 0.0 {
            let d = if chi.abs() < AXIS_SERIES_RADIUS { self.diffraction_series(chi)? } else { self.diffraction_direct(chi)? };
            for k in 0..3 {
                s[k] += self.beta * d[k];
            }
        }
        Ok(s)
    }

    /// P/(χ√N) with P = ∂χ(χ ∂χ√N), from jets at χ.
    pub fn diffraction_direct(&self, chi: f64) -> Result<[f64; 3]> {
        let order = 6;
        let q = self.profile.jet(chi, order)?.sqrt();
        let x = Jet::variable(chi, order);
        let p = (&x * &q.deriv()).deriv();
        let r = p.div(&(&x * &q));
        Ok([r.value(), r.derivative_at(1), r.derivative_at(2)])
    }

    /// Same quantity from the Taylor series about χ = 0 (P is odd, so P/χ is regular).
    pub fn diffraction_series(&self, chi: f64) -> Result<[f64; 3]> {
        let order = 10;
        let q = self.profile.jet(0.0, order)?.sqrt();
        let x = Jet::variable(0.0, order);
        let p = (&x * &q.deriv()).deriv();
        let r = p.div_by_offset().div(&q);
        // valid through order 7; keep six terms
        let c = &r.c[..7];
        let mut out = [0.0; 3];
        for (k, &ck) in c.iter().enumerate() {
            let kf = k as f64;
            out[0] += ck * chi.powi(k as i32);
            if k >= 1 {
                out[1] += kf * ck * chi.powi(k as i32 - 1);
            }
            if k >= 2 {
                out[2] += kf * (kf - 1.0) * ck * chi.powi(k as i32 - 2);
            }
        }
        Ok(out)
    }
}

fn require_cylindrical(b: &BeamBoundary) -> Result<()> {
    if b.geometry != Geometry::Cylindrical {
        return Err(RgsError::Precondition("the R9 operator is defined for the cylindrical geometry".into()));
    }
    Ok(())
}

/// The four coordinates (ξ_t, ξ_x, η_v, η_n) at (t, x, v, n).
pub fn r9_coefficients(b: &BeamBoundary, s: &SFunction, y: [f64; 4]) -> Result<[f64; 4]> {
    let [t, x, v, n] = y;
    let it = b.inv_t();
    let d = 1.0 - t * it;
    let [_, s1, s2] = s.eval(x - v * t)?;
    Ok([
        d * d + t * t * s2,
        -x * it * d + t * s1 + v * t * t * s2,
        x * it * it + v * it * d + s1,
        2.0 * n * it * d - n * t * (1.0 + v * t / x) * s2 - n * t / x * s1,
    ])
}

/// R9 as a vector field over (t, x, v, n).
pub fn r9_field(b: &BeamBoundary) -> Result<VectorField> {
    require_cylindrical(b)?;
    let s = SFunction::new(b)?;
    let mut field = VectorField::new("lambda");
    for (k, name) in ["t", "x", "v", "n"].into_iter().enumerate() {
        let (b, s) = (b.clone(), s.clone());
        field = field.with(name, move |p: &Point| {
            let y = [p.val("t"), p.val("x"), p.val("v"), p.val("n")];
            r9_coefficients(&b, &s, y).map(|c| c[k]).unwrap_or(f64::NAN)
        });
    }
    Ok(field)
}

/// Boundary point (0, x0, V(x0), N(x0)).
pub fn boundary_point(b: &BeamBoundary, x0: f64) -> [f64; 4] {
    [0.0, x0, b.v0(x0), b.profile.value(x0)]
}

/// Orbit of R9 through the boundary point at x0, sampled at group parameters `s`.
pub fn r9_trajectory(b: &BeamBoundary, x0: f64, s_values: &[f64], cfg: &IntegratorConfig) -> Result<Vec<[f64; 4]>> {
    require_cylindrical(b)?;
    let sf = SFunction::new(b)?;
    let mut y = boundary_point(b, x0);
    let mut s_prev = 0.0;
    let mut out = Vec::with_capacity(s_values.len());
    for &s in s_values {
        if s != s_prev {
            let next = dopri5(
                |_, y, dy| match r9_coefficients(b, &sf, [y[0], y[1], y[2], y[3]]) {
                    Ok(c) => dy.copy_from_slice(&c),
                    Err(_) => dy.fill(f64::NAN),
                },
                s_prev,
                &y,
                s,
                cfg,
            )?;
            y.copy_from_slice(&next);
            s_prev = s;
        }
        out.push(y);
    }
    Ok(out)
}

/// End point of the orbit at group parameter `s_end`.
pub fn propagate_r9(b: &BeamBoundary, x0: f64, s_end: f64, cfg: &IntegratorConfig) -> Result<[f64; 4]> {
    Ok(r9_trajectory(b, x0, &[s_end], cfg)?[0])
}

/// Candidate solution (v, n)(t, x) swept by the R9 orbits of the boundary data.
#[derive(Debug, Clone)]
pub struct R9Surface {
    boundary: BeamBoundary,
    s: SFunction,
    cfg: IntegratorConfig,
}

impl R9Surface {
    pub fn new(b: &BeamBoundary, cfg: IntegratorConfig) -> Result<Self> {
        require_cylindrical(b)?;
        b.validate()?;
        cfg.validate()?;
        Ok(Self { boundary: b.clone(), s: SFunction::new(b)?, cfg })
    }

    pub fn boundary(&self) -> &BeamBoundary {
        &self.boundary
    }

    /// (x, v, n) at time t on the orbit from x0, integrating in t itself.
    pub fn characteristic(&self, x0: f64, t: f64) -> Result<[f64; 3]> {
        let b0 = boundary_point(&self.boundary, x0);
        if t == 0.0 {
            return Ok([b0[1], b0[2], b0[3]]);
        }
        let mut bad = None;
        let y = dopri5(
            |t, y, dy| match r9_coefficients(&self.boundary, &self.s, [t, y[0], y[1], y[2]]) {
                Ok(c) if c[0] > 1e-8 => {
                    dy[0] = c[1] / c[0];
                    dy[1] = c[2] / c[0];
                    dy[2] = c[3] / c[0];
                }
                Ok(_) => {
                    bad = Some(t);
                    dy.fill(f64::NAN);
                }
                Err(_) => dy.fill(f64::NAN),
            },
            0.0,
            &[b0[1], b0[2], b0[3]],
            t,
            &self.cfg,
        );
        match (y, bad) {
            (Ok(y), _) => Ok([y[0], y[1], y[2]]),
            (Err(_), Some(tc)) => Err(RgsError::BlowUp { reached: tc }),
            (Err(e), None) => Err(e),
        }
    }

    /// (v, n) at (t, x), x > 0.
    pub fn eval(&self, t: f64, x: f64) -> Result<(f64, f64)> {
        if !(x > 0.0) {
            return Err(RgsError::Precondition(format!("surface evaluated off-axis only (x = {x})")));
        }
        let g = |x0: f64| self.characteristic(x0, t).map(|c| c[0] - x);
        // free streaming contracts by (1 − t/T)
        let guess = x / (1.0 - t * self.boundary.inv_t()).max(0.1);
        let (mut lo, mut hi) = (guess * 0.8, guess * 1.25);
        let mut found = false;
        for _ in 0..40 {
            let (glo, ghi) = (g(lo)?, g(hi)?);
            if glo <= 0.0 && ghi >= 0.0 {
                found = true;
                break;
            }
            if glo > 0.0 {
                lo *= 0.5;
            }
            if ghi < 0.0 {
                hi *= 1.5;
            }
        }
        if !found {
            return Err(RgsError::NotInvertible(format!("no orbit reaches x = {x} at t = {t}")));
        }
        let x0 = bracketed(|x0| g(x0).unwrap_or(f64::NAN), lo, hi, 1e-14 * (1.0 + x))?;
        let c = self.characteristic(x0, t)?;
        Ok((c[1], c[2]))
    }

    pub fn sampler(&self) -> FnSampler {
        let me = self.clone();
        FnSampler::numeric(
            &["v", "n"],
            move |p: &Point| {
                let (v, n) = me.eval(p.get("t")?, p.get("x")?)?;
                Ok(vec![v, n])
            },
            crate::numerics::NumDiffConfig::default(),
        )
    }
}

/// Residuals of the transport system with diffraction term,
///   v_t + v v_x − α n_x − β ∂x( x^{1−ν}/√n ∂x( x^{ν−1} ∂x √n ) ),
///   n_t + (n v)_x + (ν − 1) n v / x,
/// from central differences of spacing `h` of a (v, n) field.
pub fn basic_residual<F>(field: F, b: &BeamBoundary, t: f64, x: f64, h: f64) -> Result<(f64, f64)>
where
    F: Fn(f64, f64) -> Result<(f64, f64)>,
{
    if !(t > h && x > 3.0 * h) {
        return Err(RgsError::StencilOutOfDomain(format!("stencil of {h} at ({t}, {x})")));
    }
    let nu = b.geometry.nu();
    let (v, n) = field(t, x)?;
    let (vp, np) = field(t + h, x)?;
    let (vm, nm) = field(t - h, x)?;
    let mut col = [(0.0, 0.0); 7];
    for (k, c) in col.iter_mut().enumerate() {
        *c = field(t, x + (k as f64 - 3.0) * h)?;
    }
    let xs = |k: usize| x + (k as f64 - 3.0) * h;
    let d = |a: f64, b: f64| (b - a) / (2.0 * h);
    let v_t = d(vm, vp);
    let n_t = d(nm, np);
    let v_x = d(col[2].0, col[4].0);
    let n_x = d(col[2].1, col[4].1);
    let nv_x = d(col[2].0 * col[2].1, col[4].0 * col[4].1);
    let q = |k: usize| col[k].1.sqrt();
    // A = x^{ν−1} q′ at k = 1..=5, B = x^{1−ν}/q · A′ at k = 2..=4
    let a = |k: usize| xs(k).powf(nu - 1.0) * d(q(k - 1), q(k + 1));
    let bb = |k: usize| xs(k).powf(1.0 - nu) / q(k) * d(a(k - 1), a(k + 1));
    let diffr = d(bb(2), bb(4));
    let r1 = v_t + v * v_x - b.alpha * n_x - b.beta * diffr;
    let r2 = n_t + nv_x + (nu - 1.0) * n * v / x;
    Ok((r1, r2))
}

/// Convergence study of [`basic_residual`] on the R9 surface at spacings h, h/2, h/4.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefinementReport {
    pub residuals: [f64; 3],
    /// log₂ of successive-difference ratio.
    pub order: f64,
}

pub fn refinement_check(surface: &R9Surface, t: f64, x: f64, h: f64) -> Result<RefinementReport> {
    let b = surface.boundary().clone();
    let mut r = [0.0; 3];
    for (k, slot) in r.iter_mut().enumerate() {
        let hk = h / 2f64.powi(k as i32);
        let (r1, _) = basic_residual(|t, x| surface.eval(t, x), &b, t, x, hk)?;
        *slot = r1;
    }
    let order = ((r[0] - r[1]) / (r[1] - r[2])).abs().log2();
    Ok(RefinementReport { residuals: r, order })
}
