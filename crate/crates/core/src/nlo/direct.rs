//! Reference solutions of v_t + v v_x − α n_x = 0, n_t + (nv)_x + (ν−1)nv/x = 0
//! independent of the symmetry machinery.

use serde::{Deserialize, Serialize};

use super::beam::{BeamBoundary, Geometry, HFunction};
use super::hodograph::series_point;
use crate::error::{Result, RgsError};
use crate::numerics::{derivative_fn, Jet, NumDiffConfig};
use crate::vfield::{FnSampler, Point};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DirectSpec {
    /// Terms of the Taylor series in t.
    pub terms: usize,
    /// Largest admissible relative size of the last terms.
    pub tail_tol: f64,
}

impl Default for DirectSpec {
    fn default() -> Self {
        Self { terms: 40, tail_tol: 1e-10 }
    }
}

/// Cauchy–Kovalevskaya expansion in t with exact x-jets of the boundary data.
#[derive(Debug, Clone)]
pub struct DirectNloSolver {
    boundary: BeamBoundary,
    spec: DirectSpec,
    t_end: f64,
}

/// Builds the reference solver and checks convergence up to `t_end` on a probe set.
pub fn direct_nlo_solver(b: &BeamBoundary, t_end: f64, spec: DirectSpec) -> Result<DirectNloSolver> {
    b.validate()?;
    if b.beta != 0.0 {
        return Err(RgsError::Precondition("reference solver requires beta = 0".into()));
    }
    if spec.terms < 4 || !(spec.tail_tol > 0.0) {
        return Err(RgsError::InvalidConfig("direct solver needs ≥ 4 terms and a positive tail tolerance".into()));
    }
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(RgsError::InvalidConfig(format!("t_end = {t_end}")));
    }
    b.profile.jet(0.0, 1)?;
    let s = DirectNloSolver { boundary: b.clone(), spec, t_end };
    for x in [0.0, 0.25, 0.5, 1.0, 1.5] {
        s.eval(t_end, x)?;
    }
    Ok(s)
}

impl DirectNloSolver {
    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    /// (v, n) at (t, x).
    pub fn eval(&self, t: f64, x: f64) -> Result<(f64, f64)> {
        let b = &self.boundary;
        let nu = b.geometry.nu();
        let k_max = self.spec.terms;
        let order = k_max + 4;
        // expand about the axis when close to it (nv/x is regular there)
        let center = if b.geometry == Geometry::Cylindrical && x.abs() < 1e-3 { 0.0 } else { x };
        let dx = x - center;
        let xj = Jet::variable(center, order);
        let mut vs = vec![xj.scale(-b.inv_t())];
        let mut ns = vec![b.profile.jet(center, order)?];
        for k in 0..k_max {
            let mut vvx = Jet::constant(0.0, order);
            let mut nv = Jet::constant(0.0, order);
            for i in 0..=k {
                vvx = &vvx + &(&vs[i] * &vs[k - i].deriv());
                nv = &nv + &(&ns[i] * &vs[k - i]);
            }
            let kp1 = (k + 1) as f64;
            let v_next = (&ns[k].deriv().scale(b.alpha) - &vvx).scale(1.0 / kp1);
            let mut n_rhs = nv.deriv();
            if nu != 1.0 {
                let src = if center == 0.0 { nv.div_by_offset() } else { nv.div(&xj) };
                n_rhs = &n_rhs + &src.scale(nu - 1.0);
            }
            vs.push(v_next);
            ns.push(n_rhs.scale(-1.0 / kp1));
        }
        let (mut v, mut n) = (0.0, 0.0);
        let (mut tail, mut size) = (0.0f64, 0.0f64);
        for k in 0..=k_max {
            let tk = t.powi(k as i32);
            let (a, c) = (vs[k].eval(dx) * tk, ns[k].eval(dx) * tk);
            v += a;
            n += c;
            size = size.max(a.abs()).max(c.abs());
            if k + 3 > k_max {
                tail = tail.max(a.abs()).max(c.abs());
            }
        }
        if !(tail <= self.spec.tail_tol * size.max(1.0)) {
            return Err(RgsError::CharacteristicsCross { t });
        }
        Ok((v, n))
    }

    pub fn sampler(&self) -> FnSampler {
        let me = self.clone();
        FnSampler::numeric(
            &["v", "n"],
            move |p: &Point| {
                let (v, n) = me.eval(p.get("t")?, p.get("x")?)?;
                Ok(vec![v, n])
            },
            NumDiffConfig::default(),
        )
    }
}

/// (t, x, v) of the hodograph point (w, n): t = τ/n, v = αw, x = χ + vt.
pub fn hodograph_to_physical(h: &HFunction, alpha: f64, w: f64, n: f64) -> Result<[f64; 3]> {
    let s = series_point(h, alpha, w, n, 40)?;
    let t = s.tau / n;
    let v = alpha * w;
    Ok([t, s.chi + v * t, v])
}

/// Inverse of [`hodograph_to_physical`] by Newton iteration: (w, n) at (t, x).
pub fn physical_to_hodograph(h: &HFunction, alpha: f64, t: f64, x: f64) -> Result<(f64, f64)> {
    let profile = h.profile();
    let (n0, n1, _) = profile.derivs(x);
    // linearised start: v ≈ α t N′(x)
    let (mut w, mut n) = (t * n1, n0);
    for _ in 0..60 {
        let s = series_point(h, alpha, w, n, 40)?;
        let tt = s.tau / n;
        let xx = s.chi + alpha * w * tt;
        let (ft, fx) = (tt - t, xx - x);
        // Jacobian of (t, x) in (w, n); τ_w = nχ_n, χ_w = −ατ_n
        let t_w = s.chi_n;
        let t_n = (s.tau_n * n - s.tau) / (n * n);
        let x_w = -alpha * s.tau_n + alpha * tt + alpha * w * t_w;
        let x_n = s.chi_n + alpha * w * t_n;
        let det = t_w * x_n - t_n * x_w;
        if det.abs() < 1e-14 {
            return Err(RgsError::NotInvertible(format!("degenerate hodograph map at ({t}, {x})")));
        }
        let dw = (ft * x_n - fx * t_n) / det;
        let dn = (t_w * fx - x_w * ft) / det;
        w -= dw;
        n -= dn;
        if !(n > 0.0 && n < 1.0) {
            return Err(RgsError::NotInvertible(format!("Newton left the n-window at ({t}, {x})")));
        }
        if dw.abs() + dn.abs() < 1e-15 {
            return Ok((w, n));
        }
    }
    Err(RgsError::NotInvertible(format!("Newton did not converge at ({t}, {x})")))
}

/// Residuals of the flat, diffraction-free system for the hodograph solution
/// mapped back to (t, x), with numerically differentiated v and n.
pub fn hodograph_physical_residual(h: &HFunction, alpha: f64, t: f64, x: f64, nd: &NumDiffConfig) -> Result<(f64, f64)> {
    let field = |t: f64, x: f64| -> Result<(f64, f64)> {
        let (w, n) = physical_to_hodograph(h, alpha, t, x)?;
        Ok((alpha * w, n))
    };
    let (v, n) = field(t, x)?;
    let d = |f: &dyn Fn(f64) -> f64, at: f64| derivative_fn(f, at, 1, nd);
    let v_t = d(&|s| field(s, x).map(|p| p.0).unwrap_or(f64::NAN), t)?;
    let n_t = d(&|s| field(s, x).map(|p| p.1).unwrap_or(f64::NAN), t)?;
    let v_x = d(&|s| field(t, s).map(|p| p.0).unwrap_or(f64::NAN), x)?;
    let n_x = d(&|s| field(t, s).map(|p| p.1).unwrap_or(f64::NAN), x)?;
    Ok((v_t + v * v_x - alpha * n_x, n_t + v * n_x + n * v_x))
}

#[cfg(test)]
mod tests {
    use super::super::beam::{boundary_to_hodograph, BeamProfile};
    use super::*;

    fn beam(alpha: f64, t: f64, g: Geometry) -> BeamBoundary {
        BeamBoundary::new(BeamProfile::Gaussian, t, alpha, 0.0, g).unwrap()
    }

    #[test]
    fn trivial_cases() {
        for g in [Geometry::Flat, Geometry::Cylindrical] {
            let s = direct_nlo_solver(&beam(0.0, f64::INFINITY, g), 1.0, DirectSpec::default()).unwrap();
            let (v, n) = s.eval(0.8, 0.6).unwrap();
            assert_eq!(v, 0.0);
            assert!((n - (-0.36f64).exp()).abs() < 1e-15);
        }
    }

    #[test]
    fn geometric_focusing() {
        // α = 0, T = 10, ν = 2: n = N(x0)(T/(T−t))², x0 = xT/(T−t)
        let s = direct_nlo_solver(&beam(0.0, 10.0, Geometry::Cylindrical), 1.0, DirectSpec::default()).unwrap();
        let (t, x) = (1.0, 0.6);
        let x0 = x * 10.0 / 9.0;
        let (v, n) = s.eval(t, x).unwrap();
        assert!((v + x / 9.0).abs() < 1e-13);
        assert!((n - (-x0 * x0 as f64).exp() * (10.0f64 / 9.0).powi(2)).abs() < 1e-12);
        let (v0, _) = s.eval(t, 0.0).unwrap();
        assert_eq!(v0, 0.0);
        let (_, na) = s.eval(t, 5e-4).unwrap();
        let (_, nb) = s.eval(t, 1.5e-3).unwrap();
        assert!((na - nb).abs() < 1e-5);
    }

    #[test]
    fn rejects_diffraction_and_divergence() {
        let b = BeamBoundary::new(BeamProfile::Gaussian, 10.0, 0.1, 0.1, Geometry::Cylindrical).unwrap();
        assert!(matches!(direct_nlo_solver(&b, 0.5, DirectSpec::default()), Err(RgsError::Precondition(_))));
        assert!(matches!(
            direct_nlo_solver(&beam(0.5, 1.0, Geometry::Cylindrical), 3.0, DirectSpec::default()),
            Err(RgsError::CharacteristicsCross { .. })
        ));
    }

    #[test]
    fn more_terms_reduce_error() {
        let b = beam(0.05, 10.0, Geometry::Cylindrical);
        let loose = DirectSpec { terms: 10, tail_tol: 1.0 };
        let mid = DirectSpec { terms: 16, tail_tol: 1.0 };
        let fine = direct_nlo_solver(&b, 0.5, DirectSpec::default()).unwrap();
        let (vr, _) = fine.eval(0.5, 0.7).unwrap();
        let e = |spec| (direct_nlo_solver(&b, 0.5, spec).unwrap().eval(0.5, 0.7).unwrap().0 - vr).abs();
        assert!(e(mid) < 0.1 * e(loose));
    }

    #[test]
    fn flat_solver_matches_hodograph() {
        let alpha = 0.05;
        let h = boundary_to_hodograph(&BeamProfile::Gaussian).unwrap();
        let s = direct_nlo_solver(&beam(alpha, f64::INFINITY, Geometry::Flat), 0.5, DirectSpec::default()).unwrap();
        for (w, n) in [(-0.1, 0.5), (-0.2, 0.4), (-0.3, 0.7)] {
            let [t, x, v] = hodograph_to_physical(&h, alpha, w, n).unwrap();
            assert!(t > 0.0);
            let (vd, nd) = s.eval(t, x).unwrap();
            assert!((vd - v).abs() < 1e-10 && (nd - n).abs() < 1e-10, "{w} {n}: {vd} {v} {nd} {n}");
        }
    }

    #[test]
    fn hodograph_round_trip_and_residual() {
        let alpha = 0.05;
        let h = boundary_to_hodograph(&BeamProfile::Sech2).unwrap();
        let [t, x, _] = hodograph_to_physical(&h, alpha, -0.2, 0.5).unwrap();
        let (w, n) = physical_to_hodograph(&h, alpha, t, x).unwrap();
        assert!((w + 0.2).abs() < 1e-12 && (n - 0.5).abs() < 1e-12);
        let (r1, r2) = hodograph_physical_residual(&h, alpha, t, x, &NumDiffConfig::default()).unwrap();
        assert!(r1.abs() < 1e-8 && r2.abs() < 1e-8, "{r1} {r2}");
    }
}
