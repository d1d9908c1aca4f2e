//! Bracketed root finding (bisection with secant polish) and sign-scan
//! enumeration of all roots on an interval.

use crate::error::{Result, RgsError};

/// Root of `f` in `[lo, hi]`; requires a sign change (or an endpoint zero).
pub fn bracketed<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, x_tol: f64) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return Err(RgsError::NoRootInBracket { lo, hi });
    }
    for _ in 0..400 {
        // Secant candidate, accepted only if it falls well inside the bracket.
        let s = b - fb * (b - a) / (fb - fa);
        let width = (b - a).abs();
        let m = 0.5 * (a + b);
        let inside = s.is_finite() && (s - a) * (s - b) < 0.0 && (s - a).abs().min((s - b).abs()) > 0.05 * width;
        let x = if inside { s } else { m };
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if !fx.is_finite() {
            return Err(RgsError::NoRootInBracket { lo, hi });
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
        // Force a bisection when the secant keeps hugging one side.
        if inside && (b - a).abs() > 0.5 * width {
            let m = 0.5 * (a + b);
            let fm = f(m);
            if fm == 0.0 {
                return Ok(m);
            }
            if fm.signum() == fa.signum() {
                a = m;
                fa = fm;
            } else {
                b = m;
                fb = fm;
            }
        }
        if (b - a).abs() <= x_tol * (1.0 + a.abs().max(b.abs())) {
            return Ok(if fa.abs() < fb.abs() { a } else { b });
        }
    }
    Ok(0.5 * (a + b))
}

/// All roots of `f` in `[lo, hi]`, found by scanning `samples` sub-intervals
/// for sign changes and refining each; returned in increasing order.
pub fn scan_roots<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, samples: usize, x_tol: f64) -> Vec<f64> {
    let samples = samples.max(1);
    let h = (hi - lo) / samples as f64;
    let mut roots = Vec::new();
    let mut x0 = lo;
    let mut f0 = f(x0);
    if f0 == 0.0 {
        roots.push(x0);
    }
    for i in 1..=samples {
        let x1 = if i == samples { hi } else { lo + i as f64 * h };
        let f1 = f(x1);
        if f1 == 0.0 {
            roots.push(x1);
        } else if f0 != 0.0 && f0.is_finite() && f1.is_finite() && f0.signum() != f1.signum() {
            if let Ok(r) = bracketed(&mut f, x0, x1, x_tol) {
                roots.push(r);
            }
        }
        x0 = x1;
        f0 = f1;
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let r = bracketed(|x| x * x - 2.0, 0.0, 2.0, 1e-15).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn rejects_bracket_without_sign_change() {
        assert!(matches!(bracketed(|x| x * x + 1.0, -1.0, 1.0, 1e-12), Err(RgsError::NoRootInBracket { .. })));
    }

    #[test]
    fn scan_finds_all_sine_zeros() {
        let r = scan_roots(f64::sin, 0.5, 10.0, 200, 1e-14);
        assert_eq!(r.len(), 3);
        for (k, z) in r.iter().enumerate() {
            assert!((z - (k + 1) as f64 * std::f64::consts::PI).abs() < 1e-12);
        }
    }

    #[test]
    fn handles_steep_functions() {
        let r = bracketed(|x| (50.0 * (x - 0.3)).tanh(), -5.0, 5.0, 1e-15).unwrap();
        assert!((r - 0.3).abs() < 1e-13);
    }
}
