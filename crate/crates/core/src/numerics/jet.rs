//! Truncated Taylor series ("jets") about a fixed point.
//!
//! `c[k]` holds f⁽ᵏ⁾(x₀)/k!. All operations truncate at the shorter operand.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    pub c: Vec<f64>,
}

impl Jet {
    pub fn constant(v: f64, order: usize) -> Self {
        let mut c = vec![0.0; order + 1];
        c[0] = v;
        Self { c }
    }

    /// The independent variable itself, expanded about `x0`.
    pub fn variable(x0: f64, order: usize) -> Self {
        let mut c = vec![0.0; order + 1];
        c[0] = x0;
        if order >= 1 {
            c[1] = 1.0;
        }
        Self { c }
    }

    pub fn from_coeffs(c: Vec<f64>) -> Self {
        Self { c }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// k-th derivative at the expansion point.
    pub fn derivative_at(&self, k: usize) -> f64 {
        if k >= self.c.len() {
            return 0.0;
        }
        let mut fact = 1.0;
        for i in 2..=k {
            fact *= i as f64;
        }
        self.c[k] * fact
    }

    /// Polynomial value at offset `dx` from the expansion point.
    pub fn eval(&self, dx: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, &a| acc * dx + a)
    }

    /// Jet of the derivative (one order shorter, padded with 0).
    pub fn deriv(&self) -> Self {
        let n = self.c.len();
        let mut c = vec![0.0; n];
        for k in 0..n - 1 {
            c[k] = (k + 1) as f64 * self.c[k + 1];
        }
        Self { c }
    }

    /// Division by (x − x₀) for a jet vanishing at x₀ (removable singularity).
    pub fn div_by_offset(&self) -> Self {
        let n = self.c.len();
        let mut c = vec![0.0; n];
        c[..n - 1].copy_from_slice(&self.c[1..]);
        Self { c }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { c: self.c.iter().map(|a| a * s).collect() }
    }

    pub fn add_scalar(&self, s: f64) -> Self {
        let mut c = self.c.clone();
        c[0] += s;
        Self { c }
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut c = self.c.clone();
        c.resize(order + 1, 0.0);
        Self { c }
    }

    pub fn recip(&self) -> Self {
        let n = self.c.len();
        let mut q = vec![0.0; n];
        q[0] = 1.0 / self.c[0];
        for k in 1..n {
            let s: f64 = (1..=k).map(|j| self.c[j] * q[k - j]).sum();
            q[k] = -s / self.c[0];
        }
        Self { c: q }
    }

    pub fn div(&self, other: &Jet) -> Self {
        let n = self.c.len().min(other.c.len());
        let mut q = vec![0.0; n];
        for k in 0..n {
            let s: f64 = (0..k).map(|i| q[i] * other.c[k - i]).sum();
            q[k] = (self.c[k] - s) / other.c[0];
        }
        Self { c: q }
    }

    pub fn exp(&self) -> Self {
        let n = self.c.len();
        let mut e = vec![0.0; n];
        e[0] = self.c[0].exp();
        for k in 1..n {
            let s: f64 = (1..=k).map(|j| j as f64 * self.c[j] * e[k - j]).sum();
            e[k] = s / k as f64;
        }
        Self { c: e }
    }

    pub fn ln(&self) -> Self {
        let n = self.c.len();
        let mut l = vec![0.0; n];
        l[0] = self.c[0].ln();
        for k in 1..n {
            let s: f64 = (1..k).map(|j| j as f64 * l[j] * self.c[k - j]).sum();
            l[k] = (self.c[k] - s / k as f64) / self.c[0];
        }
        Self { c: l }
    }

    pub fn sqrt(&self) -> Self {
        let n = self.c.len();
        let mut s = vec![0.0; n];
        s[0] = self.c[0].sqrt();
        for k in 1..n {
            let acc: f64 = (1..k).map(|j| s[j] * s[k - j]).sum();
            s[k] = (self.c[k] - acc) / (2.0 * s[0]);
        }
        Self { c: s }
    }

    pub fn powf(&self, p: f64) -> Self {
        let n = self.c.len();
        let mut y = vec![0.0; n];
        y[0] = self.c[0].powf(p);
        for k in 1..n {
            let s: f64 = (1..=k).map(|j| ((p + 1.0) * j as f64 - k as f64) * self.c[j] * y[k - j]).sum();
            y[k] = s / (k as f64 * self.c[0]);
        }
        Self { c: y }
    }

    /// (sin, cos) of the jet.
    pub fn sin_cos(&self) -> (Self, Self) {
        let n = self.c.len();
        let mut s = vec![0.0; n];
        let mut co = vec![0.0; n];
        s[0] = self.c[0].sin();
        co[0] = self.c[0].cos();
        for k in 1..n {
            let a: f64 = (1..=k).map(|j| j as f64 * self.c[j] * co[k - j]).sum();
            let b: f64 = (1..=k).map(|j| j as f64 * self.c[j] * s[k - j]).sum();
            s[k] = a / k as f64;
            co[k] = -b / k as f64;
        }
        (Self { c: s }, Self { c: co })
    }

    pub fn cosh(&self) -> Self {
        let e = self.exp();
        let em = (-self).exp();
        (&e + &em).scale(0.5)
    }

    pub fn acosh(&self) -> Self {
        let inner = (&(self * self).add_scalar(-1.0)).sqrt();
        (self + &inner).ln()
    }
}

impl<'a> Add<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn add(self, o: &Jet) -> Jet {
        let n = self.c.len().min(o.c.len());
        Jet { c: (0..n).map(|k| self.c[k] + o.c[k]).collect() }
    }
}

impl<'a> Sub<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn sub(self, o: &Jet) -> Jet {
        let n = self.c.len().min(o.c.len());
        Jet { c: (0..n).map(|k| self.c[k] - o.c[k]).collect() }
    }
}

impl<'a> Mul<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn mul(self, o: &Jet) -> Jet {
        let n = self.c.len().min(o.c.len());
        let mut c = vec![0.0; n];
        for (k, ck) in c.iter_mut().enumerate() {
            *ck = (0..=k).map(|i| self.c[i] * o.c[k - i]).sum();
        }
        Jet { c }
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn exp_ln_roundtrip() {
        let x = Jet::variable(0.7, 12);
        let y = x.exp().ln();
        for k in 0..=12 {
            assert!(close(y.c[k], x.c[k], 1e-13), "k={k}");
        }
    }

    #[test]
    fn derivatives_of_gaussian() {
        let x = Jet::variable(0.5, 6);
        let g = (&x * &x).scale(-1.0).exp();
        let v = (-0.25f64).exp();
        assert!(close(g.derivative_at(1), -2.0 * 0.5 * v, 1e-14));
        assert!(close(g.derivative_at(2), (4.0 * 0.25 - 2.0) * v, 1e-14));
    }

    #[test]
    fn acosh_matches_closed_form_derivative() {
        let n = Jet::variable(0.25, 4);
        let h = n.powf(-0.5).acosh();
        assert!(close(h.value(), 2f64.acosh(), 1e-14));
        // H'(n) = −1/(2n√(1−n))
        assert!(close(h.derivative_at(1), -1.0 / (2.0 * 0.25 * 0.75f64.sqrt()), 1e-13));
    }

    #[test]
    fn division_and_recip_agree() {
        let x = Jet::variable(1.3, 8);
        let a = x.sin_cos().0;
        let q1 = a.div(&x);
        let q2 = &a * &x.recip();
        for k in 0..=8 {
            assert!(close(q1.c[k], q2.c[k], 1e-13));
        }
    }

    #[test]
    fn removable_division() {
        // sin(x)/x at 0 = 1 − x²/6 + …
        let x = Jet::variable(0.0, 8);
        let s = x.sin_cos().0.div_by_offset();
        assert!(close(s.c[0], 1.0, 1e-15));
        assert!(close(s.c[2], -1.0 / 6.0, 1e-15));
    }

    #[test]
    fn eval_polynomial() {
        let j = Jet::from_coeffs(vec![1.0, 2.0, 3.0]);
        assert_eq!(j.eval(2.0), 1.0 + 4.0 + 12.0);
        assert_eq!(j.deriv().c, vec![2.0, 6.0, 0.0]);
    }
}
