use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Result, RgsError};

/// Natural cubic spline through tabulated samples; constant extension outside.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableProfile {
    xs: Vec<f64>,
    ys: Vec<f64>,
    m: Vec<f64>,
}

impl TableProfile {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() || xs.len() < 3 {
            return Err(RgsError::InvalidConfig("table needs ≥ 3 (x, f) pairs".into()));
        }
        if xs.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(RgsError::InvalidConfig("table abscissae must increase".into()));
        }
        if ys.iter().chain(&xs).any(|v| !v.is_finite()) {
            return Err(RgsError::InvalidConfig("table values must be finite".into()));
        }
        let m = natural_spline_moments(&xs, &ys);
        Ok(Self { xs, ys, m })
    }

    /// Reads `x,f` (comma or whitespace separated) lines; `#` starts a comment.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| RgsError::InvalidConfig(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (mut xs, mut ys) = (Vec::new(), Vec::new());
        for (ln, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
            if parts.len() != 2 {
                return Err(RgsError::InvalidConfig(format!("table line {}: expected two columns", ln + 1)));
            }
            let parse = |s: &str| {
                s.parse::<f64>().map_err(|_| RgsError::InvalidConfig(format!("table line {}: bad number `{s}`", ln + 1)))
            };
            match (parse(parts[0]), parse(parts[1])) {
                (Ok(x), Ok(y)) => {
                    xs.push(x);
                    ys.push(y);
                }
                // Allow a single header line.
                _ if xs.is_empty() && ln == 0 => continue,
                (Err(e), _) | (_, Err(e)) => return Err(e),
            }
        }
        Self::new(xs, ys)
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.xs[0], *self.xs.last().expect("non-empty"))
    }

    /// (f, f', f'') at x.
    pub fn eval3(&self, x: f64) -> (f64, f64, f64) {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return (self.ys[0], 0.0, 0.0);
        }
        if x >= self.xs[n - 1] {
            return (self.ys[n - 1], 0.0, 0.0);
        }
        let i = match self.xs.binary_search_by(|v| v.total_cmp(&x)) {
            Ok(i) => i.min(n - 2),
            Err(i) => i - 1,
        };
        let h = self.xs[i + 1] - self.xs[i];
        let a = (self.xs[i + 1] - x) / h;
        let b = (x - self.xs[i]) / h;
        let (m0, m1) = (self.m[i], self.m[i + 1]);
        let f = a * self.ys[i] + b * self.ys[i + 1] + ((a * a * a - a) * m0 + (b * b * b - b) * m1) * h * h / 6.0;
        let d1 = (self.ys[i + 1] - self.ys[i]) / h + (-(3.0 * a * a - 1.0) * m0 + (3.0 * b * b - 1.0) * m1) * h / 6.0;
        let d2 = a * m0 + b * m1;
        (f, d1, d2)
    }
}

fn natural_spline_moments(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    let n = xs.len();
    let mut m = vec![0.0; n];
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    // Thomas algorithm on the interior equations.
    for i in 1..n - 1 {
        let h0 = xs[i] - xs[i - 1];
        let h1 = xs[i + 1] - xs[i];
        let rhs = 6.0 * ((ys[i + 1] - ys[i]) / h1 - (ys[i] - ys[i - 1]) / h0);
        let diag = 2.0 * (h0 + h1) - h0 * c[i - 1];
        c[i] = h1 / diag;
        d[i] = (rhs - h0 * d[i - 1]) / diag;
    }
    for i in (1..n - 1).rev() {
        m[i] = d[i] - c[i] * m[i + 1];
    }
    m
}

/// Initial profile f(x) of the Burgers problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Profile {
    /// A·exp(−x²/w²)
    Gaussian { amplitude: f64, width: f64 },
    Constant(f64),
    Table(TableProfile),
    /// f(x − shift)
    Shifted(Box<Profile>, f64),
}

impl Profile {
    pub fn gaussian(amplitude: f64, width: f64) -> Self {
        Profile::Gaussian { amplitude, width }
    }

    pub fn shifted(self, s: f64) -> Self {
        Profile::Shifted(Box::new(self), s)
    }

    /// (f, f_x, f_xx).
    pub fn eval3(&self, x: f64) -> (f64, f64, f64) {
        match self {
            Profile::Gaussian { amplitude, width } => {
                let w2 = width * width;
                let g = amplitude * (-x * x / w2).exp();
                (g, -2.0 * x / w2 * g, (4.0 * x * x / (w2 * w2) - 2.0 / w2) * g)
            }
            Profile::Constant(c) => (*c, 0.0, 0.0),
            Profile::Table(t) => t.eval3(x),
            Profile::Shifted(p, s) => p.eval3(x - s),
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        self.eval3(x).0
    }

    /// Radius outside which the profile is constant (∞ for non-compact shapes).
    pub fn support_radius(&self) -> f64 {
        match self {
            Profile::Gaussian { .. } => f64::INFINITY,
            Profile::Constant(_) => 0.0,
            Profile::Table(t) => {
                let (a, b) = t.domain();
                a.abs().max(b.abs())
            }
            Profile::Shifted(p, s) => p.support_radius() + s.abs(),
        }
    }

    /// Upper bound of f used to keep exp(a f/ν) finite.
    pub fn sup(&self) -> f64 {
        match self {
            Profile::Gaussian { amplitude, .. } => amplitude.max(0.0),
            Profile::Constant(c) => *c,
            Profile::Table(t) => t.ys.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            Profile::Shifted(p, _) => p.sup(),
        }
    }
}
