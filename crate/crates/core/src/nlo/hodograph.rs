//! The linear hodograph system τ_w = nχ_n, χ_w = −ατ_n with τ(0,n) = 0, χ(0,n) = H(n).

use serde::{Deserialize, Serialize};

use super::beam::HFunction;
use crate::error::{Result, RgsError};
use crate::numerics::Jet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HodographMethod {
    /// Power series in w with exact n-Taylor coefficients.
    Series,
    /// RK4 in w with 4th-order differences in n.
    March,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct HodographSpec {
    pub n_min: f64,
    pub n_max: f64,
    pub n_count: usize,
    pub w_max: f64,
    pub w_count: usize,
    pub method: HodographMethod,
    pub series_terms: usize,
    /// RK4 steps per w-interval of the output grid.
    pub march_substeps: usize,
    /// Extra n-nodes carried on each side of the window by the march.
    pub march_padding: usize,
}

impl Default for HodographSpec {
    fn default() -> Self {
        Self {
            n_min: 0.2,
            n_max: 0.8,
            n_count: 61,
            w_max: 0.3,
            w_count: 16,
            method: HodographMethod::Series,
            series_terms: 40,
            march_substeps: 8,
            march_padding: 8,
        }
    }
}

impl HodographSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(RgsError::InvalidConfig(format!("hodograph grid: {m}")));
        if !(self.n_min > 0.0 && self.n_min < self.n_max && self.n_max < 1.0) {
            return bad("n-window must lie strictly inside (0, 1)");
        }
        if self.n_count < 5 || self.w_count < 2 {
            return bad("need at least 5 n-nodes and 2 w-nodes");
        }
        if !(self.w_max > 0.0 && self.w_max.is_finite()) {
            return bad("w_max must be positive");
        }
        if self.series_terms < 4 || self.march_substeps == 0 || self.march_padding < 2 {
            return bad("series_terms ≥ 4, march_substeps ≥ 1 and march_padding ≥ 2 required");
        }
        Ok(())
    }

    pub fn dn(&self) -> f64 {
        (self.n_max - self.n_min) / (self.n_count - 1) as f64
    }

    pub fn dw(&self) -> f64 {
        self.w_max / (self.w_count - 1) as f64
    }
}

/// Solution values and n-derivatives at one (w, n).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct HodographSample {
    pub tau: f64,
    pub chi: f64,
    pub tau_n: f64,
    pub tau_nn: f64,
    pub chi_n: f64,
    pub chi_nn: f64,
    /// ∂α derivatives (series method only; NaN otherwise).
    pub tau_alpha: f64,
    pub chi_alpha: f64,
}

/// Series coefficients at a fixed n: term k is α^{p_k} ĉ_k w^k.
#[derive(Debug, Clone)]
struct NSeries {
    tau: Vec<[f64; 3]>,
    chi: Vec<[f64; 3]>,
    tau_pow: Vec<i32>,
    chi_pow: Vec<i32>,
}

impl NSeries {
    fn new(h: &HFunction, n0: f64, terms: usize) -> Result<Self> {
        let order = terms + 2;
        let nj = Jet::variable(n0, order);
        let mut chi = h.jet(n0, order)?;
        let mut tau = Jet::constant(0.0, order);
        let take = |j: &Jet| [j.value(), j.derivative_at(1), j.derivative_at(2)];
        let mut s = NSeries {
            tau: vec![take(&tau)],
            chi: vec![take(&chi)],
            tau_pow: vec![0],
            chi_pow: vec![0],
        };
        for k in 0..terms {
            let kp1 = (k + 1) as f64;
            let next_tau = (&nj * &chi.deriv()).scale(1.0 / kp1);
            let next_chi = tau.deriv().scale(-1.0 / kp1);
            s.tau_pow.push(s.chi_pow[k]);
            s.chi_pow.push(s.tau_pow[k] + 1);
            tau = next_tau;
            chi = next_chi;
            s.tau.push(take(&tau));
            s.chi.push(take(&chi));
        }
        Ok(s)
    }

    fn sample(&self, w: f64, alpha: f64) -> Result<HodographSample> {
        let mut acc = [[0.0f64; 4]; 2];
        let k_max = self.tau.len() - 1;
        let mut tail = 0.0f64;
        let mut size = 0.0f64;
        for k in 0..=k_max {
            let wk = w.powi(k as i32);
            for (slot, (c, p)) in [(&self.tau[k], self.tau_pow[k]), (&self.chi[k], self.chi_pow[k])]
                .into_iter()
                .enumerate()
            {
                let ap = alpha.powi(p);
                for d in 0..3 {
                    let term = ap * c[d] * wk;
                    acc[slot][d] += term;
                    size = size.max(term.abs());
                    if k + 3 > k_max {
                        tail = tail.max(term.abs());
                    }
                }
                // ∂α of α^p is p α^{p−1}
                if p > 0 {
                    acc[slot][3] += p as f64 * alpha.powi(p - 1) * c[0] * wk;
                }
            }
        }
        if !(tail <= 1e-11 * size.max(1.0)) {
            return Err(RgsError::WindowTooWide(format!(
                "hodograph series not converged at w = {w} (tail {tail:e})"
            )));
        }
        Ok(HodographSample {
            tau: acc[0][0],
            tau_n: acc[0][1],
            tau_nn: acc[0][2],
            tau_alpha: acc[0][3],
            chi: acc[1][0],
            chi_n: acc[1][1],
            chi_nn: acc[1][2],
            chi_alpha: acc[1][3],
        })
    }
}

/// Pointwise series evaluation.
pub fn series_point(h: &HFunction, alpha: f64, w: f64, n: f64, terms: usize) -> Result<HodographSample> {
    NSeries::new(h, n, terms)?.sample(w, alpha)
}

/// Solution tabulated on a (w, n) grid.
#[derive(Debug, Clone)]
pub struct HodographGrid {
    pub alpha: f64,
    pub method: HodographMethod,
    pub w_nodes: Vec<f64>,
    pub n_nodes: Vec<f64>,
    samples: Vec<HodographSample>,
    h: HFunction,
    terms: usize,
}

impl HodographGrid {
    pub fn node(&self, iw: usize, jn: usize) -> &HodographSample {
        &self.samples[iw * self.n_nodes.len() + jn]
    }

    pub fn h(&self) -> &HFunction {
        &self.h
    }

    /// Solution data at (w, n): any point for the series method, grid nodes only
    /// for the march.
    pub fn sample(&self, w: f64, n: f64) -> Result<HodographSample> {
        match self.method {
            HodographMethod::Series => series_point(&self.h, self.alpha, w, n, self.terms),
            HodographMethod::March => {
                let find = |xs: &[f64], x: f64| xs.iter().position(|&y| (y - x).abs() <= 1e-12 * (1.0 + x.abs()));
                match (find(&self.w_nodes, w), find(&self.n_nodes, n)) {
                    (Some(i), Some(j)) => Ok(*self.node(i, j)),
                    _ => Err(RgsError::DerivativeUnavailable(format!(
                        "({w}, {n}) is not a node of the marched grid"
                    ))),
                }
            }
        }
    }

    pub fn contains(&self, w: f64, n: f64) -> bool {
        let (w0, w1) = (self.w_nodes[0], *self.w_nodes.last().unwrap());
        let (n0, n1) = (self.n_nodes[0], *self.n_nodes.last().unwrap());
        (w0..=w1).contains(&w) && (n0..=n1).contains(&n)
    }
}

pub fn solve_hodograph(h: &HFunction, alpha: f64, spec: &HodographSpec) -> Result<HodographGrid> {
    spec.validate()?;
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(RgsError::InvalidConfig(format!("alpha = {alpha} must be ≥ 0")));
    }
    let n_nodes: Vec<f64> = (0..spec.n_count).map(|j| spec.n_min + spec.dn() * j as f64).collect();
    let w_nodes: Vec<f64> = (0..spec.w_count).map(|i| spec.dw() * i as f64).collect();
    let samples = match spec.method {
        HodographMethod::Series => {
            let mut out = vec![HodographSample::default(); w_nodes.len() * n_nodes.len()];
            for (j, &n) in n_nodes.iter().enumerate() {
                let s = NSeries::new(h, n, spec.series_terms)?;
                for (i, &w) in w_nodes.iter().enumerate() {
                    out[i * n_nodes.len() + j] = s.sample(w, alpha)?;
                }
            }
            out
        }
        HodographMethod::March => march(h, alpha, spec, &n_nodes, &w_nodes)?,
    };
    Ok(HodographGrid {
        alpha,
        method: spec.method,
        w_nodes,
        n_nodes,
        samples,
        h: h.clone(),
        terms: spec.series_terms,
    })
}

/// Largest modified wavenumber of the 4th-order central first difference, times dn.
const D1_SPECTRAL_RADIUS: f64 = 1.372;
/// RK4 stability bound on the imaginary axis, with margin.
pub const MARCH_CFL_LIMIT: f64 = 2.5;

fn d1(f: &[f64], i: usize, dn: f64) -> f64 {
    let m = f.len();
    let c = 12.0 * dn;
    if i >= 2 && i + 2 < m {
        (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / c
    } else if i == 0 {
        (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / c
    } else if i == 1 {
        (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / c
    } else if i == m - 1 {
        -(-25.0 * f[m - 1] + 48.0 * f[m - 2] - 36.0 * f[m - 3] + 16.0 * f[m - 4] - 3.0 * f[m - 5]) / c
    } else {
        -(-3.0 * f[m - 1] - 10.0 * f[m - 2] + 18.0 * f[m - 3] - 6.0 * f[m - 4] + f[m - 5]) / c
    }
}

fn d2(f: &[f64], i: usize, dn: f64) -> f64 {
    (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) / (12.0 * dn * dn)
}

fn march(h: &HFunction, alpha: f64, spec: &HodographSpec, n_nodes: &[f64], w_nodes: &[f64]) -> Result<Vec<HodographSample>> {
    let dn = spec.dn();
    let pad = spec.march_padding;
    let lo = spec.n_min - pad as f64 * dn;
    let hi = spec.n_max + pad as f64 * dn;
    if lo <= 0.0 || hi >= 1.0 {
        return Err(RgsError::WindowTooWide(format!(
            "padded n-window [{lo}, {hi}] reaches the singular ends of H"
        )));
    }
    let m = spec.n_count + 2 * pad;
    let ns: Vec<f64> = (0..m).map(|j| lo + dn * j as f64).collect();
    let dw = spec.dw() / spec.march_substeps as f64;
    let cfl = dw * D1_SPECTRAL_RADIUS * (alpha * hi).sqrt() / dn;
    if cfl > MARCH_CFL_LIMIT {
        return Err(RgsError::CflViolation { number: cfl, limit: MARCH_CFL_LIMIT });
    }
    let mut tau = vec![0.0; m];
    let mut chi = ns.iter().map(|&n| h.eval(n)).collect::<Result<Vec<_>>>()?;
    let h_slope = (0..m).map(|i| d1(&chi, i, dn).abs()).fold(0.0, f64::max);
    if h_slope > 1e3 {
        return Err(RgsError::WindowTooWide(format!("|H′| reaches {h_slope:e} in the padded window")));
    }
    let rhs = |tau: &[f64], chi: &[f64], dt: &mut [f64], dc: &mut [f64]| {
        for i in 0..m {
            dt[i] = ns[i] * d1(chi, i, dn);
            dc[i] = -alpha * d1(tau, i, dn);
        }
    };
    let mut out = Vec::with_capacity(w_nodes.len() * n_nodes.len());
    let record = |tau: &[f64], chi: &[f64], out: &mut Vec<HodographSample>| {
        for j in 0..n_nodes.len() {
            let i = j + pad;
            out.push(HodographSample {
                tau: tau[i],
                chi: chi[i],
                tau_n: d1(tau, i, dn),
                tau_nn: d2(tau, i, dn),
                chi_n: d1(chi, i, dn),
                chi_nn: d2(chi, i, dn),
                tau_alpha: f64::NAN,
                chi_alpha: f64::NAN,
            });
        }
    };
    record(&tau, &chi, &mut out);
    let mut k = [vec![0.0; m], vec![0.0; m], vec![0.0; m], vec![0.0; m]];
    let mut l = [vec![0.0; m], vec![0.0; m], vec![0.0; m], vec![0.0; m]];
    let (mut tt, mut ct) = (vec![0.0; m], vec![0.0; m]);
    for _ in 1..w_nodes.len() {
        for _ in 0..spec.march_substeps {
            rhs(&tau, &chi, &mut k[0], &mut l[0]);
            for (s, c) in [(1usize, 0.5), (2, 0.5), (3, 1.0)] {
                for i in 0..m {
                    tt[i] = tau[i] + c * dw * k[s - 1][i];
                    ct[i] = chi[i] + c * dw * l[s - 1][i];
                }
                let (ks, ls) = (&mut k[s], &mut l[s]);
                rhs(&tt, &ct, ks, ls);
            }
            for i in 0..m {
                tau[i] += dw / 6.0 * (k[0][i] + 2.0 * k[1][i] + 2.0 * k[2][i] + k[3][i]);
                chi[i] += dw / 6.0 * (l[0][i] + 2.0 * l[1][i] + 2.0 * l[2][i] + l[3][i]);
            }
        }
        if tau.iter().chain(chi.iter()).any(|v| !v.is_finite() || v.abs() > 1e6) {
            return Err(RgsError::WindowTooWide("marched solution blew up".into()));
        }
        record(&tau, &chi, &mut out);
    }
    Ok(out)
}
