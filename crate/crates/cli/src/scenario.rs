//! Scenario files: TOML with a versioned schema key, a model kind, model
//! parameters and the checks to run.
//!
//! ```toml
//! schema = "rgsslab.scenario/1"
//! kind = "burgers"
//! seed = 7
//! output = "burgers.csv"
//!
//! [params]
//! a = 1.0
//! nu = 0.5
//! profile = "gaussian"
//!
//! [[checks]]
//! id = "burgers.fd_oracle"
//! tolerance = 5e-3
//! ```

use std::fmt;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::checks::{self, CheckDef};
use crate::error::{CliError, CliResult};

pub const SCHEMA: &str = "rgsslab.scenario/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Rgflow,
    OdeEmbedding,
    Burgers,
    NloFlat,
    NloCyl,
    Plasma,
}

impl Kind {
    pub const ALL: [Kind; 6] = [Kind::Rgflow, Kind::OdeEmbedding, Kind::Burgers, Kind::NloFlat, Kind::NloCyl, Kind::Plasma];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Rgflow => "rgflow",
            Kind::OdeEmbedding => "ode-embedding",
            Kind::Burgers => "burgers",
            Kind::NloFlat => "nlo-flat",
            Kind::NloCyl => "nlo-cyl",
            Kind::Plasma => "plasma",
        }
    }

    /// Keys that must appear under `[params]`.
    pub fn required_keys(self) -> &'static [&'static str] {
        match self {
            Kind::Rgflow => &["beta"],
            Kind::OdeEmbedding => &["a"],
            Kind::Burgers => &["a", "nu", "profile"],
            Kind::NloFlat => &["alpha", "profile"],
            Kind::NloCyl => &["alpha", "t_curv", "profile"],
            Kind::Plasma => &["regime", "a"],
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    pub fn to_vec(&self) -> Vec<T> {
        match self {
            OneOrMany::One(v) => vec![v.clone()],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

/// β functions available to `rgflow` scenarios.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BetaName {
    #[serde(rename = "kg")]
    Linear,
    #[serde(rename = "g2")]
    Square,
    #[serde(rename = "g2+0.3g3")]
    SquareCubic,
}

impl BetaName {
    pub fn as_str(self) -> &'static str {
        match self {
            BetaName::Linear => "kg",
            BetaName::Square => "g2",
            BetaName::SquareCubic => "g2+0.3g3",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RgflowParams {
    pub beta: OneOrMany<BetaName>,
    #[serde(default = "d_k")]
    pub k: f64,
    #[serde(default = "d_samples")]
    pub samples: usize,
    /// Initial couplings are drawn from [−g_max, g_max].
    #[serde(default = "d_g_max")]
    pub g_max: f64,
    /// Flow lengths are drawn from [−l_max, l_max].
    #[serde(default = "d_one")]
    pub l_max: f64,
    #[serde(default = "d_automodel_points")]
    pub automodel_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OdeParams {
    pub a: f64,
    #[serde(default = "d_ode_probes")]
    pub probes: usize,
    /// Lower bound on |1 − a x (t − τ)|.
    #[serde(default = "d_margin")]
    pub margin: f64,
    #[serde(default = "d_b_values")]
    pub b_values: Vec<f64>,
    #[serde(default = "d_r2_probes")]
    pub r2_probes: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BurgersProfileName {
    Gaussian,
    Constant,
    Table,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BurgersParams {
    pub a: f64,
    pub nu: f64,
    pub profile: BurgersProfileName,
    #[serde(default = "d_one")]
    pub amplitude: f64,
    #[serde(default = "d_one")]
    pub width: f64,
    /// Level of the constant profile (also used by the constant-profile check).
    #[serde(default = "d_constant")]
    pub constant: f64,
    /// `x,f` table for `profile = "table"`.
    pub table: Option<PathBuf>,
    #[serde(default = "d_one")]
    pub t_max: f64,
    #[serde(default = "d_fd_dx")]
    pub fd_dx: f64,
    #[serde(default = "d_half_span")]
    pub half_span: f64,
    #[serde(default = "d_nodes")]
    pub nodes: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BeamName {
    Sech2,
    Gaussian,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NloFlatParams {
    pub alpha: f64,
    pub profile: BeamName,
    #[serde(default = "d_order_alphas")]
    pub order_alphas: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NloCylParams {
    pub alpha: f64,
    pub t_curv: f64,
    pub profile: BeamName,
    /// Diffraction strength for the β ≠ 0 checks.
    #[serde(default = "d_beta")]
    pub beta: f64,
    #[serde(default = "d_t_probes")]
    pub t_probes: Vec<f64>,
    #[serde(default = "d_x_probes")]
    pub x_probes: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Perturbs the special-function values used by the plasma checks.
    SpecialTable,
    /// Makes the first plasma check panic.
    Panic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlasmaParams {
    pub regime: rgsslab::plasma::Regime,
    pub a: f64,
    #[serde(default = "d_r8_probes")]
    pub r8_probes: usize,
    pub fault: Option<Fault>,
}

fn d_k() -> f64 {
    1.5
}
fn d_samples() -> usize {
    1000
}
fn d_g_max() -> f64 {
    0.4
}
fn d_one() -> f64 {
    1.0
}
fn d_automodel_points() -> usize {
    200
}
fn d_ode_probes() -> usize {
    200
}
fn d_margin() -> f64 {
    0.2
}
fn d_b_values() -> Vec<f64> {
    vec![0.1, 0.2, 0.3, 0.4, 0.5]
}
fn d_r2_probes() -> usize {
    8
}
fn d_constant() -> f64 {
    0.4
}
fn d_fd_dx() -> f64 {
    0.05
}
fn d_half_span() -> f64 {
    10.0
}
fn d_nodes() -> usize {
    256
}
fn d_order_alphas() -> Vec<f64> {
    vec![0.1, 0.05, 0.025]
}
fn d_beta() -> f64 {
    0.01
}
fn d_t_probes() -> Vec<f64> {
    vec![0.1, 0.25, 0.5, 0.75, 1.0]
}
fn d_x_probes() -> Vec<f64> {
    vec![0.25, 0.5, 1.0]
}
fn d_r8_probes() -> usize {
    24
}

/// Typed model parameters, one variant per scenario kind.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ModelParams {
    Rgflow(RgflowParams),
    OdeEmbedding(OdeParams),
    Burgers(BurgersParams),
    NloFlat(NloFlatParams),
    NloCyl(NloCylParams),
    Plasma(PlasmaParams),
}

fn typed<T: DeserializeOwned>(table: &toml::Table) -> CliResult<T> {
    T::deserialize(toml::Value::Table(table.clone())).map_err(|e| CliError::Parse(format!("[params]: {}", e.message())))
}

fn positive(key: &str, v: f64) -> CliResult<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(CliError::BadParam { key: key.into(), msg: format!("must be positive, got {v}") })
    }
}

fn non_negative(key: &str, v: f64) -> CliResult<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(CliError::BadParam { key: key.into(), msg: format!("must be ≥ 0, got {v}") })
    }
}

fn at_least(key: &str, v: usize, min: usize) -> CliResult<()> {
    if v >= min {
        Ok(())
    } else {
        Err(CliError::BadParam { key: key.into(), msg: format!("must be ≥ {min}, got {v}") })
    }
}

impl ModelParams {
    pub fn kind(&self) -> Kind {
        match self {
            ModelParams::Rgflow(_) => Kind::Rgflow,
            ModelParams::OdeEmbedding(_) => Kind::OdeEmbedding,
            ModelParams::Burgers(_) => Kind::Burgers,
            ModelParams::NloFlat(_) => Kind::NloFlat,
            ModelParams::NloCyl(_) => Kind::NloCyl,
            ModelParams::Plasma(_) => Kind::Plasma,
        }
    }

    fn parse(kind: Kind, table: &toml::Table) -> CliResult<Self> {
        for key in kind.required_keys() {
            if !table.contains_key(*key) {
                return Err(CliError::MissingKey { kind: kind.to_string(), key });
            }
        }
        let p = match kind {
            Kind::Rgflow => ModelParams::Rgflow(typed(table)?),
            Kind::OdeEmbedding => ModelParams::OdeEmbedding(typed(table)?),
            Kind::Burgers => ModelParams::Burgers(typed(table)?),
            Kind::NloFlat => ModelParams::NloFlat(typed(table)?),
            Kind::NloCyl => ModelParams::NloCyl(typed(table)?),
            Kind::Plasma => ModelParams::Plasma(typed(table)?),
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> CliResult<()> {
        match self {
            ModelParams::Rgflow(p) => {
                if p.beta.to_vec().is_empty() {
                    return Err(CliError::BadParam { key: "beta".into(), msg: "empty list".into() });
                }
                positive("k", p.k.abs())?;
                at_least("samples", p.samples, 1)?;
                positive("g_max", p.g_max)?;
                positive("l_max", p.l_max)?;
                at_least("automodel_points", p.automodel_points, 2)
            }
            ModelParams::OdeEmbedding(p) => {
                positive("a", p.a)?;
                at_least("probes", p.probes, 1)?;
                positive("margin", p.margin)?;
                at_least("r2_probes", p.r2_probes, 1)?;
                p.b_values.iter().try_for_each(|b| non_negative("b_values", *b))
            }
            ModelParams::Burgers(p) => {
                positive("nu", p.nu)?;
                if !p.a.is_finite() {
                    return Err(CliError::BadParam { key: "a".into(), msg: "must be finite".into() });
                }
                positive("width", p.width)?;
                positive("t_max", p.t_max)?;
                positive("fd_dx", p.fd_dx)?;
                positive("half_span", p.half_span)?;
                at_least("nodes", p.nodes, 64)?;
                if p.profile == BurgersProfileName::Table && p.table.is_none() {
                    return Err(CliError::MissingKey { kind: Kind::Burgers.to_string(), key: "table" });
                }
                Ok(())
            }
            ModelParams::NloFlat(p) => {
                non_negative("alpha", p.alpha)?;
                if p.order_alphas.len() < 3 {
                    return Err(CliError::BadParam { key: "order_alphas".into(), msg: "need at least three values".into() });
                }
                p.order_alphas.iter().try_for_each(|a| positive("order_alphas", *a))
            }
            ModelParams::NloCyl(p) => {
                non_negative("alpha", p.alpha)?;
                positive("t_curv", p.t_curv)?;
                non_negative("beta", p.beta)?;
                p.t_probes.iter().try_for_each(|t| positive("t_probes", *t))?;
                p.x_probes.iter().try_for_each(|x| positive("x_probes", *x))
            }
            ModelParams::Plasma(p) => {
                non_negative("a", p.a)?;
                at_least("r8_probes", p.r8_probes, 1)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSpec {
    pub id: String,
    pub tolerance: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    schema: Option<String>,
    kind: Option<Kind>,
    name: Option<String>,
    #[serde(default)]
    params: toml::Table,
    #[serde(default)]
    checks: Vec<CheckSpec>,
    #[serde(default)]
    seed: u64,
    output: Option<PathBuf>,
}

/// A check selected by a scenario, with its effective tolerance.
#[derive(Debug, Clone, Copy)]
pub struct SelectedCheck {
    pub def: &'static CheckDef,
    pub tolerance: f64,
}

/// A parsed and validated scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub params: ModelParams,
    pub checks: Vec<SelectedCheck>,
    pub seed: u64,
    pub output: Option<PathBuf>,
}

impl Scenario {
    pub fn kind(&self) -> Kind {
        self.params.kind()
    }

    /// Parses and validates; no numerical work happens here.
    pub fn parse(text: &str, default_name: &str) -> CliResult<Self> {
        let raw: RawScenario = toml::from_str(text).map_err(|e| CliError::Parse(e.message().to_string()))?;
        match raw.schema.as_deref() {
            Some(SCHEMA) => {}
            Some(other) => return Err(CliError::Schema(other.into())),
            None => return Err(CliError::MissingKey { kind: "scenario".into(), key: "schema" }),
        }
        let kind = raw.kind.ok_or(CliError::MissingKey { kind: "scenario".into(), key: "kind" })?;
        let params = ModelParams::parse(kind, &raw.params)?;
        let checks = if raw.checks.is_empty() {
            checks::for_kind(kind).map(|def| SelectedCheck { def, tolerance: def.default_tolerance }).collect()
        } else {
            raw.checks
                .iter()
                .map(|c| {
                    let def = checks::lookup(&c.id)
                        .filter(|d| d.kind == kind)
                        .ok_or_else(|| CliError::UnknownCheck { id: c.id.clone(), kind: kind.to_string() })?;
                    let tolerance = c.tolerance.unwrap_or(def.default_tolerance);
                    if !(tolerance > 0.0 && tolerance.is_finite()) {
                        return Err(CliError::BadTolerance { id: c.id.clone(), tol: tolerance });
                    }
                    Ok(SelectedCheck { def, tolerance })
                })
                .collect::<CliResult<Vec<_>>>()?
        };
        Ok(Self { name: raw.name.unwrap_or_else(|| default_name.to_string()), params, checks, seed: raw.seed, output: raw.output })
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("scenario");
        let mut s = Self::parse(&text, stem)?;
        // Relative paths inside the scenario are relative to the file.
        if let (Some(dir), ModelParams::Burgers(p)) = (path.parent(), &mut s.params) {
            if let Some(t) = p.table.as_mut() {
                if t.is_relative() {
                    *t = dir.join(&*t);
                }
            }
        }
        Ok(s)
    }
}
