//! Check registry. Every check id maps to one library operation and carries
//! the identity it verifies.

mod burgers;
mod nlo;
mod ode;
mod plasma;
mod rgflow;

use std::fmt::Write;

use crate::probes::ProbeRng;
use crate::scenario::{Kind, ModelParams};

/// One measured probe of a check.
#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    pub probe: String,
    pub measured: f64,
    pub reference: f64,
    pub residual: f64,
}

impl Measurement {
    pub fn new(probe: String, measured: f64, reference: f64, residual: f64) -> Self {
        Self { probe, measured, reference, residual }
    }

    /// Residual = measured − reference.
    pub fn diff(probe: String, measured: f64, reference: f64) -> Self {
        Self::new(probe, measured, reference, measured - reference)
    }

    /// Residual = (measured − reference)/|reference|.
    pub fn rel(probe: String, measured: f64, reference: f64) -> Self {
        Self::new(probe, measured, reference, (measured - reference) / reference.abs())
    }

    /// A pure residual whose reference value is zero.
    pub fn zero(probe: String, residual: f64) -> Self {
        Self::new(probe, residual, 0.0, residual)
    }
}

/// Tracks the probe with the largest |residual| over a sample set.
#[derive(Debug, Default)]
pub(crate) struct Worst {
    best: Option<Measurement>,
    pub count: usize,
}

impl Worst {
    pub fn offer(&mut self, m: Measurement) {
        self.count += 1;
        let replace = match &self.best {
            None => true,
            // NaN residuals always win so failures surface.
            Some(b) => m.residual.is_nan() || m.residual.abs() > b.residual.abs(),
        };
        if replace && !self.best.as_ref().is_some_and(|b| b.residual.is_nan()) {
            self.best = Some(m);
        }
    }

    /// The worst probe, with `prefix` and the sample count prepended.
    pub fn finish(self, prefix: &str) -> Option<Measurement> {
        let n = self.count;
        self.best.map(|mut m| {
            m.probe = format!("{prefix}worst of {n};{}", m.probe);
            m
        })
    }
}

/// `k=v;k=v` probe coordinates.
pub fn coords(pairs: &[(&str, f64)]) -> String {
    let mut s = String::new();
    for (i, (k, v)) in pairs.iter().enumerate() {
        if i > 0 {
            s.push(';');
        }
        let _ = write!(s, "{k}={v}");
    }
    s
}

pub struct CheckCtx<'a> {
    pub params: &'a ModelParams,
    pub seed: u64,
    pub id: &'static str,
}

impl CheckCtx<'_> {
    /// Probe generator for a named sub-case of this check.
    pub fn rng(&self, sub: &str) -> ProbeRng {
        ProbeRng::new(self.seed, &format!("{}/{sub}", self.id))
    }
}

pub type CheckFn = fn(&CheckCtx<'_>) -> rgsslab::Result<Vec<Measurement>>;

#[derive(Debug)]
pub struct CheckDef {
    pub id: &'static str,
    pub kind: Kind,
    /// Library operation under test.
    pub operation: &'static str,
    /// The identity or comparison being verified.
    pub identity: &'static str,
    pub default_tolerance: f64,
    pub run: CheckFn,
}

macro_rules! check {
    ($id:literal, $kind:ident, $op:literal, $identity:literal, $tol:expr, $run:path) => {
        CheckDef { id: $id, kind: Kind::$kind, operation: $op, identity: $identity, default_tolerance: $tol, run: $run }
    };
}

pub static REGISTRY: &[CheckDef] = &[
    check!(
        "rgflow.group_law",
        Rgflow,
        "vfield::compose_residual",
        "T(l2)∘T(l1) = T(l1+l2) for the Lie flow of x dg/dx = β(g)",
        1e-8,
        rgflow::group_law
    ),
    check!(
        "rgflow.automodel",
        Rgflow,
        "rgflow::effective_coupling",
        "β = k g gives ḡ(x, g) = g x^k (relative error)",
        1e-9,
        rgflow::automodel
    ),
    check!(
        "rgflow.functional_equation",
        Rgflow,
        "rgflow::functional_equation_residual",
        "ḡ(x, g) = ḡ(x/a, ḡ(a, g))",
        1e-8,
        rgflow::functional_equation
    ),
    check!(
        "ode.r1_reconstruction",
        OdeEmbedding,
        "ode_embedding::reconstruct_via_r1",
        "R1 flow from a = 0 reproduces u(t) of u' = a u² (relative to direct integration)",
        1e-7,
        ode::r1_reconstruction
    ),
    check!(
        "ode.implicit_reconstruction",
        OdeEmbedding,
        "ode_embedding::reconstruct_implicit",
        "root of ⟨1/f⟩(u) − ⟨1/f⟩(x) = t − τ equals u(t) (relative to direct integration)",
        1e-7,
        ode::implicit_reconstruction
    ),
    check!(
        "ode.fs_r1",
        OdeEmbedding,
        "ode_embedding::fs_residual_r1",
        "t u² − x² τ u_x − u_a = 0 on the R1-reconstructed solution",
        1e-6,
        ode::fs_r1
    ),
    check!(
        "ode.r2_continuation",
        OdeEmbedding,
        "ode_embedding::reconstruct_via_r2",
        "R2 continuation in b of u' = u² + b u³ equals direct integration",
        1e-6,
        ode::r2_continuation
    ),
    check!(
        "burgers.fd_oracle",
        Burgers,
        "burgers::exact_solution",
        "(ν/a) ln⟨⟨1⟩⟩ equals the finite-difference solution (error relative to max |u|)",
        5e-3,
        burgers::fd_oracle
    ),
    check!(
        "burgers.fd_refinement",
        Burgers,
        "burgers::fd_oracle",
        "halving dx (dt/4) divides the finite-difference error by 4 (observed order − 2)",
        0.5,
        burgers::fd_refinement
    ),
    check!(
        "burgers.fs_r5",
        Burgers,
        "burgers::fs_residual_r5",
        "−u_a − u/a + (1/a) e^{−au/ν} ⟨⟨f⟩⟩ = 0 on the exact solution",
        1e-5,
        burgers::fs_r5
    ),
    check!(
        "burgers.fs_r6",
        Burgers,
        "burgers::fs_residual_r6",
        "−u_t + e^{−au/ν} ⟨⟨a f_x² + ν f_xx⟩⟩ = 0 on the exact solution",
        1e-5,
        burgers::fs_r6
    ),
    check!(
        "burgers.constant_profile",
        Burgers,
        "burgers::exact_solution",
        "f ≡ c gives u ≡ c",
        1e-10,
        burgers::constant_profile
    ),
    check!(
        "nlo.r7_exact",
        NloFlat,
        "nlo::r7_coordinates",
        "R7 canonical coordinates vanish on the hodograph solution (relative to the largest term)",
        1e-4,
        nlo::r7_exact
    ),
    check!(
        "nlo.r7_control",
        NloFlat,
        "nlo::r7_coordinates",
        "R7 does not annihilate the Gaussian beam: relative residual ≥ 1e−2 (residual = decades below 1)",
        2.0,
        nlo::r7_control
    ),
    check!(
        "nlo.order_gauss_a",
        NloFlat,
        "nlo::order_check",
        "gauss_a truncated coordinates leave an O(α²) residual (residual = max(0, 2 − slope))",
        0.3,
        nlo::order_gauss_a
    ),
    check!(
        "nlo.order_gauss_b",
        NloFlat,
        "nlo::order_check",
        "gauss_b truncated coordinates leave an O(α²) residual (residual = max(0, 2 − slope))",
        0.3,
        nlo::order_gauss_b
    ),
    check!(
        "nlo.soliton_a_floor",
        NloFlat,
        "nlo::fs_residual",
        "soliton_a coordinates are exact: residual at the roundoff floor for every α",
        1e-10,
        nlo::soliton_a_floor
    ),
    check!(
        "nlo.r9_vs_direct",
        NloCyl,
        "nlo::R9Surface::eval",
        "R9 invariant surface equals the direct series solution (β = 0) before focusing",
        1e-5,
        nlo::r9_vs_direct
    ),
    check!(
        "nlo.r9_focusing_exact",
        NloCyl,
        "nlo::R9Surface::eval",
        "α = β = 0: R9 surface equals geometric focusing v = −x/(T − t)",
        1e-9,
        nlo::r9_focusing_exact
    ),
    check!(
        "nlo.r9_transversality",
        NloCyl,
        "nlo::r9_coefficients",
        "∂_t coefficient of R9 equals 1 on the boundary t = 0",
        1e-14,
        nlo::r9_transversality
    ),
    check!(
        "nlo.r9_refinement",
        NloCyl,
        "nlo::refinement_check",
        "FS residual with diffraction converges at second order under grid refinement (order − 2)",
        0.5,
        nlo::r9_refinement
    ),
    check!(
        "nlo.axis_series",
        NloCyl,
        "nlo::SFunction",
        "χ → 0 series of the diffraction term matches direct evaluation (relative)",
        1e-8,
        nlo::axis_series
    ),
    check!(
        "plasma.pde_residual",
        Plasma,
        "plasma::pde_residual",
        "parametric solution satisfies the cold-fluid system off the fold",
        1e-8,
        plasma::pde_residual
    ),
    check!(
        "plasma.fs_r8",
        Plasma,
        "plasma::fs_residual_r8",
        "(v_a − E v_x, E_a − E E_x) = 0 on the inverted solution",
        1e-6,
        plasma::fs_r8
    ),
    check!(
        "plasma.q_oracle",
        Plasma,
        "plasma::q_hot",
        "(q1, q2) = cubic-phase integrals ∫cos, ∫sin(s³/3 + μ s) ds by quadrature",
        1e-8,
        plasma::q_oracle
    ),
    check!(
        "plasma.airy_oracle",
        Plasma,
        "plasma::airy",
        "Ai, Ai′ equal fixed-step RK4 of y″ = μ y from Ai(0), Ai′(0)",
        1e-9,
        plasma::airy_oracle
    ),
    check!(
        "plasma.scorer_oracle",
        Plasma,
        "plasma::scorer",
        "Gi, Gi′ equal fixed-step RK4 of y″ − μ y = −1/π from Gi(0), Gi′(0)",
        1e-9,
        plasma::scorer_oracle
    ),
];

pub fn lookup(id: &str) -> Option<&'static CheckDef> {
    REGISTRY.iter().find(|c| c.id == id)
}

pub fn for_kind(kind: Kind) -> impl Iterator<Item = &'static CheckDef> {
    REGISTRY.iter().filter(move |c| c.kind == kind)
}
