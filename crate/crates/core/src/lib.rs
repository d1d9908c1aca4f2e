//! Numerical laboratory for renormalization-group symmetries: Lie-equation
//! flows, functional self-similarity residuals and reconstruction of exact
//! solutions of boundary-value problems from perturbative data.

pub mod burgers;
pub mod error;
pub mod nlo;
pub mod numerics;
pub mod ode_embedding;
pub mod plasma;
pub mod rgflow;
pub mod vfield;

pub use error::{Result, RgsError};
pub use numerics::{IntegratorConfig, NumDiffConfig};
pub use vfield::{FnSampler, Point, SamplerMode, SolutionSampler, VectorField};
