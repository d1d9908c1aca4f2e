//! Shared numerical kernels.

pub mod integrate;
pub mod jet;
pub mod numdiff;
pub mod quad;
pub mod roots;

pub use integrate::{dopri5, rk4_fixed, IntegratorConfig};
pub use jet::Jet;
pub use numdiff::{derivative, derivative_fn, NumDiffConfig};
pub use quad::{gauss_legendre, integrate_adaptive, CompositeGauss};
pub use roots::{bracketed, scan_roots};
