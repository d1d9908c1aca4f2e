//! Collimated-beam nonlinear optics: hodograph solutions, Lie–Bäcklund
//! coordinates and approximate symmetries, and the cylindrical-beam operator.

mod beam;
mod cyl;
mod direct;
mod hodograph;
mod lb;

pub use beam::{boundary_to_hodograph, BeamBoundary, BeamProfile, Geometry, HFunction};
pub use hodograph::{
    series_point, solve_hodograph, HodographGrid, HodographMethod, HodographSample, HodographSpec, MARCH_CFL_LIMIT,
};
pub use lb::{
    approx_coeffs, approx_coeffs_leading, default_probes, fs_residual, lb_coordinates_r7, lb_operators, order_check,
    r7_coordinates, r7_scale, AlphaGrids, ApproxKind, Binomial, G3Reading, LbCoordPair, LbOperators, OrderReport,
    NOISE_FLOOR,
};
pub use cyl::{
    basic_residual, boundary_point, propagate_r9, r9_coefficients, r9_field, r9_trajectory, refinement_check,
    R9Surface, RefinementReport, SFunction, AXIS_SERIES_RADIUS,
};
pub use direct::{
    direct_nlo_solver, hodograph_physical_residual, hodograph_to_physical, physical_to_hodograph, DirectNloSolver,
    DirectSpec,
};
