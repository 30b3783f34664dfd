//! Floating-point corroboration: adaptive and symplectic integration,
//! numeric continuation of the variational equations around their singular
//! points, contour-integral residues and Poincare sections.

mod flow;
mod integrate;
mod lame;
mod loops;
mod oracle;
mod section;

pub use flow::{integrate_flow, Flow, State, Trajectory};
pub use integrate::{
    oracle_tolerance, precision_bits, propagate, tolerance_for_bits, IntegratorConfig, Method, PRECISION_VAR,
};
pub use lame::lame_contour_residue;
pub use loops::{solve_on_circle, Circle, LoopSolutions};
pub use oracle::{contour_residue, contour_residues, default_radius, max_radius, series_vs_numeric, Component, FloatVe};
pub use section::{
    poincare_section, section_start, write_section_csv, write_trajectory_csv, CROSSING_TOL, TIME_PER_CROSSING,
};
