//! Equations derived from the Hamiltonian along the invariant plane
//! `r = p_r = 0`: the normal and tangential variational equations, the
//! sources of the second variational equations and their residues at the
//! branch points, and the Lame, Whittaker and confluent Heun reductions of
//! the degenerate branches.

mod lame;
mod nve;
mod params;
mod special;
mod ve2;

pub use lame::{
    lame_component_residues, lame_data, lame_pair, lame_reduce, lame_residue, lame_solutions,
    weierstrass_series, LameData, LameSolutions, PrintedLame,
};
pub use nve::{build_nve, derive, generic_branch, roots, tangential_ode, DerivedQuantities};
pub use params::TrapParams;
pub use special::{confluent_heun_reduce, whittaker_reduce, ConfluentHeunData, WhittakerData};
pub use ve2::{
    closed_form_residue, displayed_product_residue, local_pairs, ve2_data, ve2_point, ve2_residues,
    ve2_sources, LocalPairs, Ve2Data, Ve2Point, Ve2Sources, DEFAULT_ORDER, MAX_ORDER,
};
