//! Exact symbolic-numeric auditor for the integrability of the two-dimensional
//! trapped-ion Hamiltonian
//!
//! `H = (p_r^2 + p_z^2)/2 + A r^2 + B z^2 + C z^3 + D r^2 z + E z^4 + F r^2 z^2 + G r^4`.
//!
//! The crate builds the variational equations along the invariant plane
//! `r = p_r = 0` in exact arithmetic, derives local series data at their
//! singular points, and runs the decision procedure that separates provably
//! non-integrable parameter sets from integrable or undecided ones. A
//! floating-point oracle integrates the same equations numerically so that
//! every exact residue can be cross-checked.

pub mod error;
pub mod exactnum;
pub mod fuchsian;
pub mod ve;
pub mod classifier;
pub mod numerics;
pub mod report;
pub mod cli;

pub use error::{Error, Result};
