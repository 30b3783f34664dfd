//! Exact scalars: reduced rationals, square-root classes, elements of a
//! quadratic field and the rational-cosine independence test.

mod berger;
mod quad;
mod rational;
mod sqrt;

pub use berger::berger_independent;
pub use quad::{quad_arith, QuadExt};
pub use rational::{denominator_n, Rational};
pub use sqrt::{sqrt_classify, SqrtClass};


