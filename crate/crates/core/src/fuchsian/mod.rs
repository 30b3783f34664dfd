//! Local analysis of second-order linear equations with exact
//! partial-fraction coefficients: indicial exponents, Frobenius series,
//! monodromy trace data and Laurent-series residues.

mod ode;
mod pf;
mod series;

pub use ode::{
    rational_cos_pi, Exponent, FuchsOde, IndicialPair, LocalOde, ResonancePolicy, TraceClass,
    TraceEntry,
};
pub use pf::{taylor_shift, PartialFractions, PoleTerm};
pub use series::{ps, residue_at, series_mul, Point, Series};

use crate::error::Result;

/// `y1 y2' - y1' y2` with derivatives taken in the global variable `z`.
pub fn wronskian(y1: &Series, y2: &Series) -> Result<Series> {
    y1.mul(&y2.derivative_z())?.sub(&y1.derivative_z().mul(y2)?)
}
