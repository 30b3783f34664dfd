use num_bigint::BigInt;

use super::rational::{denominator_n, Rational};
use crate::error::{Error, Result};

/// Decides whether `1, cos(pi r1), cos(pi r2)` are linearly independent over
/// the rationals.
///
/// Requires `r1 + r2` and `r1 - r2` to be non-integers. Denominators 1, 2, 3
/// give rational cosines and therefore count as dependent.
pub fn berger_independent(r1: &Rational, r2: &Rational) -> Result<bool> {
    if (r1 + r2).is_integer() || (r1 - r2).is_integer() {
        return Err(Error::PreconditionViolation(format!(
            "r1 +- r2 is an integer for ({r1}, {r2})"
        )));
    }
    let four = BigInt::from(4);
    let five = BigInt::from(5);
    let n1 = denominator_n(r1);
    let n2 = denominator_n(r2);
    Ok(n1 >= four && n2 >= four && !(n1 == five && n2 == five))
}
