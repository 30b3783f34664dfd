use std::fmt;

use serde::{Serialize, Serializer};

use super::rational::{exact_isqrt, Rational};

/// Outcome of taking the square root of a rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SqrtClass {
    /// Nonnegative rational root.
    RationalValue(Rational),
    /// Positive nonsquare radicand.
    IrrationalReal(Rational),
    /// Negative radicand.
    Imaginary(Rational),
}

impl SqrtClass {
    pub fn is_rational(&self) -> bool {
        matches!(self, SqrtClass::RationalValue(_))
    }

    pub fn rational(&self) -> Option<&Rational> {
        match self {
            SqrtClass::RationalValue(v) => Some(v),
            _ => None,
        }
    }

    /// The radicand this class was computed from.
    pub fn radicand(&self) -> Rational {
        match self {
            SqrtClass::RationalValue(v) => v * v,
            SqrtClass::IrrationalReal(r) | SqrtClass::Imaginary(r) => r.clone(),
        }
    }

    /// Principal real value; imaginary roots map to NaN.
    pub fn to_f64(&self) -> f64 {
        match self {
            SqrtClass::RationalValue(v) => v.to_f64(),
            SqrtClass::IrrationalReal(r) => r.to_f64().sqrt(),
            SqrtClass::Imaginary(_) => f64::NAN,
        }
    }
}

impl fmt::Display for SqrtClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SqrtClass::RationalValue(v) => write!(f, "{v}"),
            SqrtClass::IrrationalReal(r) | SqrtClass::Imaginary(r) => write!(f, "sqrt({r})"),
        }
    }
}

impl Serialize for SqrtClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub fn sqrt_classify(r: &Rational) -> SqrtClass {
    if r.is_negative() {
        return SqrtClass::Imaginary(r.clone());
    }
    match (exact_isqrt(r.numer()), exact_isqrt(r.denom())) {
        (Some(n), Some(d)) => SqrtClass::RationalValue(Rational::from_bigints(n, d).expect("d > 0")),
        _ => SqrtClass::IrrationalReal(r.clone()),
    }
}
