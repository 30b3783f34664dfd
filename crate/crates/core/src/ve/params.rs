use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Rational;

/// Coefficients of the trap potential and the energy constant `h` of the
/// particular solution `zdot^2 = -2(E z^4 + C z^3 + B z^2 + h)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TrapParams {
    #[serde(rename = "A")]
    pub a: Rational,
    #[serde(rename = "B")]
    pub b: Rational,
    #[serde(rename = "C")]
    pub c: Rational,
    #[serde(rename = "D")]
    pub d: Rational,
    #[serde(rename = "E")]
    pub e: Rational,
    #[serde(rename = "F")]
    pub f: Rational,
    #[serde(rename = "G")]
    pub g: Rational,
    #[serde(default)]
    pub h: Rational,
}

impl TrapParams {
    /// Integer parameters `(A, B, C, D, E, F, G)` with `h = 0`.
    pub fn from_ints(v: [i64; 7]) -> Self {
        let r = |i: usize| Rational::from(v[i]);
        TrapParams { a: r(0), b: r(1), c: r(2), d: r(3), e: r(4), f: r(5), g: r(6), h: Rational::zero() }
    }

    /// Parses seven (or eight, with `h`) rational strings.
    pub fn parse(fields: &[&str]) -> Result<Self> {
        const NAMES: [&str; 8] = ["A", "B", "C", "D", "E", "F", "G", "h"];
        if fields.len() != 7 && fields.len() != 8 {
            return Err(Error::Parse {
                field: "params".into(),
                message: format!("expected 7 or 8 values, got {}", fields.len()),
            });
        }
        let mut vals = Vec::with_capacity(8);
        for (name, s) in NAMES.iter().zip(fields) {
            let v: Rational = s.trim().parse().map_err(|e| match e {
                Error::Parse { message, .. } => Error::Parse { field: (*name).into(), message },
                other => other,
            })?;
            vals.push(v);
        }
        if vals.len() == 7 {
            vals.push(Rational::zero());
        }
        let mut it = vals.into_iter();
        let mut next = || it.next().expect("length checked");
        Ok(TrapParams { a: next(), b: next(), c: next(), d: next(), e: next(), f: next(), g: next(), h: next() })
    }

    pub fn with_h(mut self, h: Rational) -> Self {
        self.h = h;
        self
    }

    /// Potential `V(r, z)` in floating point.
    pub fn potential(&self, r: f64, z: f64) -> f64 {
        let [a, b, c, d, e, f, g] = self.floats();
        let r2 = r * r;
        a * r2 + b * z * z + c * z * z * z + d * r2 * z + e * z.powi(4) + f * r2 * z * z + g * r2 * r2
    }

    /// `(A, B, C, D, E, F, G)` as floats.
    pub fn floats(&self) -> [f64; 7] {
        [&self.a, &self.b, &self.c, &self.d, &self.e, &self.f, &self.g].map(Rational::to_f64)
    }
}

impl fmt::Display for TrapParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(A={}, B={}, C={}, D={}, E={}, F={}, G={}, h={})",
            self.a, self.b, self.c, self.d, self.e, self.f, self.g, self.h
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_reports_offending_field() {
        let err = TrapParams::parse(&["1", "1/0", "0", "0", "0", "0", "0"]).unwrap_err();
        assert!(matches!(err, Error::Parse { ref field, .. } if field == "B"), "{err:?}");
    }

    #[test]
    fn json_uses_capital_keys() {
        let p = TrapParams::from_ints([1, 2, 3, 4, 5, 6, 7]);
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("\"A\":\"1\"") && s.contains("\"h\":\"0\""), "{s}");
        let back: TrapParams = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
