use std::fmt;

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{QuadExt, Rational};

/// Expansion point of a local series: a finite point of the quadratic field
/// or the point at infinity (local variable `w = 1/z`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Finite(QuadExt),
    Infinity,
}

impl Point {
    pub fn finite(x: impl Into<QuadExt>) -> Self {
        Point::Finite(x.into())
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn value(&self) -> Option<&QuadExt> {
        match self {
            Point::Finite(x) => Some(x),
            Point::Infinity => None,
        }
    }

    /// Local coordinate of a global point `z`.
    pub fn local(&self, z: Complex64) -> Complex64 {
        match self {
            Point::Finite(c) => z - c.to_complex(),
            Point::Infinity => 1.0 / z,
        }
    }

    fn var(&self) -> String {
        match self {
            Point::Finite(c) if c.is_zero() => "z".into(),
            Point::Finite(c) => format!("(z-({c}))"),
            Point::Infinity => "(1/z)".into(),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(c) => write!(f, "{c}"),
            Point::Infinity => write!(f, "oo"),
        }
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Truncated power-series helpers on coefficient vectors.
pub mod ps {
    use super::*;

    pub fn mul(a: &[QuadExt], b: &[QuadExt], n: usize) -> Vec<QuadExt> {
        let mut out = vec![QuadExt::zero(); n];
        for (i, x) in a.iter().enumerate().take(n) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(n - i) {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
        out
    }

    pub fn add(a: &[QuadExt], b: &[QuadExt], n: usize) -> Vec<QuadExt> {
        (0..n)
            .map(|k| {
                let x = a.get(k).cloned().unwrap_or_default();
                let y = b.get(k).cloned().unwrap_or_default();
                x + y
            })
            .collect()
    }

    pub fn scale(a: &[QuadExt], c: &QuadExt) -> Vec<QuadExt> {
        a.iter().map(|x| x * c).collect()
    }

    /// `a^s` for `a[0] = 1`.
    pub fn pow(a: &[QuadExt], s: &Rational, n: usize) -> Vec<QuadExt> {
        assert!(a.first().is_some_and(QuadExt::is_one), "pow needs unit constant term");
        let mut g = vec![QuadExt::zero(); n];
        if n == 0 {
            return g;
        }
        g[0] = QuadExt::one();
        let s1 = s + &Rational::one();
        for m in 1..n {
            let mut acc = QuadExt::zero();
            for k in 1..=m.min(a.len().saturating_sub(1)) {
                let w = &s1 * &Rational::from(k as i64) - Rational::from(m as i64);
                if !w.is_zero() && !a[k].is_zero() {
                    acc = acc + (&a[k] * &g[m - k]).scale(&w);
                }
            }
            g[m] = acc.scale(&Rational::new(1, m as i64));
        }
        g
    }

    pub fn inv(a: &[QuadExt], n: usize) -> Result<Vec<QuadExt>> {
        let a0 = a.first().cloned().unwrap_or_default();
        let r0 = a0.recip()?;
        let mut g = vec![QuadExt::zero(); n];
        if n == 0 {
            return Ok(g);
        }
        g[0] = r0.clone();
        for m in 1..n {
            let mut acc = QuadExt::zero();
            for k in 1..=m.min(a.len().saturating_sub(1)) {
                acc = acc + &a[k] * &g[m - k];
            }
            g[m] = -(acc * &r0);
        }
        Ok(g)
    }

    /// Coefficients of `(1 + c x)^s`.
    pub fn binomial_series(s: &Rational, c: &QuadExt, n: usize) -> Vec<QuadExt> {
        let mut out = Vec::with_capacity(n);
        let mut coef = Rational::one();
        let mut cp = QuadExt::one();
        for k in 0..n {
            out.push(cp.scale(&coef));
            coef = coef * (s - &Rational::from(k as i64)) * Rational::new(1, k as i64 + 1);
            cp = &cp * c;
        }
        out
    }
}

/// Local expansion `x^e * sum_{k < order} c_k x^k + O(x^(e + order))` in the
/// local variable `x` of `point`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    pub point: Point,
    pub exponent: Rational,
    pub coeffs: Vec<QuadExt>,
}

impl Series {
    pub fn new(point: Point, exponent: Rational, coeffs: Vec<QuadExt>) -> Self {
        Series { point, exponent, coeffs }
    }

    pub fn constant(point: Point, c: QuadExt, order: usize) -> Self {
        let mut coeffs = vec![QuadExt::zero(); order];
        if order > 0 {
            coeffs[0] = c;
        }
        Series::new(point, Rational::zero(), coeffs)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Index of the first nonzero coefficient, `order` if none.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.coeffs.len())
    }

    fn check_point(&self, other: &Series) -> Result<()> {
        if self.point != other.point {
            return Err(Error::ExpansionPointMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_point(other)?;
        let n = (self.order() + other.valuation()).min(other.order() + self.valuation());
        Ok(Series::new(
            self.point.clone(),
            &self.exponent + &other.exponent,
            ps::mul(&self.coeffs, &other.coeffs, n),
        ))
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_point(other)?;
        let gap = &self.exponent - &other.exponent;
        if !gap.is_integer() {
            return Err(Error::PreconditionViolation(format!(
                "series exponents {} and {} differ by a non-integer",
                self.exponent, other.exponent
            )));
        }
        let (lo, hi) = if gap.is_negative() { (self, other) } else { (other, self) };
        let shift = usize::try_from((&hi.exponent - &lo.exponent).floor()).unwrap_or(0);
        let n = lo.order().min(hi.order() + shift);
        let mut coeffs = lo.coeffs[..n].to_vec();
        for (k, c) in hi.coeffs.iter().enumerate() {
            if k + shift < n {
                coeffs[k + shift] = &coeffs[k + shift] + c;
            }
        }
        Ok(Series::new(self.point.clone(), lo.exponent.clone(), coeffs))
    }

    pub fn neg(&self) -> Series {
        Series::new(self.point.clone(), self.exponent.clone(), self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &QuadExt) -> Series {
        Series::new(self.point.clone(), self.exponent.clone(), ps::scale(&self.coeffs, c))
    }

    pub fn truncate(&self, order: usize) -> Series {
        let n = order.min(self.order());
        Series::new(self.point.clone(), self.exponent.clone(), self.coeffs[..n].to_vec())
    }

    /// Derivative in the local variable.
    pub fn derivative(&self) -> Series {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.scale(&(&self.exponent + &Rational::from(k as i64))))
            .collect();
        Series::new(self.point.clone(), &self.exponent - &Rational::one(), coeffs)
    }

    /// Derivative in the global variable `z` (`d/dz = -w^2 d/dw` at infinity).
    pub fn derivative_z(&self) -> Series {
        let d = self.derivative();
        match self.point {
            Point::Finite(_) => d,
            Point::Infinity => Series::new(
                self.point.clone(),
                &d.exponent + &Rational::from(2),
                d.coeffs.iter().map(|c| -c).collect(),
            ),
        }
    }

    /// Multiplies by `x^k` in the local variable.
    pub fn shift(&self, k: i64) -> Series {
        Series::new(self.point.clone(), &self.exponent + &Rational::from(k), self.coeffs.clone())
    }

    /// Principal-branch evaluation at local coordinate `x`.
    pub fn eval_local(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_complex();
        }
        acc * x.powf(self.exponent.to_f64())
    }

    /// Evaluation at the global point `z`.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.eval_local(self.point.local(z))
    }

    /// Flat `(exponent, coefficient)` pairs.
    pub fn terms(&self) -> Vec<(Rational, QuadExt)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (&self.exponent + &Rational::from(k as i64), c.clone()))
            .collect()
    }

    /// Coefficient of `x^p`, or `InsufficientTruncation` if not covered.
    pub fn coeff_of(&self, p: &Rational) -> Result<QuadExt> {
        let k = p - &self.exponent;
        if !k.is_integer() || k.is_negative() {
            return Ok(QuadExt::zero());
        }
        let idx = usize::try_from(k.floor()).map_err(|_| Error::InsufficientTruncation)?;
        self.coeffs.get(idx).cloned().ok_or(Error::InsufficientTruncation)
    }

    /// Residue in `z`: the coefficient of `(z - z0)^-1`, or minus the
    /// coefficient of `w^1` at infinity.
    pub fn residue(&self) -> Result<QuadExt> {
        match self.point {
            Point::Finite(_) => self.coeff_of(&Rational::from(-1)),
            Point::Infinity => Ok(-self.coeff_of(&Rational::one())?),
        }
    }

    pub fn residue_at(&self, point: &Point) -> Result<QuadExt> {
        if &self.point != point {
            return Err(Error::ExpansionPointMismatch);
        }
        self.residue()
    }
}

/// Product of several series sharing one expansion point.
pub fn series_mul(factors: &[&Series]) -> Result<Series> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::PreconditionViolation("empty product".into()))?;
    rest.iter().try_fold((*first).clone(), |acc, s| acc.mul(s))
}

pub fn residue_at(series: &Series, point: &Point) -> Result<QuadExt> {
    series.residue_at(point)
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.point.var();
        write!(f, "{v}^({}) * [", self.exponent)?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*{v}")?,
                _ => write!(f, "{c}*{v}^{k}")?,
            }
        }
        write!(f, " + O({v}^{})]", self.order())
    }
}

impl Serialize for Series {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<[String; 2]> =
            self.terms().into_iter().map(|(e, c)| [e.to_string(), c.to_string()]).collect();
        let mut st = s.serialize_struct("Series", 4)?;
        st.serialize_field("point", &self.point)?;
        st.serialize_field("exponent", &self.exponent)?;
        st.serialize_field("truncation_order", &self.order())?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}
