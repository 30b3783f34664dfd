use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{exact_isqrt, Rational};
use crate::error::{Error, Result};

/// Element `a + b*sqrt(d)` of a real or imaginary quadratic field.
///
/// `d` is kept as a square-free integer other than 0 and 1, and `d == 0`
/// exactly when `b == 0`; two elements are equal iff their fields are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: BigInt,
}

/// Splits `n` into `(s, m)` with `n = s^2 * m`. Squares of primes below the
/// trial bound are removed, then a remaining perfect square is absorbed.
fn square_part(n: &BigInt) -> (BigInt, BigInt) {
    let mut m = n.abs();
    let mut s = BigInt::one();
    let mut p = 2u32;
    while p < 1000 {
        let pp = BigInt::from(p * p);
        if pp > m {
            break;
        }
        while (&m % &pp).is_zero() {
            m /= &pp;
            s *= p;
        }
        p += 1;
    }
    if let Some(r) = exact_isqrt(&m) {
        s *= r;
        m = BigInt::one();
    }
    if n.is_negative() {
        m = -m;
    }
    (s, m)
}

impl QuadExt {
    pub fn rational(a: Rational) -> Self {
        QuadExt { a, b: Rational::zero(), d: BigInt::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        QuadExt::rational(Rational::from(n))
    }

    pub fn zero() -> Self {
        QuadExt::rational(Rational::zero())
    }

    pub fn one() -> Self {
        QuadExt::rational(Rational::one())
    }

    /// Builds `a + b*sqrt(d)` for rational `d`, normalizing the radicand.
    pub fn new(a: Rational, b: Rational, d: Rational) -> Self {
        if b.is_zero() || d.is_zero() {
            return QuadExt::rational(a);
        }
        // sqrt(p/q) = sqrt(p*q)/q
        let pq = d.numer() * d.denom();
        let (s, m) = square_part(&pq);
        let b = b * Rational::from_bigints(s, d.denom().clone()).expect("denominator > 0");
        if m.is_one() {
            QuadExt::rational(a + b)
        } else {
            QuadExt { a, b, d: m }
        }
    }

    /// Principal square root of a rational.
    pub fn sqrt_of(r: &Rational) -> Self {
        QuadExt::new(Rational::zero(), Rational::one(), r.clone())
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// Square-free radicand, 0 for rational elements.
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_rational() {
            Some(&self.a)
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from(self.d.clone()) * &self.b * &self.b
    }

    pub fn conj(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -&self.b, d: self.d.clone() }
    }

    fn common_d(&self, other: &QuadExt) -> Result<BigInt> {
        if self.d.is_zero() {
            Ok(other.d.clone())
        } else if other.d.is_zero() || self.d == other.d {
            Ok(self.d.clone())
        } else {
            Err(Error::RadicandMismatch(self.d.to_string(), other.d.to_string()))
        }
    }

    fn build(a: Rational, b: Rational, d: BigInt) -> Self {
        if b.is_zero() {
            QuadExt::rational(a)
        } else {
            QuadExt { a, b, d }
        }
    }

    pub fn try_add(&self, o: &QuadExt) -> Result<QuadExt> {
        let d = self.common_d(o)?;
        Ok(QuadExt::build(&self.a + &o.a, &self.b + &o.b, d))
    }

    pub fn try_sub(&self, o: &QuadExt) -> Result<QuadExt> {
        let d = self.common_d(o)?;
        Ok(QuadExt::build(&self.a - &o.a, &self.b - &o.b, d))
    }

    pub fn try_mul(&self, o: &QuadExt) -> Result<QuadExt> {
        let d = self.common_d(o)?;
        let dr = Rational::from(d.clone());
        let a = &self.a * &o.a + dr * &self.b * &o.b;
        let b = &self.a * &o.b + &self.b * &o.a;
        Ok(QuadExt::build(a, b, d))
    }

    pub fn recip(&self) -> Result<QuadExt> {
        let n = self.norm();
        let inv = n.checked_recip().ok_or(Error::DivisionByZeroNorm)?;
        Ok(QuadExt::build(&self.a * &inv, -(&self.b * &inv), self.d.clone()))
    }

    pub fn try_div(&self, o: &QuadExt) -> Result<QuadExt> {
        self.common_d(o)?;
        self.try_mul(&o.recip()?)
    }

    pub fn scale(&self, r: &Rational) -> QuadExt {
        QuadExt::build(&self.a * r, &self.b * r, self.d.clone())
    }

    pub fn add_rational(&self, r: &Rational) -> QuadExt {
        QuadExt::build(&self.a + r, self.b.clone(), self.d.clone())
    }

    pub fn pow(&self, n: u32) -> QuadExt {
        let mut acc = QuadExt::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact sign of a real element, `None` for imaginary radicands.
    pub fn signum(&self) -> Option<i32> {
        if self.d.is_negative() {
            return None;
        }
        let sa = self.a.signum();
        let sb = self.b.signum();
        if sb == 0 || sa == sb {
            return Some(if sa == 0 { sb } else { sa });
        }
        if sa == 0 {
            return Some(sb);
        }
        // opposite signs: compare a^2 with d b^2
        let lhs = &self.a * &self.a;
        let rhs = Rational::from(self.d.clone()) * &self.b * &self.b;
        Some(match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0,
        })
    }

    /// Real embedding using the positive branch of `sqrt(d)`.
    pub fn to_float(&self, precision: u32) -> Result<f64> {
        if precision < 53 {
            return Err(Error::PreconditionViolation(format!(
                "precision {precision} < 53 bits"
            )));
        }
        if self.d.is_negative() {
            return Err(Error::NegativeRadicandEmbedding(self.to_string()));
        }
        if self.b.is_zero() {
            return Ok(self.a.to_f64());
        }
        let k = precision as usize + 64;
        // floor(sqrt(d) * 2^k)
        let scaled = num_integer::Roots::sqrt(&(&self.d << (2 * k)));
        let root = Rational::from_bigints(scaled, BigInt::one() << k).expect("nonzero");
        let bs = &self.b * &root;
        if self.a.signum() * self.b.signum() < 0 {
            // a + b s = norm / (a - b s); the denominator has no cancellation
            let den = &self.a - &bs;
            Ok(self.norm().checked_div(&den).map(|r| r.to_f64()).unwrap_or(0.0))
        } else {
            Ok((&self.a + &bs).to_f64())
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_complex().re
    }

    /// Complex embedding, `sqrt(d) = i*sqrt(|d|)` for negative `d`.
    pub fn to_complex(&self) -> Complex64 {
        if self.d.is_negative() {
            let im = self.b.to_f64() * self.d.abs().to_f64().unwrap_or(f64::NAN).sqrt();
            Complex64::new(self.a.to_f64(), im)
        } else {
            Complex64::new(self.to_float(53).unwrap_or(f64::NAN), 0.0)
        }
    }
}

/// Dispatches one of the four field operations by name.
pub fn quad_arith(x: &QuadExt, y: &QuadExt, op: &str) -> Result<QuadExt> {
    match op {
        "add" => x.try_add(y),
        "sub" => x.try_sub(y),
        "mul" => x.try_mul(y),
        "div" => x.try_div(y),
        other => Err(Error::Parse { field: "op".into(), message: format!("unknown op {other:?}") }),
    }
}

impl From<Rational> for QuadExt {
    fn from(r: Rational) -> Self {
        QuadExt::rational(r)
    }
}

impl From<i64> for QuadExt {
    fn from(n: i64) -> Self {
        QuadExt::from_int(n)
    }
}

impl Default for QuadExt {
    fn default() -> Self {
        QuadExt::zero()
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.d)
        } else if self.b.is_negative() {
            write!(f, "{}-{}*sqrt({})", self.a, self.b.abs(), self.d)
        } else {
            write!(f, "{}+{}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for QuadExt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { field: "quadext".into(), message: format!("{s:?}") };
        match s.strip_suffix(')').and_then(|t| t.split_once("*sqrt(")) {
            None => Ok(QuadExt::rational(s.parse()?)),
            Some((ab, d)) => {
                let d: Rational = d.parse()?;
                let cut = ab.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').last();
                let (a, b) = match cut {
                    None => (Rational::zero(), ab.parse()?),
                    Some((i, sign)) => {
                        let b: Rational = ab[i + 1..].parse()?;
                        let b = if sign == '-' { -b } else { b };
                        (ab[..i].parse()?, b)
                    }
                };
                if ab.is_empty() {
                    return Err(bad());
                }
                Ok(QuadExt::new(a, b, d))
            }
        }
    }
}

impl Serialize for QuadExt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QuadExt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! quad_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl<'a, 'b> $tr<&'b QuadExt> for &'a QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: &'b QuadExt) -> QuadExt {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: QuadExt) -> QuadExt {
                (&self).$m(&rhs)
            }
        }
        impl<'b> $tr<&'b QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: &'b QuadExt) -> QuadExt {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<QuadExt> for &'a QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: QuadExt) -> QuadExt {
                self.$m(&rhs)
            }
        }
    };
}

quad_binop!(Add, add, try_add);
quad_binop!(Sub, sub, try_sub);
quad_binop!(Mul, mul, try_mul);
quad_binop!(Div, div, try_div);

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::build(-self.a, -self.b, self.d)
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -(self.clone())
    }
}

impl PartialEq<Rational> for QuadExt {
    fn eq(&self, other: &Rational) -> bool {
        self.b.is_zero() && &self.a == other
    }
}
