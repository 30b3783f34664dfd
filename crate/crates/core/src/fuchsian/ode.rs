use std::fmt;

use serde::Serialize;

use super::pf::PartialFractions;
use super::series::{Point, Series};
use crate::error::{Error, Result};
use crate::exactnum::{denominator_n, sqrt_classify, QuadExt, Rational, SqrtClass};

/// `xi'' + a(z) xi' + b(z) xi = 0` with exact partial-fraction coefficients.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FuchsOde {
    pub a: PartialFractions,
    pub b: PartialFractions,
}

/// Power-series data `p(x) = x a`, `q(x) = x^2 b` in the local variable.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalOde {
    pub point: Point,
    pub p: Vec<QuadExt>,
    pub q: Vec<QuadExt>,
}

impl LocalOde {
    pub fn frobenius(&self, exponent: &Rational, order: usize, policy: ResonancePolicy) -> Result<Series> {
        frobenius_from_local(self, exponent, order, policy)
    }

    pub fn indicial_poly(&self, s: &QuadExt) -> QuadExt {
        let p0 = self.p[0].clone();
        let q0 = self.q[0].clone();
        s * &(s - &QuadExt::one()) + &p0 * s + q0
    }
}

/// One indicial root. Roots outside the field of the local data are kept
/// symbolically as `center + sign * sqrt(disc)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Exponent {
    Exact(QuadExt),
    Radical { center: QuadExt, disc: QuadExt, sign: i8 },
}

impl Exponent {
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Exponent::Exact(x) => x.as_rational().cloned(),
            Exponent::Radical { .. } => None,
        }
    }

    pub fn approx(&self) -> num_complex::Complex64 {
        match self {
            Exponent::Exact(x) => x.to_complex(),
            Exponent::Radical { center, disc, sign } => {
                center.to_complex() + disc.to_complex().sqrt() * f64::from(*sign)
            }
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Exact(x) => write!(f, "{x}"),
            Exponent::Radical { center, disc, sign } => {
                let s = if *sign < 0 { "-" } else { "+" };
                write!(f, "{center}{s}sqrt({disc})")
            }
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Both roots of `l(l-1) + p0 l + q0 = 0`, the one with larger real part first.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndicialPair {
    pub point: Point,
    pub roots: [Exponent; 2],
    pub p0: QuadExt,
    pub q0: QuadExt,
}

impl IndicialPair {
    /// Exact Vieta check: `r1 + r2 = 1 - p0` and `r1 r2 = q0`.
    pub fn vieta_holds(&self) -> bool {
        match &self.roots {
            [Exponent::Exact(r1), Exponent::Exact(r2)] => {
                let s = r1.try_add(r2);
                let p = r1.try_mul(r2);
                matches!((s, p), (Ok(s), Ok(p)) if s == QuadExt::one() - self.p0.clone() && p == self.q0)
            }
            [Exponent::Radical { center: c1, disc: d1, sign: s1 }, Exponent::Radical { center: c2, disc: d2, sign: s2 }] => {
                c1 == c2 && d1 == d2 && s1 + s2 == 0 && c1.scale(&Rational::from(2)) == QuadExt::one() - self.p0.clone()
            }
            _ => false,
        }
    }
}

/// How `frobenius_local` treats an integer exponent gap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResonancePolicy {
    /// Any positive integer gap to the other root is an error.
    Strict,
    /// Proceeds when the recurrence is unobstructed at the resonant index,
    /// setting the free coefficient to zero.
    AllowUnobstructed,
}

/// Exactness class of a monodromy trace `t = +-2 cos(pi Delta)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceClass {
    RationalValue,
    AlgebraicIrrational,
    Transcendental,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceEntry {
    pub point: Point,
    pub a_s: QuadExt,
    pub b_s: QuadExt,
    pub delta_squared: QuadExt,
    pub delta: Option<SqrtClass>,
    /// `-1` at finite points, `+1` at infinity.
    pub sign: i8,
    pub class: TraceClass,
    /// Exact trace when it is rational.
    pub t: Option<Rational>,
    pub t_symbol: String,
}

/// `cos(pi r)` when it is rational, i.e. when `N(r)` is 1, 2 or 3.
pub fn rational_cos_pi(r: &Rational) -> Option<Rational> {
    use num_traits::ToPrimitive;
    match denominator_n(r).to_i64() {
        Some(2) => Some(Rational::zero()),
        Some(1) | Some(3) => {
            // r = k/3
            let k = (r * &Rational::from(3)).floor();
            let k6 = num_integer::Integer::mod_floor(&k, &num_bigint::BigInt::from(6)).to_i64()?;
            Some(match k6 {
                0 => Rational::one(),
                1 | 5 => Rational::new(1, 2),
                2 | 4 => Rational::new(-1, 2),
                _ => Rational::from(-1),
            })
        }
        _ => None,
    }
}

impl FuchsOde {
    pub fn new(a: PartialFractions, b: PartialFractions) -> Self {
        FuchsOde { a, b }
    }

    /// Finite poles of `a` or `b`, then infinity when it is not ordinary.
    pub fn singular_points(&self) -> Vec<Point> {
        let mut pts: Vec<Point> = Vec::new();
        for t in self.a.poles.iter().chain(self.b.poles.iter()) {
            let p = Point::Finite(t.pole.clone());
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        if !self.infinity_is_ordinary() {
            pts.push(Point::Infinity);
        }
        pts
    }

    fn infinity_is_ordinary(&self) -> bool {
        // a = 2/z + O(z^-2), b = O(z^-4)
        let a = self.a.laurent(&Point::Infinity, 3);
        let b = self.b.laurent(&Point::Infinity, 4);
        let ac = |k: i64| a.coeff_of(&Rational::from(k)).unwrap_or_default();
        let bc = |k: i64| b.coeff_of(&Rational::from(k)).unwrap_or_default();
        a.exponent >= Rational::one()
            && ac(1) == QuadExt::from_int(2)
            && b.exponent >= Rational::one()
            && (1..4).all(|k| bc(k).is_zero())
    }

    /// Local power series `p`, `q` with `n` terms each.
    pub fn local_data(&self, point: &Point, n: usize) -> Result<LocalOde> {
        let (p, q) = match point {
            Point::Finite(_) => {
                let a = self.a.laurent(point, n + 2);
                let b = self.b.laurent(point, n + 2);
                (coeffs_from(&a, -1, n, point)?, coeffs_from(&b, -2, n, point)?)
            }
            Point::Infinity => {
                // p~(w) = 2 - A(w)/w, q~(w) = B(w)/w^2
                let a = self.a.laurent(point, n + 3);
                let b = self.b.laurent(point, n + 3);
                let mut p = coeffs_from(&a, 1, n, point)?;
                for c in p.iter_mut() {
                    *c = -c.clone();
                }
                if !p.is_empty() {
                    p[0] = &p[0] + &QuadExt::from_int(2);
                }
                (p, coeffs_from(&b, 2, n, point)?)
            }
        };
        Ok(LocalOde { point: point.clone(), p, q })
    }

    pub fn indicial_exponents(&self, point: &Point) -> Result<IndicialPair> {
        let loc = self.local_data(point, 1)?;
        Ok(indicial_from(point, &loc.p[0], &loc.q[0]))
    }

    pub fn frobenius_expand(&self, point: &Point, exponent: &Rational, order: usize) -> Result<Series> {
        self.frobenius_local(point, exponent, order, ResonancePolicy::Strict)
    }

    pub fn frobenius_local(
        &self,
        point: &Point,
        exponent: &Rational,
        order: usize,
        policy: ResonancePolicy,
    ) -> Result<Series> {
        let loc = self.local_data(point, order.max(1))?;
        frobenius_from_local(&loc, exponent, order, policy)
    }

    pub fn trace_data(&self) -> Result<Vec<TraceEntry>> {
        self.singular_points().iter().map(|p| self.trace_entry(p)).collect()
    }

    pub fn trace_entry(&self, point: &Point) -> Result<TraceEntry> {
        let loc = self.local_data(point, 1)?;
        let a_s = loc.p[0].clone();
        let b_s = loc.q[0].clone();
        let am1 = &a_s - &QuadExt::one();
        let delta_squared = &am1 * &am1 - b_s.scale(&Rational::from(4));
        let sign: i8 = if point.is_infinity() { 1 } else { -1 };
        let delta = delta_squared.as_rational().map(sqrt_classify);
        let (class, t) = match &delta {
            Some(SqrtClass::RationalValue(r)) => match rational_cos_pi(r) {
                Some(c) => (TraceClass::RationalValue, Some(c * Rational::from(2 * i64::from(sign)))),
                None => (TraceClass::AlgebraicIrrational, None),
            },
            Some(_) => (TraceClass::Transcendental, None),
            None => (TraceClass::Unknown, None),
        };
        let dtext = match &delta {
            Some(d) => d.to_string(),
            None => format!("sqrt({delta_squared})"),
        };
        let t_symbol = format!("{}2*cos(pi*{dtext})", if sign < 0 { "-" } else { "" });
        Ok(TraceEntry { point: point.clone(), a_s, b_s, delta_squared, delta, sign, class, t, t_symbol })
    }

    /// Substitutes a series into the equation, returning `xi'' + a xi' + b xi`
    /// in the local variable of the series' point (for finite points only).
    pub fn defect(&self, s: &Series) -> Result<Series> {
        let order = s.order();
        let a = self.a.laurent(&s.point, order + 2);
        let b = self.b.laurent(&s.point, order + 2);
        let d1 = s.derivative();
        let d2 = d1.derivative();
        d2.add(&a.mul(&d1)?)?.add(&b.mul(s)?)
    }
}

/// Extracts `n` coefficients of `x^{-shift} f` as a power series.
fn coeffs_from(f: &Series, shift: i64, n: usize, point: &Point) -> Result<Vec<QuadExt>> {
    let start = Rational::from(shift);
    if f.exponent < start {
        let lead = f.valuation();
        if &f.exponent + &Rational::from(lead as i64) < start {
            return Err(Error::IrregularSingularPoint(point.to_string()));
        }
    }
    (0..n as i64).map(|k| f.coeff_of(&(&start + &Rational::from(k)))).collect()
}

pub(crate) fn indicial_from(point: &Point, p0: &QuadExt, q0: &QuadExt) -> IndicialPair {
    let half = Rational::new(1, 2);
    let center = (QuadExt::one() - p0.clone()).scale(&half);
    // roots = center +- sqrt(disc), disc = center^2 - q0
    let disc = &center * &center - q0.clone();
    let roots = match disc.as_rational() {
        Some(r) => {
            let s = QuadExt::sqrt_of(r);
            match (center.try_add(&s), center.try_sub(&s)) {
                (Ok(r1), Ok(r2)) => [Exponent::Exact(r1), Exponent::Exact(r2)],
                _ => radical_pair(&center, &disc),
            }
        }
        None => radical_pair(&center, &disc),
    };
    let roots = order_roots(roots);
    IndicialPair { point: point.clone(), roots, p0: p0.clone(), q0: q0.clone() }
}

fn radical_pair(center: &QuadExt, disc: &QuadExt) -> [Exponent; 2] {
    [
        Exponent::Radical { center: center.clone(), disc: disc.clone(), sign: 1 },
        Exponent::Radical { center: center.clone(), disc: disc.clone(), sign: -1 },
    ]
}

fn order_roots(r: [Exponent; 2]) -> [Exponent; 2] {
    let [x, y] = r;
    if y.approx().re > x.approx().re {
        [y, x]
    } else {
        [x, y]
    }
}

fn frobenius_from_local(
    loc: &LocalOde,
    exponent: &Rational,
    order: usize,
    policy: ResonancePolicy,
) -> Result<Series> {
    let lam = QuadExt::rational(exponent.clone());
    if !loc.indicial_poly(&lam).is_zero() {
        return Err(Error::PreconditionViolation(format!(
            "{exponent} is not an indicial root at {}",
            loc.point
        )));
    }
    if policy == ResonancePolicy::Strict {
        let pair = indicial_from(&loc.point, &loc.p[0], &loc.q[0]);
        for r in &pair.roots {
            if let Some(other) = r.as_rational() {
                let gap = &other - exponent;
                if gap.is_integer() && gap.is_positive() {
                    return Err(Error::ResonantCase { gap: gap.to_string() });
                }
            }
        }
    }
    let mut c = vec![QuadExt::one()];
    for n in 1..order {
        let mut rhs = QuadExt::zero();
        for k in 1..=n {
            let pk = loc.p.get(k).cloned().unwrap_or_default();
            let qk = loc.q.get(k).cloned().unwrap_or_default();
            if pk.is_zero() && qk.is_zero() {
                continue;
            }
            let s = exponent + &Rational::from((n - k) as i64);
            rhs = rhs + (pk.scale(&s) + qk) * &c[n - k];
        }
        rhs = -rhs;
        let f = loc.indicial_poly(&QuadExt::rational(exponent + &Rational::from(n as i64)));
        if f.is_zero() {
            if rhs.is_zero() && policy == ResonancePolicy::AllowUnobstructed {
                c.push(QuadExt::zero());
                continue;
            }
            return Err(Error::ResonantCase { gap: n.to_string() });
        }
        c.push(rhs.try_div(&f)?);
    }
    c.truncate(order);
    Ok(Series::new(loc.point.clone(), exponent.clone(), c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i(n: i64) -> QuadExt {
        QuadExt::from_int(n)
    }

    #[test]
    fn constant_solution_of_euler_like_equation() {
        let mut a = PartialFractions::new();
        a.add_pole(i(0), 1, i(1));
        let ode = FuchsOde::new(a, PartialFractions::new());
        let s = ode.frobenius_local(&Point::finite(0), &Rational::zero(), 8, ResonancePolicy::AllowUnobstructed).unwrap();
        assert_eq!(s.coeffs[0], i(1));
        assert!(s.coeffs[1..].iter().all(QuadExt::is_zero));
    }

    #[test]
    fn irregular_point_is_reported() {
        let mut b = PartialFractions::new();
        b.add_pole(i(0), 3, i(1));
        let ode = FuchsOde::new(PartialFractions::new(), b);
        assert!(matches!(ode.indicial_exponents(&Point::finite(0)), Err(Error::IrregularSingularPoint(_))));
    }

    #[test]
    fn rational_cosines() {
        assert_eq!(rational_cos_pi(&Rational::from(2)), Some(Rational::one()));
        assert_eq!(rational_cos_pi(&Rational::from(5)), Some(Rational::from(-1)));
        assert_eq!(rational_cos_pi(&Rational::new(1, 2)), Some(Rational::zero()));
        assert_eq!(rational_cos_pi(&Rational::new(2, 3)), Some(Rational::new(-1, 2)));
        assert_eq!(rational_cos_pi(&Rational::new(-1, 3)), Some(Rational::new(1, 2)));
        assert_eq!(rational_cos_pi(&Rational::new(1, 4)), None);
    }
}
