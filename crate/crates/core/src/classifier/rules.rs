use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::{values, Verdict};
use crate::exactnum::{denominator_n, sqrt_classify, QuadExt, Rational, SqrtClass};
use crate::ve::{ConfluentHeunData, LameData, WhittakerData};

/// `2q + p` and `2q - p` both non-integral, `N(2q), N(p) >= 4` and
/// `(N(2q), N(p)) != (5, 5)`.
pub fn case_b_test(q: &Rational, p: &Rational) -> bool {
    let two_q = Rational::from(2) * q;
    let n1 = denominator_n(&two_q);
    let n2 = denominator_n(p);
    let four = BigInt::from(4);
    let five = BigInt::from(5);
    !(&two_q + p).is_integer()
        && !(&two_q - p).is_integer()
        && n1 >= four
        && n2 >= four
        && !(n1 == five && n2 == five)
}

/// `2q +- p` integral, or `N(2q), N(p) <= 3`, or `(N(2q), N(p)) = (5, 5)`,
/// taken as the complement of [`case_b_test`] over the rationals.
pub fn abelian_candidate(q: &Rational, p: &Rational) -> bool {
    !case_b_test(q, p)
}

/// The four values `+-x +- y` that are rational, in the order
/// `(+,+), (+,-), (-,+), (-,-)`; `None` where the sum leaves the rationals.
pub(crate) fn signed_sums(x: &QuadExt, y: &QuadExt) -> [Option<Rational>; 4] {
    let nx = -x;
    let ny = -y;
    let pairs = [(x, y), (x, &ny), (&nx, y), (&nx, &ny)];
    pairs.map(|(a, b)| a.try_add(b).ok().and_then(|s| s.as_rational().cloned()))
}

fn sqrt_quad(r: &Rational) -> QuadExt {
    QuadExt::sqrt_of(r)
}

fn show_sums(sums: &[Option<Rational>; 4]) -> String {
    let parts: Vec<String> = sums
        .iter()
        .map(|s| s.as_ref().map_or_else(|| "irrational".to_string(), Rational::to_string))
        .collect();
    format!("[{}]", parts.join(", "))
}

pub(crate) fn heun_sums(data: &ConfluentHeunData) -> [Option<Rational>; 4] {
    signed_sums(&sqrt_quad(&data.beta_sq), &sqrt_quad(&data.gamma_sq))
}

pub(crate) fn is_even_nonzero(r: &Rational) -> bool {
    r.is_integer() && !r.is_zero() && (r.numer() % BigInt::from(2)) == BigInt::from(0)
}

/// Non-integrable iff no choice of signs puts `+-beta +- gamma` in the
/// nonzero even integers.
pub fn confluent_heun_check(data: &ConfluentHeunData) -> Verdict {
    let sums = heun_sums(data);
    match sums.iter().flatten().find(|s| is_even_nonzero(s)) {
        Some(s) => Verdict::CandidateIntegrable(vec![format!(
            "+-beta+-gamma = {s} is a nonzero even integer; second variations open"
        )]),
        None => Verdict::NonIntegrableMeromorphic,
    }
}

pub(crate) fn heun_values(data: &ConfluentHeunData) -> BTreeMap<String, String> {
    values([
        ("beta", data.beta.to_string()),
        ("gamma", data.gamma.to_string()),
        ("eta", data.eta.to_string()),
        ("alpha^2", data.alpha_sq.to_string()),
        ("+-beta+-gamma", show_sums(&heun_sums(data))),
    ])
}

pub(crate) fn whittaker_sums(data: &WhittakerData) -> [Option<Rational>; 4] {
    signed_sums(&data.kappa, &sqrt_quad(&data.mu_squared))
}

pub(crate) fn is_half_odd(r: &Rational) -> bool {
    (r - &Rational::new(1, 2)).is_integer()
}

/// Non-integrable iff no choice of signs makes `+-kappa +- mu` a half-odd
/// integer.
pub fn whittaker_check(data: &WhittakerData) -> Verdict {
    let sums = whittaker_sums(data);
    match sums.iter().flatten().find(|s| is_half_odd(s)) {
        Some(s) => Verdict::CandidateIntegrable(vec![format!(
            "+-kappa+-mu = {s} lies in Z+1/2; second variations open"
        )]),
        None => Verdict::NonIntegrableMeromorphic,
    }
}

pub(crate) fn whittaker_values(data: &WhittakerData) -> BTreeMap<String, String> {
    values([
        ("kappa", data.kappa.to_string()),
        ("mu", data.mu.to_string()),
        ("mu^2", data.mu_squared.to_string()),
        ("mu^2 printed", data.mu_squared_printed.to_string()),
        ("+-kappa+-mu", show_sums(&whittaker_sums(data))),
    ])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ThaOutcome {
    Condition1 { n: u64 },
    Condition2 { m: u64, subcase: String },
    Condition3 { n_plus_half: Rational },
    None,
}

impl ThaOutcome {
    pub fn label(&self) -> String {
        match self {
            ThaOutcome::Condition1 { n } => format!("condition1(n={n})"),
            ThaOutcome::Condition2 { m, subcase } => format!("condition2(m={m}, subcase {subcase})"),
            ThaOutcome::Condition3 { n_plus_half } => format!("condition3(n+1/2={n_plus_half})"),
            ThaOutcome::None => "none".into(),
        }
    }
}

fn positive_integer(r: &Rational) -> Option<u64> {
    if r.is_integer() && r.is_positive() {
        r.numer().to_u64()
    } else {
        None
    }
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    match sqrt_classify(r) {
        SqrtClass::RationalValue(v) => Some(v),
        _ => None,
    }
}

/// `n` with `n(n+1) = 4/a1`, `n` natural.
fn natural_n(a1: &Rational) -> Option<u64> {
    let m = Rational::from(4).checked_div(a1)?;
    let s = rational_sqrt(&(Rational::one() + Rational::from(4) * &m))?;
    positive_integer(&((s - Rational::one()) * Rational::new(1, 2)))
}

/// `m` with `4m^2 - 1 = 16/a1`, `m` natural.
fn natural_m(a1: &Rational) -> Option<u64> {
    let k = Rational::from(16).checked_div(a1)?;
    let m = rational_sqrt(&((k + Rational::one()) * Rational::new(1, 4)))?;
    positive_integer(&m)
}

/// Nonnegative `n + 1/2 = sqrt(1 + 16/a1)/2` when rational.
fn n_plus_half(a1: &Rational) -> Option<Rational> {
    let k = Rational::from(16).checked_div(a1)?;
    rational_sqrt(&(k + Rational::one())).map(|s| s * Rational::new(1, 2))
}

fn in_small_lattices(x: &Rational) -> bool {
    !x.is_integer() && [3, 4, 5].iter().any(|k| (Rational::from(*k) * x).is_integer())
}

struct Sides {
    c22: bool,
    c23a: bool,
    c23b: bool,
    c3a: bool,
    c3b: bool,
}

fn sides(d: &LameData) -> Sides {
    let r = |n: i64| Rational::from(n);
    let (a1, b1, c1, d1) = (&d.a1, &d.b1, &d.c1, &d.d1);
    Sides {
        c22: (r(16) * a1 * c1 + r(3) * b1 * b1).is_zero(),
        c23a: (r(16) * a1 * &d.d2 + r(11) * b1 * &d.c2).is_zero(),
        c23b: (r(1024) * a1 * a1 * d1 + r(704) * a1 * b1 * c1 + r(45) * b1 * b1 * b1).is_zero(),
        c3a: (b1 * b1 - r(3) * a1 * c1).is_zero(),
        c3b: (&d.c2 * b1 - r(3) * a1 * &d.d2).is_zero()
            && (r(2) * b1 * b1 * b1 - r(9) * a1 * b1 * c1 + r(27) * a1 * a1 * d1).is_zero(),
    }
}

fn condition2_subcase(d: &LameData, m: u64, s: &Sides) -> Option<String> {
    if !d.b2.is_zero() {
        return None;
    }
    let hit = match m {
        1 => d.b1.is_zero(),
        2 => d.c2.is_zero() && s.c22,
        3 => s.c23a && s.c23b,
        _ => {
            d.b1.is_zero()
                && ((matches!(m % 6, 1 | 2 | 4 | 5) && d.c1.is_zero() && d.c2.is_zero())
                    || (m % 2 == 1 && d.d1.is_zero() && d.d2.is_zero()))
        }
    };
    let label = if m <= 3 { format!("2.{m}") } else { "2.m".into() };
    hit.then_some(label)
}

/// Which necessary condition for integrability of a Lame-type normal
/// variational equation holds; `None` means none does.
pub fn tha_check(d: &LameData) -> ThaOutcome {
    if !d.a2.is_zero() {
        return ThaOutcome::None;
    }
    if let Some(n) = natural_n(&d.a1) {
        return ThaOutcome::Condition1 { n };
    }
    let s = sides(d);
    if let Some(m) = natural_m(&d.a1) {
        if let Some(subcase) = condition2_subcase(d, m, &s) {
            return ThaOutcome::Condition2 { m, subcase };
        }
    }
    if let Some(x) = n_plus_half(&d.a1) {
        if in_small_lattices(&x) && d.b2.is_zero() && ((d.c2.is_zero() && s.c3a) || s.c3b) {
            return ThaOutcome::Condition3 { n_plus_half: x };
        }
    }
    ThaOutcome::None
}

pub(crate) fn tha_values(d: &LameData) -> BTreeMap<String, String> {
    let s = sides(d);
    let show = |o: Option<u64>| o.map_or_else(|| "none".to_string(), |v| v.to_string());
    let mut v = values([
        ("a1", d.a1.to_string()),
        ("a2", d.a2.to_string()),
        ("b1", d.b1.to_string()),
        ("b2", d.b2.to_string()),
        ("c1", d.c1.to_string()),
        ("c2", d.c2.to_string()),
        ("d1", d.d1.to_string()),
        ("d2", d.d2.to_string()),
        ("n natural", show(natural_n(&d.a1))),
        ("m natural", show(natural_m(&d.a1))),
        ("n+1/2", n_plus_half(&d.a1).map_or_else(|| "irrational".to_string(), |x| x.to_string())),
    ]);
    v.insert("16a1c1+3b1^2=0".into(), s.c22.to_string());
    v.insert("16a1d2+11b1c2=0".into(), s.c23a.to_string());
    v.insert("1024a1^2d1+704a1b1c1+45b1^3=0".into(), s.c23b.to_string());
    v.insert("b1^2-3a1c1=0".into(), s.c3a.to_string());
    v.insert("c2b1-3a1d2=0 and 2b1^3-9a1b1c1+27a1^2d1=0".into(), s.c3b.to_string());
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lame(a1: Rational, b1: Rational, c1: Rational, d1: Rational, d2: Rational) -> LameData {
        let z = Rational::zero;
        LameData {
            big_n: z(),
            n: None,
            g2: z(),
            g3: z(),
            discriminant: z(),
            shift: z(),
            a1,
            a2: z(),
            b1,
            b2: z(),
            c1,
            c2: z(),
            d1,
            d2,
            h: z(),
            printed: Default::default(),
        }
    }

    #[test]
    fn case_b_examples() {
        assert!(case_b_test(&Rational::new(1, 8), &Rational::new(1, 5)));
        assert!(!case_b_test(&Rational::one(), &Rational::from(5)));
        assert!(!case_b_test(&Rational::new(1, 3), &Rational::new(1, 3)));
        assert!(abelian_candidate(&Rational::new(2, 5), &Rational::new(1, 5)));
    }

    #[test]
    fn tha_examples() {
        let z = Rational::zero;
        assert_eq!(tha_check(&lame(Rational::new(1, 3), z(), z(), z(), z())), ThaOutcome::Condition1 { n: 3 });
        // 16 a1 c1 + 3 b1^2 = 0 with a1 = 16/15, b1 = 4: c1 = -45/16
        let d = lame(Rational::new(16, 15), Rational::from(4), Rational::new(-45, 16), z(), z());
        assert_eq!(tha_check(&d), ThaOutcome::Condition2 { m: 2, subcase: "2.2".into() });
        assert_eq!(tha_check(&lame(Rational::one(), z(), z(), z(), z())), ThaOutcome::None);
    }

    #[test]
    fn tha_condition3() {
        // n + 1/2 = 4/3: n(n+1) = 55/36, a1 = 144/55; b1 = c1 = d1 = 0
        let z = Rational::zero;
        let d = lame(Rational::new(144, 55), z(), z(), z(), z());
        assert_eq!(tha_check(&d), ThaOutcome::Condition3 { n_plus_half: Rational::new(4, 3) });
    }

    #[test]
    fn sign_enumeration() {
        let three = QuadExt::from_int(3);
        let sums = signed_sums(&three, &QuadExt::from_int(1));
        assert_eq!(sums.map(|s| s.unwrap()), [4, 2, -2, -4].map(Rational::from));
        let r5 = QuadExt::sqrt_of(&Rational::from(5));
        assert!(signed_sums(&r5, &three).iter().all(Option::is_none));
        assert_eq!(signed_sums(&r5, &r5)[1], Some(Rational::zero()));
    }
}
