use serde::Serialize;

use super::params::TrapParams;
use crate::error::{Error, Result};
use crate::exactnum::{sqrt_classify, QuadExt, Rational, SqrtClass};
use crate::fuchsian::{LocalOde, Point, ResonancePolicy, Series};

/// Laurent series of `wp(t) = t^-2 + sum_{k>=2} c_k t^(2k-2)` with `order`
/// coefficients, i.e. exact through `t^(order-3)`.
pub fn weierstrass_series(g2: &Rational, g3: &Rational, order: usize) -> Series {
    let kmax = order / 2 + 2;
    let mut c = vec![Rational::zero(); kmax.max(4)];
    c[2] = g2 / &Rational::from(20);
    c[3] = g3 / &Rational::from(28);
    for k in 4..kmax {
        let mut s = Rational::zero();
        for m in 2..=k - 2 {
            s += &(&c[m] * &c[k - m]);
        }
        let k = k as i64;
        c[k as usize] = s * Rational::new(3, (2 * k + 1) * (k - 3));
    }
    let mut coeffs = vec![QuadExt::zero(); order];
    if order > 0 {
        coeffs[0] = QuadExt::one();
    }
    for (k, ck) in c.iter().enumerate().skip(2) {
        let idx = 2 * k;
        if idx < order {
            coeffs[idx] = QuadExt::rational(ck.clone());
        }
    }
    Series::new(Point::finite(0), Rational::from(-2), coeffs)
}

/// Lame reduction of the branch `E = F = 0`, `B, C != 0`, with
/// `z = -2(wp + B/6)/C`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LameData {
    /// `4D/C = n(n+1)`
    pub big_n: Rational,
    /// Nonnegative root `n = (-1 + sqrt(1 + 4N))/2` when rational.
    pub n: Option<Rational>,
    pub g2: Rational,
    pub g3: Rational,
    pub discriminant: Rational,
    /// Constant in `xi11'' = (N wp + shift) xi11`, equal to `2BD/(3C) - 2A`.
    pub shift: Rational,
    pub a1: Rational,
    pub a2: Rational,
    pub b1: Rational,
    pub b2: Rational,
    pub c1: Rational,
    pub c2: Rational,
    pub d1: Rational,
    pub d2: Rational,
    pub h: Rational,
    /// The same quantities from the formulas as printed in the source analysis.
    pub printed: PrintedLame,
}

/// `g2 = 4B^2/9`, `g3 = -B^3/18 - C^2 h/4` and the displayed `P(alpha, h)`
/// coefficients in terms of `n(n+1) = 4D/C`.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct PrintedLame {
    pub g2: Rational,
    pub g3: Rational,
    pub discriminant: Rational,
    /// `BD/C - 2A`
    pub shift: Rational,
    pub a1: Rational,
    pub b1: Rational,
    pub c1: Rational,
    pub d1: Rational,
    pub d2: Rational,
}

fn printed(params: &TrapParams, h: &Rational) -> PrintedLame {
    let TrapParams { a, b, c, d, .. } = params;
    let r = |n: i64| Rational::from(n);
    let nn = &(r(4) * d) / c;
    let g2 = r(4) * b * b * Rational::new(1, 9);
    let g3 = -(b * b * b * Rational::new(1, 18)) - c * c * h * Rational::new(1, 4);
    let discriminant = &g2 * &g2 * &g2 - r(27) * &g3 * &g3;
    let over_nn = |x: Rational| if nn.is_zero() { Rational::zero() } else { &x / &nn };
    PrintedLame {
        g2,
        g3,
        discriminant,
        shift: &(b * d) / c - r(2) * a,
        a1: over_nn(r(4)),
        b1: over_nn(r(6) * a) - r(3) * b,
        c1: Rational::new(11, 36) * &nn * b * b + over_nn(r(3) * a * a) - r(3) * a * b,
        d1: over_nn(a * a * a * Rational::new(1, 2)) + Rational::new(5, 48) * &nn * &nn * b * b * b
            - Rational::new(3, 4) * a * a * b
            + Rational::new(11, 72) * &nn * b * b * a,
        d2: c * c * Rational::new(1, 4),
    }
}

fn check_branch(params: &TrapParams) -> Result<()> {
    if !params.e.is_zero() || !params.f.is_zero() || params.c.is_zero() || params.b.is_zero() {
        return Err(Error::BranchMismatch("Lame branch needs E = F = 0 and B, C != 0".into()));
    }
    Ok(())
}

/// Reduction data without the non-degeneracy check.
pub fn lame_data(params: &TrapParams, h: &Rational) -> Result<LameData> {
    check_branch(params)?;
    let TrapParams { a, b, c, d, .. } = params;
    let r = |n: i64| Rational::from(n);
    let big_n = &(r(4) * d) / c;
    let n = match sqrt_classify(&(r(1) + r(4) * &big_n)) {
        SqrtClass::RationalValue(s) => Some((s - r(1)) * Rational::new(1, 2)),
        _ => None,
    };
    let g2 = b * b * Rational::new(1, 3);
    let g3 = b * b * b * Rational::new(1, 27) - c * c * h * Rational::new(1, 2);
    let discriminant = &g2 * &g2 * &g2 - r(27) * &g3 * &g3;
    let shift = &(r(2) * b * d) / &(r(3) * c) - r(2) * a;
    // alphadot^2 = (C/D)(alpha + 2A)^3 - 2B (alpha + 2A)^2 + 8 D^2 h
    let (a1, b1, c1, d1) = if d.is_zero() {
        (Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero())
    } else {
        let k = c / d;
        (
            k.clone(),
            r(6) * a * &k - r(2) * b,
            r(12) * a * a * &k - r(8) * a * b,
            r(8) * a * a * a * &k - r(8) * a * a * b,
        )
    };
    Ok(LameData {
        big_n,
        n,
        g2,
        g3,
        discriminant,
        shift,
        a1,
        a2: Rational::zero(),
        b1,
        b2: Rational::zero(),
        c1,
        c2: Rational::zero(),
        d1,
        d2: r(8) * d * d,
        h: h.clone(),
        printed: printed(params, h),
    })
}

/// Lame reduction at energy `h`; fails when the elliptic curve degenerates.
pub fn lame_reduce(params: &TrapParams, h: &Rational) -> Result<LameData> {
    let data = lame_data(params, h)?;
    if data.discriminant.is_zero() {
        return Err(Error::EllipticDegenerate);
    }
    Ok(data)
}

/// Local data of `xi'' = (N wp + s) xi` at `t = 0`.
fn lame_local(wp: &Series, big_n: &Rational, shift: &Rational, order: usize) -> LocalOde {
    // q(t) = t^2 b = -(N t^2 wp + s t^2)
    let mut q: Vec<QuadExt> = wp.coeffs.iter().take(order).map(|c| -c.scale(big_n)).collect();
    q.resize(order, QuadExt::zero());
    if order > 2 {
        q[2] = &q[2] - &QuadExt::rational(shift.clone());
    }
    LocalOde { point: Point::finite(0), p: vec![QuadExt::zero(); order], q }
}

/// Unit-Wronskian pair `(xi^(1), xi^(2))` with exponents `n + 1` and `-n`;
/// the free coefficient of `t^(n+1)` in `xi^(2)` is zero.
pub fn lame_pair(
    wp: &Series,
    big_n: &Rational,
    n: &Rational,
    shift: &Rational,
    order: usize,
) -> Result<(Series, Series)> {
    let loc = lame_local(wp, big_n, shift, order);
    let hi = n + &Rational::one();
    let lo = -n;
    let s1 = loc.frobenius(&hi, order, ResonancePolicy::AllowUnobstructed)?;
    let s2 = loc.frobenius(&lo, order, ResonancePolicy::AllowUnobstructed)?;
    // W(t^(n+1), t^-n) = -(2n + 1)
    let w = -(Rational::from(2) * n + Rational::one());
    Ok((s1.scale(&QuadExt::rational(w.checked_recip().ok_or(Error::WronskianDegenerate)?)), s2))
}

/// Local solutions of both Lame equations of the `n = 3` branch.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LameSolutions {
    pub xi11_1: Series,
    pub xi11_2: Series,
    pub xi12_1: Series,
    pub xi12_2: Series,
}

fn check_n3(params: &TrapParams) -> Result<()> {
    check_branch(params)?;
    if params.d != Rational::from(3) * &params.c {
        return Err(Error::BranchMismatch("Lame residue needs D = 3C".into()));
    }
    Ok(())
}

pub fn lame_solutions(params: &TrapParams, order: usize) -> Result<LameSolutions> {
    check_n3(params)?;
    let data = lame_data(params, &params.h)?;
    let wp = weierstrass_series(&data.g2, &data.g3, order);
    let three = Rational::from(3);
    let (xi11_1, xi11_2) = lame_pair(&wp, &data.big_n, &three, &data.shift, order)?;
    let (xi12_1, xi12_2) = lame_pair(&wp, &Rational::from(12), &three, &Rational::zero(), order)?;
    Ok(LameSolutions { xi11_1, xi11_2, xi12_1, xi12_2 })
}

const LAME_ORDER: usize = 24;

/// Residue at `t = 0` of `D xi11^(2) xi12^(2) xi11^(2)`.
pub fn lame_residue(params: &TrapParams) -> Result<QuadExt> {
    let s = lame_solutions(params, LAME_ORDER)?;
    let d = QuadExt::rational(params.d.clone());
    s.xi11_2.mul(&s.xi12_2)?.mul(&s.xi11_2)?.scale(&d).residue()
}

/// Residues at `t = 0` of the four components of `X^-1 f` in the time
/// variable, sources `-2D xi11 xi12` and `-(3C xi12^2 + D xi11^2)` built
/// from the `xi^(2)` solutions.
pub fn lame_component_residues(params: &TrapParams) -> Result<[QuadExt; 4]> {
    let s = lame_solutions(params, LAME_ORDER)?;
    let d = QuadExt::rational(params.d.clone());
    let c3 = QuadExt::rational(Rational::from(3) * &params.c);
    let f1 = s.xi11_2.mul(&s.xi12_2)?.scale(&(-d.scale(&Rational::from(2))));
    let f2 = s.xi12_2.mul(&s.xi12_2)?.scale(&c3).add(&s.xi11_2.mul(&s.xi11_2)?.scale(&d))?.neg();
    Ok([
        s.xi11_2.mul(&f1)?.neg().residue()?,
        s.xi11_1.mul(&f1)?.residue()?,
        s.xi12_2.mul(&f2)?.neg().residue()?,
        s.xi12_1.mul(&f2)?.residue()?,
    ])
}
