use serde::Serialize;

use super::params::TrapParams;
use crate::error::{Error, Result};
use crate::exactnum::{sqrt_classify, QuadExt, Rational, SqrtClass};
use crate::fuchsian::{FuchsOde, PartialFractions};

/// Exact data of the normal variational equation in the generic branch
/// `B != 0`, `E != 0`, `C^2 != 4BE`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DerivedQuantities {
    /// `sqrt(A/B)`
    pub q: SqrtClass,
    /// `sqrt(1 + 4F/E)`
    pub p: SqrtClass,
    /// Discriminant `C^2 - 4BE` of `E z^2 + C z + B`.
    pub disc: Rational,
    pub z1: QuadExt,
    pub z2: QuadExt,
    /// Coefficients of `1/z`, `1/(z - z1)`, `1/(z - z2)` in `b(z)`.
    pub alpha: QuadExt,
    pub beta: QuadExt,
    pub gamma: QuadExt,
    pub a0: Rational,
    pub b0: Rational,
    pub a_inf: Rational,
    pub b_inf: Rational,
}

/// Checks the generic-branch preconditions, naming the first that fails.
pub fn generic_branch(params: &TrapParams) -> Result<()> {
    if params.b.is_zero() {
        return Err(Error::DegenerateBranch("B=0".into()));
    }
    if params.e.is_zero() {
        return Err(Error::DegenerateBranch("E=0".into()));
    }
    if disc(params).is_zero() {
        return Err(Error::DegenerateBranch("C^2=4BE".into()));
    }
    Ok(())
}

fn disc(params: &TrapParams) -> Rational {
    &params.c * &params.c - Rational::from(4) * &params.b * &params.e
}

/// Roots `z1, z2 = (-C +- sqrt(C^2 - 4BE)) / 2E`, `z1` taking the plus sign.
pub fn roots(params: &TrapParams) -> Result<(QuadExt, QuadExt)> {
    generic_branch(params)?;
    let two_e = Rational::from(2) * &params.e;
    let inv = two_e.checked_recip().expect("E != 0");
    let s = QuadExt::sqrt_of(&disc(params));
    let mc = QuadExt::rational(-&params.c);
    Ok(((&mc + &s).scale(&inv), (&mc - &s).scale(&inv)))
}

fn qe(r: &Rational) -> QuadExt {
    QuadExt::rational(r.clone())
}

/// `num(z) / (z^2 E (z - z1)(z - z2))` in partial fractions.
pub(crate) fn over_z2_quadratic(
    num: &[Rational],
    scale: &Rational,
    z1: &QuadExt,
    z2: &QuadExt,
    e: &Rational,
) -> Result<PartialFractions> {
    let num: Vec<QuadExt> = num.iter().map(qe).collect();
    PartialFractions::from_factored(
        &num,
        &qe(&(e * scale)),
        &[(QuadExt::zero(), 2), (z1.clone(), 1), (z2.clone(), 1)],
    )
}

pub fn derive(params: &TrapParams) -> Result<DerivedQuantities> {
    let (z1, z2) = roots(params)?;
    let TrapParams { a, b, c, d, e, f, .. } = params;
    let b_pf = nve_b(params, &z1, &z2)?;
    let zero = QuadExt::zero();
    let alpha_direct = &(a * c) / &(b * b) - d / b;
    let alpha = b_pf.coeff(&zero, 1);
    debug_assert_eq!(alpha, qe(&alpha_direct));
    Ok(DerivedQuantities {
        q: sqrt_classify(&(a / b)),
        p: sqrt_classify(&(Rational::one() + Rational::from(4) * f / e)),
        disc: disc(params),
        beta: b_pf.coeff(&z1, 1),
        gamma: b_pf.coeff(&z2, 1),
        alpha,
        z1,
        z2,
        a0: Rational::one(),
        b0: -(a / b),
        a_inf: Rational::from(2),
        b_inf: -(f / e),
    })
}

fn nve_a(z1: &QuadExt, z2: &QuadExt) -> PartialFractions {
    let half = QuadExt::rational(Rational::new(1, 2));
    let mut a = PartialFractions::new();
    a.add_pole(QuadExt::zero(), 1, QuadExt::one())
        .add_pole(z1.clone(), 1, half.clone())
        .add_pole(z2.clone(), 1, half);
    a
}

fn nve_b(params: &TrapParams, z1: &QuadExt, z2: &QuadExt) -> Result<PartialFractions> {
    // b = -(A + D z + F z^2) / (z^2 (E z^2 + C z + B))
    let num = [-&params.a, -&params.d, -&params.f];
    over_z2_quadratic(&num, &Rational::one(), z1, z2, &params.e)
}

/// `xi'' + a xi' + b xi = 0` for the `r`-variation, in the variable `z`.
pub fn build_nve(params: &TrapParams) -> Result<FuchsOde> {
    let (z1, z2) = roots(params)?;
    Ok(FuchsOde::new(nve_a(&z1, &z2), nve_b(params, &z1, &z2)?))
}

/// The variational equation along the particular solution itself.
pub fn tangential_ode(params: &TrapParams) -> Result<FuchsOde> {
    let (z1, z2) = roots(params)?;
    // b = -(2B + 6C z + 12E z^2) / (2 z^2 (E z^2 + C z + B))
    let num = [
        -(Rational::from(2) * &params.b),
        -(Rational::from(6) * &params.c),
        -(Rational::from(12) * &params.e),
    ];
    let b = over_z2_quadratic(&num, &Rational::from(2), &z1, &z2, &params.e)?;
    Ok(FuchsOde::new(nve_a(&z1, &z2), b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuchsian::Point;

    #[test]
    fn roots_of_fixture() {
        let p = TrapParams::from_ints([1, 2, 3, 1, 1, 2, 0]);
        let (z1, z2) = roots(&p).unwrap();
        assert_eq!((z1, z2), (QuadExt::from_int(-1), QuadExt::from_int(-2)));
    }

    #[test]
    fn q_and_p() {
        let d = derive(&TrapParams::from_ints([4, 1, 1, 0, 1, 0, 0])).unwrap();
        assert_eq!(d.q, SqrtClass::RationalValue(Rational::from(2)));
        assert_eq!(d.p, SqrtClass::RationalValue(Rational::one()));
    }

    #[test]
    fn residues_of_a_and_b() {
        let p = TrapParams::from_ints([1, 1, 1, 1, 1, 1, 0]);
        let ode = build_nve(&p).unwrap();
        let d = derive(&p).unwrap();
        assert_eq!(ode.a.coeff(&QuadExt::zero(), 1), QuadExt::one());
        assert_eq!(ode.a.coeff(&d.z1, 1), QuadExt::rational(Rational::new(1, 2)));
        assert_eq!(ode.b.coeff(&QuadExt::zero(), 2), QuadExt::from_int(-1));
        // residues of b sum to zero since b = O(z^-2) at infinity
        assert!((&(&d.alpha + &d.beta) + &d.gamma).is_zero());
    }

    #[test]
    fn degenerate_inputs_are_tagged() {
        let bad = TrapParams::from_ints([1, 1, 2, 1, 1, 1, 0]);
        assert_eq!(derive(&bad), Err(Error::DegenerateBranch("C^2=4BE".into())));
        let b0 = TrapParams::from_ints([1, 0, 2, 1, 1, 1, 0]);
        assert_eq!(derive(&b0), Err(Error::DegenerateBranch("B=0".into())));
    }

    #[test]
    fn tangential_exponents_at_branch_points() {
        let p = TrapParams::from_ints([1, 2, 3, 1, 1, 2, 0]);
        let t = tangential_ode(&p).unwrap();
        let pair = t.indicial_exponents(&Point::finite(-1)).unwrap();
        assert_eq!(pair.roots[0].as_rational(), Some(Rational::new(1, 2)));
        assert_eq!(pair.roots[1].as_rational(), Some(Rational::zero()));
    }
}
