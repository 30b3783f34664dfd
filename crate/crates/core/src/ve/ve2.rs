use serde::Serialize;

use super::nve::{build_nve, over_z2_quadratic, roots, tangential_ode};
use super::params::TrapParams;
use crate::error::{Error, Result};
use crate::exactnum::{QuadExt, Rational};
use crate::fuchsian::{ps, wronskian, PartialFractions, Point, Series};

pub const DEFAULT_ORDER: usize = 12;
pub const MAX_ORDER: usize = 48;

/// Sources of the second variational equations, as rational functions of
/// `z` multiplying products of first-order solutions:
///
/// * `r`-component: `k2_1 * xi11 * xi12`
/// * `z`-component: `k2_2_nve * xi11^2 + k2_2_tan * xi12^2`
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Ve2Sources {
    pub k2_1: PartialFractions,
    pub k2_2_nve: PartialFractions,
    pub k2_2_tan: PartialFractions,
}

/// Local solutions at a branch point `z_i`, where both first-order equations
/// have exponents `{1/2, 0}`. `*_1` carry the half exponent, `*_2` are
/// analytic, and each pair has unit normalized Wronskian.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalPairs {
    pub xi11_1: Series,
    pub xi11_2: Series,
    pub xi12_1: Series,
    pub xi12_2: Series,
    pub c1: QuadExt,
    pub c2: QuadExt,
    pub l1: QuadExt,
    pub l2: QuadExt,
    pub wronskian_normalized: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Ve2Point {
    pub index: u8,
    pub point: Point,
    /// Residues of `-xi11_2 K1, xi11_1 K1, -xi12_2 K2, xi12_1 K2`, with the
    /// sources built from the analytic solutions.
    pub component_residues: [QuadExt; 4],
    /// Residue of `K1~ * xi11_2 * xi12_2 * xi11_2`.
    pub displayed_product: QuadExt,
    pub closed_form: QuadExt,
    pub order: usize,
    pub pairs: LocalPairs,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Ve2Data {
    pub sources: Ve2Sources,
    pub points: Vec<Ve2Point>,
}

impl Ve2Data {
    pub fn any_nonzero(&self) -> bool {
        self.points.iter().any(|p| p.component_residues.iter().any(|r| !r.is_zero()))
    }
}

pub fn ve2_sources(params: &TrapParams) -> Result<Ve2Sources> {
    let (z1, z2) = roots(params)?;
    let two = Rational::from(2);
    let lin = [params.d.clone(), &two * &params.f];
    let tan = [Rational::from(3) * &params.c, Rational::from(12) * &params.e];
    Ok(Ve2Sources {
        k2_1: over_z2_quadratic(&lin, &Rational::one(), &z1, &z2, &params.e)?,
        k2_2_nve: over_z2_quadratic(&lin, &two, &z1, &z2, &params.e)?,
        k2_2_tan: over_z2_quadratic(&tan, &two, &z1, &z2, &params.e)?,
    })
}

fn branch_point(params: &TrapParams, i: u8) -> Result<(QuadExt, QuadExt)> {
    let (z1, z2) = roots(params)?;
    match i {
        1 => Ok((z1, z2)),
        2 => Ok((z2, z1)),
        _ => Err(Error::PreconditionViolation(format!("branch point index {i} not in {{1, 2}}"))),
    }
}

/// `x^(1/2) (1 + x/zi) (1 + x/(zi - zj))^(1/2)`, the inverse of the Abel
/// factor of the Wronskian at `zi`.
fn abel_factor(point: &Point, zi: &QuadExt, zj: &QuadExt, order: usize) -> Result<Series> {
    let lin = vec![QuadExt::one(), zi.recip()?];
    let root = ps::binomial_series(&Rational::new(1, 2), &(zi - zj).recip()?, order);
    Ok(Series::new(point.clone(), Rational::new(1, 2), ps::mul(&lin, &root, order)))
}

fn normalized_pair(
    ode: &crate::fuchsian::FuchsOde,
    point: &Point,
    abel: &Series,
    order: usize,
) -> Result<(Series, Series, QuadExt, bool)> {
    let half = ode.frobenius_expand(point, &Rational::new(1, 2), order)?;
    let analytic = ode.frobenius_expand(point, &Rational::zero(), order)?;
    let w = wronskian(&half, &analytic)?.mul(abel)?;
    let lead = w.coeffs.first().cloned().ok_or(Error::InsufficientTruncation)?;
    if !w.exponent.is_zero() || lead.is_zero() {
        return Err(Error::WronskianDegenerate);
    }
    let c = lead.recip()?;
    let normalized = w.scale(&c);
    let unit = normalized.coeffs[0].is_one() && normalized.coeffs[1..].iter().all(QuadExt::is_zero);
    Ok((half.scale(&c), analytic, c, unit))
}

pub fn local_pairs(params: &TrapParams, i: u8, order: usize) -> Result<LocalPairs> {
    let (zi, zj) = branch_point(params, i)?;
    let point = Point::Finite(zi.clone());
    let abel = abel_factor(&point, &zi, &zj, order)?;
    let (xi11_1, xi11_2, c1, ok1) = normalized_pair(&build_nve(params)?, &point, &abel, order)?;
    let (xi12_1, xi12_2, l1, ok2) = normalized_pair(&tangential_ode(params)?, &point, &abel, order)?;
    Ok(LocalPairs {
        xi11_1,
        xi11_2,
        xi12_1,
        xi12_2,
        c1,
        c2: QuadExt::one(),
        l1,
        l2: QuadExt::one(),
        wronskian_normalized: ok1 && ok2,
    })
}

fn residues_at_order(params: &TrapParams, i: u8, order: usize) -> Result<Ve2Point> {
    let (zi, _) = branch_point(params, i)?;
    let point = Point::Finite(zi);
    let src = ve2_sources(params)?;
    let pairs = local_pairs(params, i, order)?;
    let LocalPairs { xi11_1: u1, xi11_2: u, xi12_1: v1, xi12_2: v, .. } = &pairs;
    let k1 = src.k2_1.laurent(&point, order);
    let s1 = k1.mul(u)?.mul(v)?;
    let s2 = src
        .k2_2_nve
        .laurent(&point, order)
        .mul(&u.mul(u)?)?
        .add(&src.k2_2_tan.laurent(&point, order).mul(&v.mul(v)?)?)?;
    let comps = [u.mul(&s1)?.neg(), u1.mul(&s1)?, v.mul(&s2)?.neg(), v1.mul(&s2)?];
    let mut component_residues: [QuadExt; 4] = Default::default();
    for (slot, c) in component_residues.iter_mut().zip(comps.iter()) {
        *slot = c.residue()?;
    }
    let displayed_product = s1.mul(u)?.residue()?;
    Ok(Ve2Point {
        index: i,
        point,
        component_residues,
        displayed_product,
        closed_form: closed_form_residue(params, i)?,
        order,
        pairs,
    })
}

/// Residue data at `z_i`, doubling the truncation order from 12 up to 48
/// until the `(z - z_i)^-1` term is covered.
pub fn ve2_point(params: &TrapParams, i: u8) -> Result<Ve2Point> {
    let mut order = DEFAULT_ORDER;
    loop {
        match residues_at_order(params, i, order) {
            Err(Error::InsufficientTruncation) if order < MAX_ORDER => order *= 2,
            other => return other,
        }
    }
}

pub fn ve2_residues(params: &TrapParams, i: u8) -> Result<[QuadExt; 4]> {
    Ok(ve2_point(params, i)?.component_residues)
}

pub fn displayed_product_residue(params: &TrapParams, i: u8) -> Result<QuadExt> {
    Ok(ve2_point(params, i)?.displayed_product)
}

pub fn ve2_data(params: &TrapParams) -> Result<Ve2Data> {
    Ok(Ve2Data { sources: ve2_sources(params)?, points: vec![ve2_point(params, 1)?, ve2_point(params, 2)?] })
}

/// The closed forms `((p^2-1)/4 z_i + D/E) / (z_i^2 (z_1 - z_2))` as printed,
/// with `(p^2 - 1)/4 = F/E`.
pub fn closed_form_residue(params: &TrapParams, i: u8) -> Result<QuadExt> {
    let (z1, z2) = roots(params)?;
    let zi = match i {
        1 => z1.clone(),
        2 => z2.clone(),
        _ => return Err(Error::PreconditionViolation(format!("branch point index {i} not in {{1, 2}}"))),
    };
    let num = zi.scale(&(&params.f / &params.e)).add_rational(&(&params.d / &params.e));
    let den = &(&zi * &zi) * &(&z1 - &z2);
    num.try_div(&den)
}
