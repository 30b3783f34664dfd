use serde::Serialize;

use super::params::TrapParams;
use crate::error::{Error, Result};
use crate::exactnum::{sqrt_classify, QuadExt, Rational, SqrtClass};

/// Whittaker form of the normal variational equation for `C = E = 0`.
///
/// With `xi = y / sqrt(z)` and `x = 2 sqrt(F/B) z` the equation becomes
/// `y'' + (-1/4 + kappa/x + (1/4 - mu^2)/x^2) y = 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WhittakerData {
    /// `-(D/2B) sqrt(B/F)`
    pub kappa: QuadExt,
    /// `sqrt(A/B)`
    pub mu: SqrtClass,
    pub mu_squared: Rational,
    /// `1/2 + A/B`, the value printed alongside the reduction.
    pub mu_squared_printed: Rational,
}

pub fn whittaker_reduce(params: &TrapParams) -> Result<WhittakerData> {
    let TrapParams { a, b, c, d, e, f, .. } = params;
    if !c.is_zero() || !e.is_zero() || b.is_zero() || f.is_zero() {
        return Err(Error::BranchMismatch("Whittaker branch needs C = E = 0 and B, F != 0".into()));
    }
    let coeff = -(d / &(Rational::from(2) * b));
    let kappa = QuadExt::sqrt_of(&(b / f)).scale(&coeff);
    let mu_squared = a / b;
    Ok(WhittakerData {
        kappa,
        mu: sqrt_classify(&mu_squared),
        mu_squared_printed: Rational::new(1, 2) + &mu_squared,
        mu_squared,
    })
}

/// Confluent Heun constants for the branch `C^2 = 4BE`, `C != 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfluentHeunData {
    pub alpha_sq: Rational,
    pub eta: Rational,
    pub delta: Rational,
    pub beta_sq: Rational,
    pub gamma_sq: Rational,
    pub beta: SqrtClass,
    pub gamma: SqrtClass,
    /// Exponent differences of the equation obtained by substituting
    /// `z = (1 - x)/((C/2B) x)` directly: at `x = 0`, `x = 1` and infinity.
    pub direct_exponent_differences: [SqrtClass; 3],
}

pub fn confluent_heun_reduce(params: &TrapParams) -> Result<ConfluentHeunData> {
    let TrapParams { a, b, c, d, e, f, .. } = params;
    let four = Rational::from(4);
    if c.is_zero() || c * c != &four * b * e {
        return Err(Error::BranchMismatch("confluent Heun branch needs C^2 = 4BE, C != 0".into()));
    }
    let beta_sq = Rational::one() + &four * f / e;
    let gamma_sq = Rational::one() + &four * a / b;
    let direct = [
        sqrt_classify(&beta_sq),
        sqrt_classify(&(&four * a / b)),
        sqrt_classify(&(&four * f / e + &four * a / b - Rational::from(8) * d / c)),
    ];
    Ok(ConfluentHeunData {
        alpha_sq: Rational::from(36),
        eta: Rational::new(1, 2) - Rational::from(2) * d / c,
        delta: Rational::zero(),
        beta: sqrt_classify(&beta_sq),
        gamma: sqrt_classify(&gamma_sq),
        beta_sq,
        gamma_sq,
        direct_exponent_differences: direct,
    })
}
