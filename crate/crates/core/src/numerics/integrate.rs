use ode_solvers::{Dopri5, OutputType, SVector, System};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Environment variable naming the working precision, in bits, of the
/// numeric oracles.
pub const PRECISION_VAR: &str = "TRAP_AUDIT_PRECISION";

/// Relative tolerance for a working precision of `bits`, capped at double
/// precision: `2^(-0.8 min(bits, 53))`.
pub fn tolerance_for_bits(bits: u32) -> f64 {
    2f64.powf(-0.8 * f64::from(bits.min(53)))
}

/// Working precision from the environment, defaulting to 53 bits.
pub fn precision_bits() -> u32 {
    std::env::var(PRECISION_VAR).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(53)
}

pub fn oracle_tolerance() -> f64 {
    tolerance_for_bits(precision_bits())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Dormand-Prince 5(4) with step-size control.
    Adaptive,
    /// Fourth-order Yoshida composition of the leapfrog, fixed step.
    Symplectic,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegratorConfig {
    pub method: Method,
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Upper bound on the step; the fixed step of the symplectic method.
    pub max_step: f64,
}

impl IntegratorConfig {
    pub fn adaptive(tol: f64) -> Self {
        IntegratorConfig { method: Method::Adaptive, abs_tol: tol, rel_tol: tol, max_step: 0.1 }
    }

    pub fn symplectic(step: f64) -> Self {
        IntegratorConfig { method: Method::Symplectic, abs_tol: 1e-12, rel_tol: 1e-12, max_step: step }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |x: f64| x.is_finite() && x > 0.0;
        if ok(self.abs_tol) && ok(self.rel_tol) && ok(self.max_step) {
            Ok(())
        } else {
            Err(Error::PreconditionViolation("integrator tolerances and step must be positive".into()))
        }
    }
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig::symplectic(1e-3)
    }
}

struct Rhs<F>(F);

impl<const N: usize, F> System<f64, SVector<f64, N>> for Rhs<F>
where
    F: Fn(f64, &SVector<f64, N>, &mut SVector<f64, N>),
{
    fn system(&self, x: f64, y: &SVector<f64, N>, dy: &mut SVector<f64, N>) {
        (self.0)(x, y, dy)
    }
}

/// Adaptive solution of `y' = f(x, y)` from `x0` to `x1`, returning `y(x1)`.
pub fn propagate<const N: usize, F>(f: F, x0: f64, x1: f64, y0: SVector<f64, N>, tol: f64, max_step: f64) -> Result<SVector<f64, N>>
where
    F: Fn(f64, &SVector<f64, N>, &mut SVector<f64, N>),
{
    let span = (x1 - x0).abs();
    let mut solver = Dopri5::from_param(
        Rhs(f),
        x0,
        x1,
        x1 - x0,
        y0,
        tol,
        tol,
        0.9,
        0.04,
        0.2,
        10.0,
        max_step.min(span),
        0.0,
        1_000_000,
        // the stiffness heuristic misfires on linear systems with vanishing terms
        u32::MAX,
        OutputType::Sparse,
    );
    solver.integrate().map_err(|e| Error::StepFailure { t: failure_point(&e) })?;
    let last = solver.y_out().last().copied().ok_or(Error::StepFailure { t: x0 })?;
    if last.iter().all(|v| v.is_finite()) {
        Ok(last)
    } else {
        Err(Error::StepFailure { t: x0 })
    }
}

fn failure_point(e: &ode_solvers::dop_shared::IntegrationError) -> f64 {
    use ode_solvers::dop_shared::IntegrationError as E;
    match e {
        E::MaxNumStepReached { x, .. } | E::StepSizeUnderflow { x } | E::StiffnessDetected { x } => *x,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay() {
        let y = propagate(|_, y: &SVector<f64, 1>, dy: &mut SVector<f64, 1>| dy[0] = -y[0], 0.0, 1.0, SVector::from([1.0]), 1e-12, 1.0)
            .unwrap();
        assert!((y[0] - (-1f64).exp()).abs() < 1e-11);
    }

    #[test]
    fn tolerance_caps_at_double() {
        assert_eq!(tolerance_for_bits(200), tolerance_for_bits(53));
        assert!(tolerance_for_bits(24) > tolerance_for_bits(53));
    }
}
