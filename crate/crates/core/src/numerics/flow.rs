use ode_solvers::SVector;
use serde::Serialize;

use super::integrate::{propagate, IntegratorConfig, Method};
use crate::error::{Error, Result};
use crate::ve::TrapParams;

type V4 = SVector<f64, 4>;

/// Phase-space point `(r, p_r, z, p_z)`.
pub type State = [f64; 4];

/// Floating-point Hamiltonian of the trap.
#[derive(Clone, Copy, Debug)]
pub struct Flow {
    k: [f64; 7],
}

impl Flow {
    pub fn new(params: &TrapParams) -> Self {
        Flow { k: params.floats() }
    }

    pub fn potential(&self, r: f64, z: f64) -> f64 {
        let [a, b, c, d, e, f, g] = self.k;
        let r2 = r * r;
        let z2 = z * z;
        a * r2 + b * z2 + c * z2 * z + d * r2 * z + e * z2 * z2 + f * r2 * z2 + g * r2 * r2
    }

    pub fn energy(&self, s: &State) -> f64 {
        0.5 * (s[1] * s[1] + s[3] * s[3]) + self.potential(s[0], s[2])
    }

    /// `(-dV/dr, -dV/dz)`
    pub fn force(&self, r: f64, z: f64) -> (f64, f64) {
        let [a, b, c, d, e, f, g] = self.k;
        let r2 = r * r;
        let z2 = z * z;
        let fr = -(2.0 * a * r + 2.0 * d * r * z + 2.0 * f * r * z2 + 4.0 * g * r2 * r);
        let fz = -(2.0 * b * z + 3.0 * c * z2 + d * r2 + 4.0 * e * z2 * z + 2.0 * f * r2 * z);
        (fr, fz)
    }

    fn rhs(&self, s: &V4, ds: &mut V4) {
        let (fr, fz) = self.force(s[0], s[2]);
        *ds = V4::from([s[1], fr, s[3], fz]);
    }

    /// One fourth-order Yoshida step.
    pub fn yoshida_step(&self, s: State, dt: f64) -> State {
        let cbrt2 = 2f64.cbrt();
        let w1 = 1.0 / (2.0 - cbrt2);
        let w0 = -cbrt2 * w1;
        let drift = [w1 / 2.0, (w0 + w1) / 2.0, (w0 + w1) / 2.0, w1 / 2.0];
        let kick = [w1, w0, w1];
        let [mut r, mut pr, mut z, mut pz] = s;
        for i in 0..4 {
            r += drift[i] * dt * pr;
            z += drift[i] * dt * pz;
            if i < 3 {
                let (fr, fz) = self.force(r, z);
                pr += kick[i] * dt * fr;
                pz += kick[i] * dt * fz;
            }
        }
        [r, pr, z, pz]
    }

    /// Advances `s` by `dt` with the configured method.
    pub fn step(&self, s: State, dt: f64, config: &IntegratorConfig) -> Result<State> {
        let out = match config.method {
            Method::Symplectic => self.yoshida_step(s, dt),
            Method::Adaptive => {
                let tol = config.abs_tol.min(config.rel_tol);
                let y = propagate(|_, y: &V4, dy: &mut V4| self.rhs(y, dy), 0.0, dt, V4::from(s), tol, config.max_step)?;
                [y[0], y[1], y[2], y[3]]
            }
        };
        if out.iter().all(|x| x.is_finite()) {
            Ok(out)
        } else {
            Err(Error::StepFailure { t: 0.0 })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trajectory {
    /// `(t, r, p_r, z, p_z)` at multiples of the step.
    pub samples: Vec<[f64; 5]>,
    /// `max |H(sample) - H(initial)|`
    pub energy_drift: f64,
}

/// Integrates the flow from `init` to `t_max`, sampling every `max_step`.
pub fn integrate_flow(params: &TrapParams, init: State, t_max: f64, config: &IntegratorConfig) -> Result<Trajectory> {
    config.validate()?;
    if !init.iter().all(|x| x.is_finite()) || !(t_max.is_finite() && t_max >= 0.0) {
        return Err(Error::PreconditionViolation("initial state and t_max must be finite".into()));
    }
    let flow = Flow::new(params);
    let h0 = flow.energy(&init);
    let steps = (t_max / config.max_step).ceil() as usize;
    let dt = if steps == 0 { 0.0 } else { t_max / steps as f64 };
    let mut samples = Vec::with_capacity(steps + 1);
    let mut s = init;
    let mut drift = 0.0f64;
    samples.push([0.0, s[0], s[1], s[2], s[3]]);
    for k in 0..steps {
        let t = k as f64 * dt;
        s = flow.step(s, dt, config).map_err(|_| Error::StepFailure { t })?;
        drift = drift.max((flow.energy(&s) - h0).abs());
        samples.push([(k + 1) as f64 * dt, s[0], s[1], s[2], s[3]]);
    }
    Ok(Trajectory { samples, energy_drift: drift })
}
