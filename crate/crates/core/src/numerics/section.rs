use std::io::Write;

use super::flow::{Flow, State, Trajectory};
use super::integrate::IntegratorConfig;
use crate::error::{Error, Result};
use crate::ve::TrapParams;

/// Crossing tolerance in `z`.
pub const CROSSING_TOL: f64 = 1e-10;

/// Time allowed per requested crossing before giving up.
pub const TIME_PER_CROSSING: f64 = 1000.0;

/// Initial state on `z = 0` with energy `energy` and `p_z > 0`.
pub fn section_start(params: &TrapParams, energy: f64, r: f64, p_r: f64) -> Result<State> {
    let flow = Flow::new(params);
    let pz2 = 2.0 * (energy - flow.potential(r, 0.0)) - p_r * p_r;
    if !(pz2 >= 0.0) {
        return Err(Error::PreconditionViolation(format!("energy {energy} is below V({r}, 0) + p_r^2/2")));
    }
    Ok([r, p_r, 0.0, pz2.sqrt()])
}

/// `(r, p_r)` at the first `n` upward crossings of `z = 0` of the orbit
/// through `(r, p_r)` at energy `energy`; the starting point is not counted.
pub fn poincare_section(
    params: &TrapParams,
    energy: f64,
    start: (f64, f64),
    n: usize,
    config: &IntegratorConfig,
) -> Result<Vec<(f64, f64)>> {
    config.validate()?;
    let flow = Flow::new(params);
    let mut s = section_start(params, energy, start.0, start.1)?;
    let dt = config.max_step;
    let budget = TIME_PER_CROSSING * n.max(1) as f64;
    let mut t = 0.0;
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        if t > budget {
            return Err(Error::NoCrossingFound { t });
        }
        let next = flow.step(s, dt, config).map_err(|_| Error::StepFailure { t })?;
        if s[2] < 0.0 && next[2] >= 0.0 {
            let hit = bisect(&flow, s, dt, config)?;
            out.push((hit[0], hit[1]));
        }
        s = next;
        t += dt;
    }
    Ok(out)
}

/// Refines a sign change of `z` inside one step of length `dt` from `s`.
fn bisect(flow: &Flow, s: State, dt: f64, config: &IntegratorConfig) -> Result<State> {
    let (mut lo, mut hi) = (0.0, dt);
    let mut best = s;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        best = flow.step(s, mid, config)?;
        if best[2].abs() < CROSSING_TOL || hi - lo < f64::EPSILON * dt {
            break;
        }
        if best[2] < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(best)
}

/// Writes `t,r,p_r,z,p_z` rows with a header, 17 significant digits.
pub fn write_trajectory_csv<W: Write>(traj: &Trajectory, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "r", "p_r", "z", "p_z"]).map_err(csv_err)?;
    for s in &traj.samples {
        w.write_record(s.iter().map(|x| format!("{x:.16e}"))).map_err(csv_err)?;
    }
    w.flush().map_err(|e| csv_err(e.into()))
}

/// Writes `r,p_r` rows with a header, 17 significant digits.
pub fn write_section_csv<W: Write>(points: &[(f64, f64)], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["r", "p_r"]).map_err(csv_err)?;
    for (r, p) in points {
        w.write_record([format!("{r:.16e}"), format!("{p:.16e}")]).map_err(csv_err)?;
    }
    w.flush().map_err(|e| csv_err(e.into()))
}

fn csv_err(e: csv::Error) -> Error {
    Error::PreconditionViolation(format!("csv output failed: {e}"))
}
