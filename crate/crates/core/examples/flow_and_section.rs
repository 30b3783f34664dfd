//! Symplectic integration of the trap flow with its energy drift, and a
//! Poincare section of one orbit written as CSV.
//!
//! Run with `cargo run --example flow_and_section -- section.csv`.

use std::fs::File;

use iontrap_audit::numerics::{integrate_flow, poincare_section, write_section_csv, IntegratorConfig};
use iontrap_audit::ve::TrapParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "section.csv".into());
    let params = TrapParams::from_ints([1, 1, 1, 3, 1, 6, 0]);
    let config = IntegratorConfig::symplectic(1e-3);
    for init in [[0.1, 0.0, 0.1, 0.0], [0.0, 0.0, 0.2, 0.1], [0.05, 0.1, -0.1, 0.05]] {
        let traj = integrate_flow(&params, init, 100.0, &config)?;
        let max_r = traj.samples.iter().map(|s| s[1].abs()).fold(0.0, f64::max);
        println!("init {init:?}: {} samples, energy drift {:.2e}, max |r| {max_r:.3e}", traj.samples.len(), traj.energy_drift);
    }
    let pts = poincare_section(&params, 0.05, (0.1, 0.0), 200, &IntegratorConfig::symplectic(1e-2))?;
    write_section_csv(&pts, File::create(&out)?)?;
    println!("{} section points written to {out}", pts.len());
    Ok(())
}
