//! Numeric contour-integral residues at `z1`, `z2` next to the exact ones.
//!
//! Run with `cargo run --example contour_residues -- 1 2 3 1 1 2 0`.

use iontrap_audit::numerics::{contour_residues, default_radius};
use iontrap_audit::ve::{ve2_point, TrapParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let params = if args.is_empty() {
        TrapParams::from_ints([1, 2, 3, 1, 1, 2, 0])
    } else {
        let fields: Vec<&str> = args.iter().map(String::as_str).collect();
        TrapParams::parse(&fields)?
    };
    println!("params {params}");
    for i in [1, 2] {
        let exact = ve2_point(&params, i)?;
        let radius = default_radius(&params, i)?;
        println!("z{i} = {}, radius {radius:.4}", exact.point);
        let nums = contour_residues(&params, i, radius, 64)?;
        for (comp, (num, ex)) in nums.iter().zip(&exact.component_residues).enumerate() {
            let comp = comp + 1;
            let err = (num - ex.to_complex()).norm();
            println!("  component {comp}: exact {ex:<14} numeric {:+.12e}{:+.3e}i  |diff| {err:.2e}", num.re, num.im);
        }
    }
    Ok(())
}
