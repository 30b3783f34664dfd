//! Second-variational residues at the branch points `z1`, `z2`.
//!
//! Run with `cargo run --example ve2_residues -- 1 2 3 1 1 2 0`.

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
        let pt = ve2_point(&params, i)?;
        println!("z{i} = {}", pt.point);
        println!("  c1 = {}, l1 = {}, unit Wronskian: {}", pt.pairs.c1, pt.pairs.l1, pt.pairs.wronskian_normalized);
        for (k, r) in pt.component_residues.iter().enumerate() {
            println!("  component {} residue = {r}", k + 1);
        }
        println!("  K1 * xi11 * xi12 * xi11 residue = {}", pt.displayed_product);
        println!("  printed closed form            = {}", pt.closed_form);
    }
    Ok(())
}
