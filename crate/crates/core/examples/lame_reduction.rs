//! The Lame reduction of the branch `E = F = 0`: curve invariants, the
//! classification conditions on the `alpha` quartic, and the `n = 3`
//! residue checked against contour integration in the time variable.
//!
//! Run with `cargo run --example lame_reduction -- 2 1 1 3 0 0 0 1`.

use iontrap_audit::classifier::tha_check;
use iontrap_audit::numerics::lame_contour_residue;
use iontrap_audit::ve::{lame_data, lame_residue, TrapParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let params = if args.is_empty() {
        TrapParams::parse(&["2", "1", "1", "3", "0", "0", "0", "1"])?
    } else {
        let fields: Vec<&str> = args.iter().map(String::as_str).collect();
        TrapParams::parse(&fields)?
    };
    let data = lame_data(&params, &params.h)?;
    println!("params {params}");
    println!("N = {}, n = {:?}", data.big_n, data.n.as_ref().map(|n| n.to_string()));
    println!("g2 = {}, g3 = {}, discriminant {}", data.g2, data.g3, data.discriminant);
    println!("shift = {}", data.shift);
    println!(
        "P(alpha, h): a1 = {}, b1 = {}, c1 = {}, d1 = {}, d2 = {}",
        data.a1, data.b1, data.c1, data.d1, data.d2
    );
    let pr = &data.printed;
    println!("printed: g2 = {}, g3 = {}, shift = {}", pr.g2, pr.g3, pr.shift);
    println!("printed: a1 = {}, b1 = {}, c1 = {}, d1 = {}, d2 = {}", pr.a1, pr.b1, pr.c1, pr.d1, pr.d2);
    println!("condition check: {}", tha_check(&data).label());
    if let Ok(exact) = lame_residue(&params) {
        let num = lame_contour_residue(&params, 128)?;
        println!("n = 3 residue: exact {exact}, numeric {:+.3e}{:+.3e}i", num.re, num.im);
    }
    Ok(())
}
