//! Frobenius series of the normal variational equation at every singular
//! point, checked against numeric continuation where the point is finite.
//!
//! Run with `cargo run --example frobenius_series -- 1 2 3 1 1 2 0`.

use iontrap_audit::fuchsian::{Exponent, Point};
use iontrap_audit::numerics::series_vs_numeric;
use iontrap_audit::ve::{build_nve, TrapParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let params = if args.is_empty() {
        TrapParams::from_ints([1, 2, 3, 1, 1, 2, 0])
    } else {
        let fields: Vec<&str> = args.iter().map(String::as_str).collect();
        TrapParams::parse(&fields)?
    };
    let ode = build_nve(&params)?;
    let points = ode.singular_points();
    let finite: Vec<_> = points.iter().filter_map(|p| p.value().map(|v| v.to_complex())).collect();
    for point in &points {
        let pair = ode.indicial_exponents(point)?;
        println!("{point}: exponents {}, {}", pair.roots[0], pair.roots[1]);
        for root in &pair.roots {
            let Exponent::Exact(x) = root else { continue };
            let Some(lambda) = x.as_rational() else { continue };
            let series = match ode.frobenius_expand(point, lambda, 12) {
                Ok(s) => s,
                Err(e) => {
                    println!("  exponent {lambda}: {e}");
                    continue;
                }
            };
            let head: Vec<String> = series.coeffs.iter().take(4).map(|c| c.to_string()).collect();
            print!("  exponent {lambda}: {} ...", head.join(", "));
            if let Point::Finite(c) = point {
                let c = c.to_complex();
                let gap = finite.iter().map(|z| (z - c).norm()).filter(|d| *d > 0.0).fold(f64::INFINITY, f64::min);
                let err = series_vs_numeric(&ode, &series, 0.1 * gap, 64)?;
                print!("  numeric rel. error {err:.2e}");
            }
            println!();
        }
    }
    Ok(())
}
