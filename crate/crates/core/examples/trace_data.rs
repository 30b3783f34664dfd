//! Monodromy trace data of the normal variational equation at each
//! singular point, with the exactness class of each trace.
//!
//! Run with `cargo run --example trace_data -- 1 1 1 3 1 6 0`.

use iontrap_audit::ve::{build_nve, TrapParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let params = if args.is_empty() {
        TrapParams::from_ints([1, 1, 1, 3, 1, 6, 0])
    } else {
        let fields: Vec<&str> = args.iter().map(String::as_str).collect();
        TrapParams::parse(&fields)?
    };
    let ode = build_nve(&params)?;
    for e in ode.trace_data()? {
        let t = e.t.as_ref().map(|t| t.to_string()).unwrap_or_else(|| "-".into());
        println!("{:<20} Delta^2 = {:<10} t = {:<6} {:?} ({})", e.point.to_string(), e.delta_squared.to_string(), t, e.class, e.t_symbol);
    }
    Ok(())
}
