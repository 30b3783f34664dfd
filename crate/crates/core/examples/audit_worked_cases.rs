//! Classifies a set of worked parameter sets and prints each certificate.
//!
//! Run with `cargo run --example audit_worked_cases`, or pass seven
//! parameters to classify a single point.

use iontrap_audit::classifier::classify;
use iontrap_audit::exactnum::Rational;
use iontrap_audit::ve::TrapParams;

fn cases() -> Vec<(&'static str, TrapParams)> {
    let r = Rational::new;
    let frac = |v: [(i64, i64); 7]| {
        let [a, b, c, d, e, f, g] = v.map(|(n, d)| r(n, d));
        TrapParams { a, b, c, d, e, f, g, h: Rational::zero() }
    };
    vec![
        ("q^2=1, p=5, D=3C", TrapParams::from_ints([1, 1, 1, 3, 1, 6, 0])),
        ("A=B, E=F=0, D=3C", TrapParams::from_ints([1, 1, 2, 6, 0, 0, 0])),
        ("F=E=D=0", TrapParams::from_ints([1, 2, 3, 0, 0, 0, 1])),
        ("q^2=4, p=5, D=C=0", frac([(4, 1), (1, 1), (0, 1), (0, 1), (1, 4), (3, 2), (2, 1)])),
        ("q^2=4, p=7, D=C=0", frac([(4, 1), (1, 1), (0, 1), (0, 1), (1, 4), (3, 1), (4, 1)])),
        ("q irrational", TrapParams::from_ints([2, 1, 1, 1, 1, 1, 0])),
        ("2q=1/4, p=1/5", TrapParams::from_ints([1, 64, 1, 1, 25, -6, 0])),
        ("B=0, A!=0", TrapParams::from_ints([1, 0, 1, 1, 1, 1, 0])),
    ]
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let list = if args.is_empty() {
        cases()
    } else {
        let fields: Vec<&str> = args.iter().map(String::as_str).collect();
        vec![("command line", TrapParams::parse(&fields)?)]
    };
    for (label, params) in list {
        let (verdict, cert) = classify(&params);
        println!("{label}: {params}");
        println!("  verdict: {verdict}");
        for f in &cert.findings {
            println!("    {:<22} holds={:<5} {}", f.rule, f.holds, f.cite);
        }
    }
    Ok(())
}
