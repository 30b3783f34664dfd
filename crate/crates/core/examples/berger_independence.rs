//! The cyclotomic independence test on a few exponent pairs, and the
//! abelian-candidate test it feeds.
//!
//! Run with `cargo run --example berger_independence`.

use iontrap_audit::classifier::{abelian_candidate, case_b_test};
use iontrap_audit::exactnum::{berger_independent, denominator_n, Rational};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pairs = [(1, 5, 2, 5), (1, 7, 2, 7), (1, 4, 1, 6), (1, 3, 1, 2), (2, 9, 1, 12)];
    for (a, b, c, d) in pairs {
        let (r1, r2) = (Rational::new(a, b), Rational::new(c, d));
        let n = (denominator_n(&r1), denominator_n(&r2));
        println!("({r1}, {r2}) N = {n:?} independent: {}", berger_independent(&r1, &r2)?);
    }
    for (q, p) in [((1, 5), (2, 5)), ((3, 10), (1, 7)), ((1, 1), (5, 1)), ((1, 4), (1, 3))] {
        let (q, p) = (Rational::new(q.0, q.1), Rational::new(p.0, p.1));
        println!("q = {q}, p = {p}: case b {}, abelian candidate {}", case_b_test(&q, &p), abelian_candidate(&q, &p));
    }
    Ok(())
}
