#![allow(dead_code)]

pub mod cyclotomic;

use iontrap_audit::exactnum::Rational;
use iontrap_audit::ve::TrapParams;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero rational with numerator in `[-n, n]` and denominator in `[1, d]`.
pub fn nonzero(rng: &mut ChaCha8Rng, n: i64, d: i64) -> Rational {
    loop {
        let a = rng.gen_range(-n..=n);
        if a != 0 {
            return Rational::new(a, rng.gen_range(1..=d));
        }
    }
}

pub fn any(rng: &mut ChaCha8Rng, n: i64, d: i64) -> Rational {
    Rational::new(rng.gen_range(-n..=n), rng.gen_range(1..=d))
}

pub fn params(v: [Rational; 7]) -> TrapParams {
    let [a, b, c, d, e, f, g] = v;
    TrapParams { a, b, c, d, e, f, g, h: Rational::zero() }
}

/// Random parameters of the generic branch: `B, E != 0`, distinct roots.
pub fn generic(rng: &mut ChaCha8Rng) -> TrapParams {
    loop {
        let p = params([
            any(rng, 5, 3),
            nonzero(rng, 5, 3),
            any(rng, 5, 3),
            any(rng, 5, 3),
            nonzero(rng, 5, 3),
            any(rng, 5, 3),
            any(rng, 5, 3),
        ]);
        if &p.c * &p.c != Rational::from(4) * &p.b * &p.e {
            return p;
        }
    }
}
