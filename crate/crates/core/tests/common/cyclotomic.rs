//! Brute-force decision of the rational linear independence of
//! `1, cos(pi r1), cos(pi r2)` inside the cyclotomic field `Q(zeta_m)`.

use std::cell::RefCell;
use std::collections::HashMap;

use iontrap_audit::exactnum::Rational;
use num_integer::Integer;
use num_traits::ToPrimitive;

fn poly_divexact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // monic integer division
    let mut rem = num.to_vec();
    let dl = den.len();
    let mut q = vec![0i64; num.len() + 1 - dl];
    for i in (0..q.len()).rev() {
        let c = rem[i + dl - 1];
        q[i] = c;
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    assert!(rem.iter().all(|&x| x == 0), "inexact cyclotomic division");
    q
}

thread_local! {
    static CACHE: RefCell<HashMap<usize, Vec<i64>>> = RefCell::new(HashMap::new());
}

/// Coefficients of the `m`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic(m: usize) -> Vec<i64> {
    if let Some(p) = CACHE.with(|c| c.borrow().get(&m).cloned()) {
        return p;
    }
    let mut p = vec![0i64; m + 1];
    p[0] = -1;
    p[m] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            p = poly_divexact(&p, &cyclotomic(d));
        }
    }
    CACHE.with(|c| c.borrow_mut().insert(m, p.clone()));
    p
}

/// `x^k mod Phi_m` as a coefficient vector of length `phi(m)`.
fn power_mod(k: usize, phi: &[i64]) -> Vec<Rational> {
    let deg = phi.len() - 1;
    let mut v = vec![0i64; deg.max(k + 1)];
    v[k] = 1;
    for i in (deg..v.len()).rev() {
        let c = v[i];
        if c != 0 {
            for (j, p) in phi.iter().enumerate() {
                v[i - deg + j] -= c * p;
            }
        }
    }
    v.truncate(deg);
    v.into_iter().map(Rational::from).collect()
}

fn rank(rows: &mut [Vec<Rational>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, pivot);
        let inv = rows[r][c].checked_recip().expect("nonzero pivot");
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] * &inv;
                for j in 0..cols {
                    let d = &f * &rows[r][j];
                    rows[i][j] = &rows[i][j] - &d;
                }
            }
        }
        r += 1;
    }
    r
}

/// `true` when `1, cos(pi r1), cos(pi r2)` are independent over `Q`.
pub fn cos_independent(r1: &Rational, r2: &Rational) -> bool {
    let d1 = r1.denom().to_i64().expect("small denominator");
    let d2 = r2.denom().to_i64().expect("small denominator");
    let l = d1.lcm(&d2);
    // zeta = exp(i pi / l) has order m = 2l; cos(pi a/b) = (zeta^k + zeta^-k)/2
    let m = (2 * l) as usize;
    let phi = cyclotomic(m);
    let half = Rational::new(1, 2);
    let cos_vec = |r: &Rational| {
        let k = (r * &Rational::from(l)).numer().mod_floor(&(m as i64).into()).to_usize().expect("index");
        let a = power_mod(k, &phi);
        let b = power_mod((m - k) % m, &phi);
        a.iter().zip(&b).map(|(x, y)| &(x + y) * &half).collect::<Vec<_>>()
    };
    let mut rows = vec![power_mod(0, &phi), cos_vec(r1), cos_vec(r2)];
    rank(&mut rows) == 3
}
