use num_complex::Complex64;
use serde::Serialize;

use super::series::{ps, Point, Series};
use crate::error::Result;
use crate::exactnum::{QuadExt, Rational};

/// Principal parts at one pole: `coeffs[k-1]` multiplies `(z - pole)^-k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PoleTerm {
    pub pole: QuadExt,
    pub coeffs: Vec<QuadExt>,
}

impl PoleTerm {
    pub fn order(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).map_or(0, |i| i + 1)
    }
}

/// Exact rational function as a sum of principal parts plus a polynomial
/// (`polynomial[j]` multiplies `z^j`).
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct PartialFractions {
    pub poles: Vec<PoleTerm>,
    pub polynomial: Vec<QuadExt>,
}

/// Coefficients of `p(x + c)` given those of `p(z)`.
pub fn taylor_shift(p: &[QuadExt], c: &QuadExt) -> Vec<QuadExt> {
    let mut out = vec![QuadExt::zero(); p.len()];
    // Horner: out = out*(x + c) + p_j
    for pj in p.iter().rev() {
        let mut next = vec![QuadExt::zero(); p.len()];
        for (i, o) in out.iter().enumerate() {
            if o.is_zero() {
                continue;
            }
            if i + 1 < next.len() {
                next[i + 1] = &next[i + 1] + o;
            }
            next[i] = &next[i] + &(o * c);
        }
        next[0] = &next[0] + pj;
        out = next;
    }
    out
}

impl PartialFractions {
    pub fn new() -> Self {
        PartialFractions::default()
    }

    /// Adds `c / (z - pole)^k`; zero coefficients are ignored.
    pub fn add_pole(&mut self, pole: QuadExt, k: usize, c: QuadExt) -> &mut Self {
        assert!(k >= 1, "pole order must be positive");
        if c.is_zero() {
            return self;
        }
        let idx = match self.poles.iter().position(|t| t.pole == pole) {
            Some(i) => i,
            None => {
                self.poles.push(PoleTerm { pole, coeffs: Vec::new() });
                self.poles.len() - 1
            }
        };
        let t = &mut self.poles[idx];
        if t.coeffs.len() < k {
            t.coeffs.resize(k, QuadExt::zero());
        }
        t.coeffs[k - 1] = &t.coeffs[k - 1] + &c;
        self.prune();
        self
    }

    pub fn add_monomial(&mut self, j: usize, c: QuadExt) -> &mut Self {
        if self.polynomial.len() <= j {
            self.polynomial.resize(j + 1, QuadExt::zero());
        }
        self.polynomial[j] = &self.polynomial[j] + &c;
        self.prune();
        self
    }

    fn prune(&mut self) {
        for t in &mut self.poles {
            let n = t.order();
            t.coeffs.truncate(n);
        }
        self.poles.retain(|t| !t.coeffs.is_empty());
        while self.polynomial.last().is_some_and(QuadExt::is_zero) {
            self.polynomial.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.poles.is_empty() && self.polynomial.is_empty()
    }

    pub fn pole_order(&self, p: &QuadExt) -> usize {
        self.poles.iter().find(|t| &t.pole == p).map_or(0, PoleTerm::order)
    }

    /// Coefficient of `(z - p)^-k`, zero if absent.
    pub fn coeff(&self, p: &QuadExt, k: usize) -> QuadExt {
        self.poles
            .iter()
            .find(|t| &t.pole == p)
            .and_then(|t| t.coeffs.get(k - 1).cloned())
            .unwrap_or_default()
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &self.poles {
            let x = z - t.pole.to_complex();
            let mut xp = x;
            for c in &t.coeffs {
                acc += c.to_complex() / xp;
                xp *= x;
            }
        }
        let mut zp = Complex64::new(1.0, 0.0);
        for c in &self.polynomial {
            acc += c.to_complex() * zp;
            zp *= z;
        }
        acc
    }

    pub fn scale(&self, c: &QuadExt) -> PartialFractions {
        let mut out = PartialFractions::new();
        for t in &self.poles {
            for (k, x) in t.coeffs.iter().enumerate() {
                out.add_pole(t.pole.clone(), k + 1, x * c);
            }
        }
        for (j, x) in self.polynomial.iter().enumerate() {
            out.add_monomial(j, x * c);
        }
        out
    }

    pub fn add(&self, other: &PartialFractions) -> PartialFractions {
        let mut out = self.clone();
        for t in &other.poles {
            for (k, x) in t.coeffs.iter().enumerate() {
                out.add_pole(t.pole.clone(), k + 1, x.clone());
            }
        }
        for (j, x) in other.polynomial.iter().enumerate() {
            out.add_monomial(j, x.clone());
        }
        out
    }

    /// Laurent expansion with `order` terms in the local variable of `point`.
    pub fn laurent(&self, point: &Point, order: usize) -> Series {
        match point {
            Point::Finite(p0) => {
                let m = self.pole_order(p0);
                let mut out = vec![QuadExt::zero(); order];
                let tail = order.saturating_sub(m);
                for t in &self.poles {
                    if &t.pole == p0 {
                        for (k1, c) in t.coeffs.iter().enumerate() {
                            let idx = m - (k1 + 1);
                            if idx < order {
                                out[idx] = &out[idx] + c;
                            }
                        }
                        continue;
                    }
                    let delta = p0 - &t.pole;
                    let inv = delta.recip().expect("distinct poles");
                    for (k1, c) in t.coeffs.iter().enumerate() {
                        let k = (k1 + 1) as i64;
                        let lead = c * &inv.pow(k as u32);
                        let bin = ps::binomial_series(&Rational::from(-k), &inv, tail);
                        for (j, b) in bin.iter().enumerate() {
                            out[j + m] = &out[j + m] + &(b * &lead);
                        }
                    }
                }
                let shifted = taylor_shift(&self.polynomial, p0);
                for (j, c) in shifted.iter().enumerate() {
                    if j + m < order {
                        out[j + m] = &out[j + m] + c;
                    }
                }
                Series::new(point.clone(), Rational::from(-(m as i64)), out)
            }
            Point::Infinity => {
                let deg = self.polynomial.len() as i64 - 1;
                let low = if deg >= 0 { -deg } else { 1 };
                let mut out = vec![QuadExt::zero(); order];
                for t in &self.poles {
                    let np = -&t.pole;
                    for (k1, c) in t.coeffs.iter().enumerate() {
                        let k = (k1 + 1) as i64;
                        let start = (k - low) as usize;
                        if start >= order {
                            continue;
                        }
                        let bin = ps::binomial_series(&Rational::from(-k), &np, order - start);
                        for (j, b) in bin.iter().enumerate() {
                            out[start + j] = &out[start + j] + &(b * c);
                        }
                    }
                }
                for (j, c) in self.polynomial.iter().enumerate() {
                    let idx = (-(j as i64) - low) as usize;
                    if idx < order {
                        out[idx] = &out[idx] + c;
                    }
                }
                Series::new(point.clone(), Rational::from(low), out)
            }
        }
    }

    /// Decomposes `num(z) / (lead * prod (z - p_i)^{m_i})` for distinct `p_i`.
    pub fn from_factored(
        num: &[QuadExt],
        lead: &QuadExt,
        poles: &[(QuadExt, usize)],
    ) -> Result<PartialFractions> {
        let inv_lead = lead.recip()?;
        let mut out = PartialFractions::new();
        for (i, (p, m)) in poles.iter().enumerate() {
            // g(x) = num(x + p) / prod_{j != i} (x + p - p_j)^{m_j}, first m terms
            let n = *m;
            let mut g = taylor_shift(num, p);
            g.resize(n.max(g.len()), QuadExt::zero());
            g.truncate(n);
            for (j, (pj, mj)) in poles.iter().enumerate() {
                if j == i {
                    continue;
                }
                let delta = p - pj;
                let inv = delta.recip()?;
                let lead_j = inv.pow(*mj as u32);
                let bin = ps::binomial_series(&Rational::from(-(*mj as i64)), &inv, n);
                g = ps::scale(&ps::mul(&g, &bin, n), &lead_j);
            }
            for (r, c) in g.iter().enumerate() {
                out.add_pole(p.clone(), n - r, c * &inv_lead);
            }
        }
        // polynomial part from the expansion at infinity
        let total: usize = poles.iter().map(|(_, m)| m).sum();
        let deg_num = num.iter().rposition(|c| !c.is_zero()).map_or(0, |d| d + 1);
        if deg_num > total {
            let n = deg_num - total;
            let rev: Vec<QuadExt> = num[..deg_num].iter().rev().cloned().collect();
            let mut g = rev;
            g.truncate(n);
            for (pj, mj) in poles {
                let bin = ps::binomial_series(&Rational::from(-(*mj as i64)), &-pj, n);
                g = ps::mul(&g, &bin, n);
            }
            // coefficient of w^r is that of z^(deg_num - 1 - total - r)
            for (r, c) in g.iter().enumerate() {
                out.add_monomial(n - 1 - r, c * &inv_lead);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i(n: i64) -> QuadExt {
        QuadExt::from_int(n)
    }

    #[test]
    fn factored_decomposition_matches_evaluation() {
        // (z^3 + 2) / (2 (z-1)^2 (z+1))
        let num = vec![i(2), i(0), i(0), i(1)];
        let pf = PartialFractions::from_factored(&num, &i(2), &[(i(1), 2), (i(-1), 1)]).unwrap();
        for z in [Complex64::new(0.3, 0.7), Complex64::new(-2.0, 0.1), Complex64::new(4.0, -3.0)] {
            let direct = (z * z * z + 2.0) / (2.0 * (z - 1.0) * (z - 1.0) * (z + 1.0));
            assert!((pf.eval_complex(z) - direct).norm() < 1e-12, "{z}");
        }
        assert_eq!(pf.polynomial, vec![i(1).scale(&Rational::new(1, 2))]);
    }

    #[test]
    fn laurent_matches_evaluation() {
        let mut pf = PartialFractions::new();
        pf.add_pole(i(0), 1, i(3)).add_pole(i(2), 2, i(-1)).add_monomial(1, i(5));
        for p in [Point::finite(0), Point::finite(2), Point::finite(1), Point::Infinity] {
            let s = pf.laurent(&p, 30);
            let z = match &p {
                Point::Finite(c) => c.to_complex() + Complex64::new(0.05, 0.03),
                Point::Infinity => Complex64::new(40.0, 25.0),
            };
            assert!((s.eval_complex(z) - pf.eval_complex(z)).norm() < 1e-9, "{p}");
        }
    }
}
