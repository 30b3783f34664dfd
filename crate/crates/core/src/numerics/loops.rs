use num_complex::Complex64;
use ode_solvers::SVector;

use super::integrate::propagate;
use crate::error::{Error, Result};

/// The path `center + radius e^(i theta)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Circle {
    pub center: Complex64,
    pub radius: f64,
}

impl Circle {
    pub fn point(&self, theta: f64) -> Complex64 {
        self.center + Complex64::from_polar(self.radius, theta)
    }

    /// `dz/dtheta`
    pub fn tangent(&self, theta: f64) -> Complex64 {
        Complex64::i() * Complex64::from_polar(self.radius, theta)
    }

    pub fn node(&self, k: usize, nodes: usize) -> f64 {
        std::f64::consts::TAU * k as f64 / nodes as f64
    }
}

pub(crate) type V4 = SVector<f64, 4>;

pub(crate) fn pack2(y: Complex64, dy: Complex64) -> V4 {
    V4::from([y.re, y.im, dy.re, dy.im])
}

pub(crate) fn unpack2(v: &V4) -> [Complex64; 2] {
    [Complex64::new(v[0], v[1]), Complex64::new(v[2], v[3])]
}

/// Two solutions of `y'' + a(z) y' + b(z) y = 0` continued along a circle,
/// sampled at `theta_k = 2 pi k / nodes` for `k = 0 ..= turns * nodes`.
/// Solution `j` starts from the `j`-th unit vector in `(y, dy/dz)`.
#[derive(Clone, Debug)]
pub struct LoopSolutions {
    pub circle: Circle,
    pub nodes: usize,
    pub turns: usize,
    pub values: [Vec<[Complex64; 2]>; 2],
}

pub fn solve_on_circle<F>(coeffs: F, circle: Circle, nodes: usize, turns: usize, tol: f64) -> Result<LoopSolutions>
where
    F: Fn(Complex64) -> (Complex64, Complex64),
{
    if nodes == 0 || turns == 0 || !(circle.radius > 0.0) {
        return Err(Error::PreconditionViolation("circle needs positive radius and nodes".into()));
    }
    let rhs = |theta: f64, v: &V4, dv: &mut V4| {
        let z = circle.point(theta);
        let dz = circle.tangent(theta);
        let (a, b) = coeffs(z);
        let [y, yp] = unpack2(v);
        let ypp = -(a * yp) - b * y;
        *dv = pack2(yp * dz, ypp * dz);
    };
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut values: [Vec<[Complex64; 2]>; 2] = [Vec::new(), Vec::new()];
    for (j, start) in [pack2(one, zero), pack2(zero, one)].into_iter().enumerate() {
        let mut state = start;
        values[j].push(unpack2(&state));
        for k in 0..nodes * turns {
            let (t0, t1) = (circle.node(k, nodes), circle.node(k + 1, nodes));
            state = propagate(rhs, t0, t1, state, tol, t1 - t0)?;
            if state.iter().any(|x| !x.is_finite()) {
                return Err(Error::PathThroughSingularity);
            }
            values[j].push(unpack2(&state));
        }
    }
    Ok(LoopSolutions { circle, nodes, turns, values })
}

impl LoopSolutions {
    /// `M[i][j]`: component `i` of solution `j` after one turn.
    pub fn monodromy(&self) -> [[Complex64; 2]; 2] {
        let a = self.values[0][self.nodes];
        let b = self.values[1][self.nodes];
        [[a[0], b[0]], [a[1], b[1]]]
    }

    /// Samples of the solution with initial data `v`.
    pub fn combine(&self, v: [Complex64; 2]) -> Vec<[Complex64; 2]> {
        self.values[0]
            .iter()
            .zip(&self.values[1])
            .map(|(a, b)| [a[0] * v[0] + b[0] * v[1], a[1] * v[0] + b[1] * v[1]])
            .collect()
    }

    /// Initial data of the solution multiplied by the monodromy eigenvalue
    /// closest to `target`.
    pub fn eigenvector(&self, target: Complex64) -> Result<(Complex64, [Complex64; 2])> {
        let m = self.monodromy();
        let tr = m[0][0] + m[1][1];
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let scale = m.iter().flatten().map(|c| c.norm()).fold(0.0, f64::max).max(1.0);
        let disc2 = tr * tr - 4.0 * det;
        // a double eigenvalue is known to O(eps) from the trace but only to
        // O(sqrt(eps)) from the root of the discriminant
        let lambda = if disc2.norm() < 1e-12 * scale * scale {
            tr / 2.0
        } else {
            let disc = disc2.sqrt();
            let l1 = (tr + disc) / 2.0;
            let l2 = (tr - disc) / 2.0;
            if (l1 - target).norm() <= (l2 - target).norm() { l1 } else { l2 }
        };
        let v1 = [m[0][1], lambda - m[0][0]];
        let v2 = [lambda - m[1][1], m[1][0]];
        let n = |v: &[Complex64; 2]| v[0].norm().hypot(v[1].norm());
        let v = if n(&v1) >= n(&v2) { v1 } else { v2 };
        if n(&v) <= 1e-9 * scale {
            return Err(Error::PreconditionViolation("monodromy is scalar; eigen-solution not determined".into()));
        }
        Ok((lambda, v))
    }

    /// `(1/(2 pi i)) \oint f dz` over all turns, divided by the number of
    /// turns, by the trapezoidal rule on the sampled values.
    pub fn contour_mean<F>(&self, f: F) -> Complex64
    where
        F: Fn(usize, Complex64) -> Complex64,
    {
        let total = self.nodes * self.turns;
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..total {
            let z = self.circle.point(self.circle.node(k, self.nodes));
            acc += f(k, z) * (z - self.circle.center);
        }
        acc / total as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_equation_monodromy() {
        // y'' + y'/z - (1/4) y / z^2 = 0 has z^(1/2), z^(-1/2): eigenvalue -1 twice
        let circle = Circle { center: Complex64::new(0.0, 0.0), radius: 0.5 };
        let sols = solve_on_circle(
            |z| (1.0 / z, -0.25 / (z * z)),
            circle,
            32,
            1,
            1e-12,
        )
        .unwrap();
        let m = sols.monodromy();
        assert!((m[0][0] + 1.0).norm() < 1e-9 && (m[1][1] + 1.0).norm() < 1e-9, "{m:?}");
    }

    #[test]
    fn cauchy_mean_recovers_residue() {
        let circle = Circle { center: Complex64::new(1.0, 0.0), radius: 0.3 };
        let sols = solve_on_circle(|_| (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)), circle, 64, 1, 1e-12).unwrap();
        let r = sols.contour_mean(|_, z| 3.0 / (z - 1.0) + z);
        assert!((r - 3.0).norm() < 1e-12);
    }
}
