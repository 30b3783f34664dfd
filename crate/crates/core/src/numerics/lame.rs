use num_complex::Complex64;
use ode_solvers::SVector;

use super::integrate::{oracle_tolerance, propagate};
use super::loops::Circle;
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::ve::{lame_data, weierstrass_series, TrapParams};

type V12 = SVector<f64, 12>;

const SERIES_ORDER: usize = 48;

fn pack(z: [Complex64; 6]) -> V12 {
    let mut v = V12::zeros();
    for (i, c) in z.iter().enumerate() {
        v[2 * i] = c.re;
        v[2 * i + 1] = c.im;
    }
    v
}

fn unpack(v: &V12) -> [Complex64; 6] {
    std::array::from_fn(|i| Complex64::new(v[2 * i], v[2 * i + 1]))
}

/// Radius of convergence of `wp - t^-2` from the root test on its last
/// nonzero Laurent coefficients; infinite when they all vanish.
fn lattice_radius(coeffs: &[f64]) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .skip(coeffs.len() / 2)
        .filter(|(k, c)| *k > 2 && **c != 0.0)
        .map(|(k, c)| c.abs().powf(-1.0 / (k as f64 - 2.0)))
        .fold(f64::INFINITY, f64::min)
}

/// Samples of `(wp, xi_a, xi_b)` on `|t| = radius`, with `xi_a`, `xi_b`
/// the solutions of `xi'' = (n wp + s) xi` that start from the unit vectors
/// at `t = radius`.
fn lame_loop(g2: f64, wp0: [Complex64; 2], big_n: f64, shift: f64, circle: Circle, nodes: usize) -> Result<Vec<[Complex64; 3]>> {
    let rhs = |theta: f64, v: &V12, dv: &mut V12| {
        let dt = circle.tangent(theta);
        let [wp, dwp, y1, dy1, y2, dy2] = unpack(v);
        let pot = big_n * wp + shift;
        let out = [dwp, 6.0 * wp * wp - g2 / 2.0, dy1, pot * y1, dy2, pot * y2].map(|c| c * dt);
        *dv = pack(out);
    };
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut state = pack([wp0[0], wp0[1], one, zero, zero, one]);
    let tol = oracle_tolerance();
    let mut out = Vec::with_capacity(nodes);
    for k in 0..nodes {
        let s = unpack(&state);
        out.push([s[0], s[2], s[4]]);
        let (t0, t1) = (circle.node(k, nodes), circle.node(k + 1, nodes));
        state = propagate(rhs, t0, t1, state, tol, t1 - t0)?;
    }
    Ok(out)
}

/// Laurent coefficient of `t^k` from samples on a circle about 0.
fn laurent_coeff(samples: &[Complex64], circle: Circle, k: i32) -> Complex64 {
    let n = samples.len();
    samples
        .iter()
        .enumerate()
        .map(|(j, y)| y * circle.point(circle.node(j, n)).powi(-k))
        .sum::<Complex64>()
        / n as f64
}

/// The solution with `t^-3` coefficient 1 and `t^4` coefficient 0.
fn second_solution(ya: &[Complex64], yb: &[Complex64], circle: Circle) -> Result<Vec<Complex64>> {
    let (a3, b3) = (laurent_coeff(ya, circle, -3), laurent_coeff(yb, circle, -3));
    let (a4, b4) = (laurent_coeff(ya, circle, 4), laurent_coeff(yb, circle, 4));
    let det = a3 * b4 - b3 * a4;
    if det.norm() < 1e-300 {
        return Err(Error::WronskianDegenerate);
    }
    let alpha = b4 / det;
    let beta = -a4 / det;
    Ok(ya.iter().zip(yb).map(|(a, b)| alpha * a + beta * b).collect())
}

struct LameLoops {
    circle: Circle,
    xi11: Vec<Complex64>,
    xi12: Vec<Complex64>,
}

fn lame_loops(params: &TrapParams, nodes: usize) -> Result<LameLoops> {
    if params.d != Rational::from(3) * &params.c {
        return Err(Error::BranchMismatch("Lame residue needs D = 3C".into()));
    }
    let data = lame_data(params, &params.h)?;
    let wp = weierstrass_series(&data.g2, &data.g3, SERIES_ORDER);
    let coeffs: Vec<f64> = wp.coeffs.iter().map(|c| c.to_f64()).collect();
    let radius = (0.5 * lattice_radius(&coeffs)).min(1.0);
    let circle = Circle { center: Complex64::new(0.0, 0.0), radius };
    let t0 = Complex64::new(radius, 0.0);
    let start = [wp.eval_local(t0), wp.derivative().eval_local(t0)];
    let g2 = data.g2.to_f64();
    let run = |big_n: f64, shift: f64| lame_loop(g2, start, big_n, shift, circle, nodes);
    let s11 = run(data.big_n.to_f64(), data.shift.to_f64())?;
    let s12 = run(12.0, 0.0)?;
    let col = |s: &[[Complex64; 3]], i: usize| s.iter().map(|v| v[i]).collect::<Vec<_>>();
    let xi11 = second_solution(&col(&s11, 1), &col(&s11, 2), circle)?;
    let xi12 = second_solution(&col(&s12, 1), &col(&s12, 2), circle)?;
    Ok(LameLoops { circle, xi11, xi12 })
}

/// Numeric value of the residue at `t = 0` of `D xi11 xi12 xi11`, the
/// solutions fixed by their Laurent coefficients.
pub fn lame_contour_residue(params: &TrapParams, nodes: usize) -> Result<Complex64> {
    let l = lame_loops(params, nodes)?;
    let d = params.d.to_f64();
    let f: Vec<Complex64> = l.xi11.iter().zip(&l.xi12).map(|(u, v)| d * u * u * v).collect();
    Ok(laurent_coeff(&f, l.circle, -1))
}
