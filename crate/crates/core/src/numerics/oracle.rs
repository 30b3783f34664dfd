use num_complex::Complex64;

use super::integrate::oracle_tolerance;
use super::loops::{solve_on_circle, Circle, LoopSolutions};
use crate::error::{Error, Result};
use crate::fuchsian::{FuchsOde, Point, Series};
use crate::ve::TrapParams;

/// The rational functions of the variational equations in floating point,
/// evaluated directly from the trap parameters.
#[derive(Clone, Copy, Debug)]
pub struct FloatVe {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    e: f64,
    f: f64,
}

impl FloatVe {
    pub fn new(params: &TrapParams) -> Self {
        let [a, b, c, d, e, f, _] = params.floats();
        FloatVe { a, b, c, d, e, f }
    }

    fn quad(&self, z: Complex64) -> Complex64 {
        self.e * z * z + self.c * z + self.b
    }

    /// `(4E z^2 + 3C z + 2B) / (2 z q)`
    pub fn a_coeff(&self, z: Complex64) -> Complex64 {
        (4.0 * self.e * z * z + 3.0 * self.c * z + 2.0 * self.b) / (2.0 * z * self.quad(z))
    }

    /// `-(F z^2 + D z + A) / (z^2 q)`
    pub fn b_nve(&self, z: Complex64) -> Complex64 {
        -(self.f * z * z + self.d * z + self.a) / (z * z * self.quad(z))
    }

    /// `-(2B + 6C z + 12E z^2) / (2 z^2 q)`
    pub fn b_tan(&self, z: Complex64) -> Complex64 {
        -(2.0 * self.b + 6.0 * self.c * z + 12.0 * self.e * z * z) / (2.0 * z * z * self.quad(z))
    }

    /// `(D + 2F z) / (z^2 q)`
    pub fn k2_1(&self, z: Complex64) -> Complex64 {
        (self.d + 2.0 * self.f * z) / (z * z * self.quad(z))
    }

    /// `(D + 2F z) / (2 z^2 q)`
    pub fn k2_2_nve(&self, z: Complex64) -> Complex64 {
        self.k2_1(z) / 2.0
    }

    /// `(3C + 12E z) / (2 z^2 q)`
    pub fn k2_2_tan(&self, z: Complex64) -> Complex64 {
        (3.0 * self.c + 12.0 * self.e * z) / (2.0 * z * z * self.quad(z))
    }

    /// Roots of `E z^2 + C z + B`, the first with the `+` sign.
    pub fn roots(&self) -> Result<(Complex64, Complex64)> {
        if self.e == 0.0 {
            return Err(Error::DegenerateBranch("E=0".into()));
        }
        let disc = Complex64::new(self.c * self.c - 4.0 * self.b * self.e, 0.0).sqrt();
        let two_e = 2.0 * self.e;
        Ok(((-self.c + disc) / two_e, (-self.c - disc) / two_e))
    }
}

/// Which product of solutions and sources a residue is taken of:
/// `1: -xi11_2 K1`, `2: xi11_1 K1`, `3: -xi12_2 K2`, `4: xi12_1 K2`.
pub type Component = usize;

fn branch_points(ve: &FloatVe, i: u8) -> Result<(Complex64, Complex64)> {
    let (z1, z2) = ve.roots()?;
    match i {
        1 => Ok((z1, z2)),
        2 => Ok((z2, z1)),
        _ => Err(Error::PreconditionViolation(format!("branch point index {i} not in {{1, 2}}"))),
    }
}

/// Largest admissible radius: half the distance to the nearest other
/// singular point.
pub fn max_radius(params: &TrapParams, i: u8) -> Result<f64> {
    let ve = FloatVe::new(params);
    let (zi, zj) = branch_points(&ve, i)?;
    Ok(0.5 * zi.norm().min((zi - zj).norm()))
}

/// Local solutions at `z_i` continued numerically over two turns, with the
/// analytic member normalized to value 1 at `z_i` and the half-exponent
/// member scaled to unit normalized Wronskian.
struct NumericPair {
    analytic: Vec<[Complex64; 2]>,
    half: Vec<[Complex64; 2]>,
}

fn numeric_pair(sols: &LoopSolutions, zi: Complex64, zj: Complex64) -> Result<NumericPair> {
    let (_, va) = sols.eigenvector(Complex64::new(1.0, 0.0))?;
    let (_, vh) = sols.eigenvector(Complex64::new(-1.0, 0.0))?;
    let mut analytic = sols.combine(va);
    let mean: Complex64 = analytic[..sols.nodes].iter().map(|s| s[0]).sum::<Complex64>() / sols.nodes as f64;
    if mean.norm() == 0.0 {
        return Err(Error::WronskianDegenerate);
    }
    for s in &mut analytic {
        s[0] /= mean;
        s[1] /= mean;
    }
    let mut half = sols.combine(vh);
    let x = Complex64::new(sols.circle.radius, 0.0);
    let abel = x.sqrt() * (1.0 + x / zi) * (1.0 + x / (zi - zj)).sqrt();
    let w = (half[0][0] * analytic[0][1] - half[0][1] * analytic[0][0]) * abel;
    if w.norm() < 1e-300 {
        return Err(Error::WronskianDegenerate);
    }
    for s in &mut half {
        s[0] /= w;
        s[1] /= w;
    }
    Ok(NumericPair { analytic, half })
}

/// `(1/(2 pi i)) \oint f dz` around `z_i` for one of the four components,
/// by the trapezoidal rule with `nodes` nodes per turn. Components with a
/// half-integer exponent are integrated over a double loop and halved.
pub fn contour_residue(params: &TrapParams, i: u8, component: Component, radius: f64, nodes: usize) -> Result<Complex64> {
    if !(1..=4).contains(&component) {
        return Err(Error::PreconditionViolation(format!("component {component} not in 1..=4")));
    }
    Ok(contour_residues(params, i, radius, nodes)?[component - 1])
}

/// All four components of `contour_residue` from one pair of loops.
pub fn contour_residues(params: &TrapParams, i: u8, radius: f64, nodes: usize) -> Result<[Complex64; 4]> {
    if nodes < 64 {
        return Err(Error::PreconditionViolation("contour residues need at least 64 nodes".into()));
    }
    let ve = FloatVe::new(params);
    let (zi, zj) = branch_points(&ve, i)?;
    if !(radius > 0.0 && radius < max_radius(params, i)?) {
        return Err(Error::PathThroughSingularity);
    }
    let circle = Circle { center: zi, radius };
    let tol = oracle_tolerance();
    let nve = solve_on_circle(|z| (ve.a_coeff(z), ve.b_nve(z)), circle, nodes, 2, tol)?;
    let tan = solve_on_circle(|z| (ve.a_coeff(z), ve.b_tan(z)), circle, nodes, 2, tol)?;
    let xi11 = numeric_pair(&nve, zi, zj)?;
    let xi12 = numeric_pair(&tan, zi, zj)?;
    let component = |c: Component| {
        nve.contour_mean(|k: usize, z: Complex64| {
            let u = xi11.analytic[k][0];
            let v = xi12.analytic[k][0];
            let k1 = ve.k2_1(z) * u * v;
            let k2 = ve.k2_2_nve(z) * u * u + ve.k2_2_tan(z) * v * v;
            match c {
                1 => -u * k1,
                2 => xi11.half[k][0] * k1,
                3 => -v * k2,
                _ => xi12.half[k][0] * k2,
            }
        })
    };
    Ok([component(1), component(2), component(3), component(4)])
}

/// Default contour radius: an eighth of the distance to the nearest other
/// singular point. Larger circles pass close to the poles at `0` or `z_j`,
/// where the integrand grows and double precision loses digits to
/// cancellation.
pub fn default_radius(params: &TrapParams, i: u8) -> Result<f64> {
    Ok(0.25 * max_radius(params, i)?)
}

/// Maximum relative deviation, on a circle of radius `radius`, between a
/// Frobenius series and the numerically continued solution with the same
/// monodromy and leading coefficient.
pub fn series_vs_numeric(ode: &FuchsOde, series: &Series, radius: f64, nodes: usize) -> Result<f64> {
    let center = match &series.point {
        Point::Finite(c) => c.to_complex(),
        Point::Infinity => return Err(Error::PreconditionViolation("series must be at a finite point".into())),
    };
    let nearest = ode
        .singular_points()
        .iter()
        .filter_map(|p| p.value().map(|v| (v.to_complex() - center).norm()))
        .filter(|d| *d > 0.0)
        .fold(f64::INFINITY, f64::min);
    if !(radius > 0.0 && radius <= 0.5 * nearest) {
        return Err(Error::PathThroughSingularity);
    }
    let circle = Circle { center, radius };
    let coeffs = |z: Complex64| (ode.a.eval_complex(z), ode.b.eval_complex(z));
    let sols = solve_on_circle(coeffs, circle, nodes, 1, oracle_tolerance())?;
    let lambda = series.exponent.to_f64();
    let target = Complex64::from_polar(1.0, std::f64::consts::TAU * lambda);
    let (_, v) = sols.eigenvector(target)?;
    let y = sols.combine(v);
    // y x^(-lambda) along the continuous branch is single-valued
    let g: Vec<Complex64> = (0..nodes)
        .map(|k| {
            let theta = circle.node(k, nodes);
            y[k][0] * Complex64::from_polar(radius.powf(-lambda), -lambda * theta)
        })
        .collect();
    let mean = g.iter().sum::<Complex64>() / nodes as f64;
    let lead = series.coeffs.first().map(|c| c.to_complex()).ok_or(Error::InsufficientTruncation)?;
    if mean.norm() == 0.0 {
        return Err(Error::WronskianDegenerate);
    }
    let scale = lead / mean;
    let mut worst = 0.0f64;
    let mut size = 0.0f64;
    for (k, gk) in g.iter().enumerate() {
        let x = Complex64::from_polar(radius, circle.node(k, nodes));
        let poly = series.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c.to_complex());
        let num = gk * scale;
        worst = worst.max((num - poly).norm());
        size = size.max(num.norm());
    }
    Ok(worst / size)
}
