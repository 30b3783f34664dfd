//! Invariants checked over randomized inputs.

mod common;

use common::{generic, rng};
use iontrap_audit::classifier::classify;
use iontrap_audit::exactnum::{QuadExt, Rational};
use iontrap_audit::fuchsian::{Point, ResonancePolicy, Series};
use iontrap_audit::numerics::{contour_residues, integrate_flow, max_radius, IntegratorConfig};
use iontrap_audit::report::{audit, AuditReport};
use iontrap_audit::ve::{build_nve, roots, tangential_ode, TrapParams};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-1000i64..=1000, 1i64..=60).prop_map(|(n, d)| Rational::new(n, d))
}

fn squarefree() -> impl Strategy<Value = i64> {
    prop::sample::select(vec![-7i64, -3, -1, 2, 3, 5, 6, 10, 13])
}

fn quad(d: i64) -> impl Strategy<Value = QuadExt> {
    (rational(), rational()).prop_map(move |(a, b)| QuadExt::new(a, b, Rational::from(d)))
}

fn params_any() -> impl Strategy<Value = TrapParams> {
    prop::array::uniform7((-4i64..=4, 1i64..=3)).prop_map(|v| common::params(v.map(|(n, d)| Rational::new(n, d))))
}

fn generic_params() -> impl Strategy<Value = TrapParams> {
    any::<u64>().prop_map(|seed| generic(&mut rng(seed)))
}

fn all_zero(s: &Series) -> bool {
    s.coeffs.iter().all(QuadExt::is_zero)
}

proptest! {
    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Rational::zero());
        if let Some(r) = a.checked_recip() {
            prop_assert!((&a * &r).is_one());
        }
    }

    #[test]
    fn rational_string_round_trip(a in rational()) {
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Rational>(&json).unwrap(), a);
    }

    #[test]
    fn quadratic_field_axioms((x, y, z) in squarefree().prop_flat_map(|d| (quad(d), quad(d), quad(d)))) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!((&x * &y).norm(), &x.norm() * &y.norm());
        prop_assert_eq!((&x * &x.conj()).as_rational().cloned(), Some(x.norm()));
        if !x.is_zero() {
            prop_assert!((&x * &x.recip().unwrap()).is_one());
        }
    }

    #[test]
    fn quadratic_string_round_trip(x in squarefree().prop_flat_map(quad)) {
        prop_assert_eq!(x.to_string().parse::<QuadExt>().unwrap(), x.clone());
        let json = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<QuadExt>(&json).unwrap(), x);
    }

    #[test]
    fn classification_is_total_and_replays(p in params_any()) {
        let (verdict, cert) = classify(&p);
        prop_assert_eq!(cert.replay().unwrap(), verdict);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn frobenius_series_solve_the_equation(p in generic_params()) {
        let (z1, z2) = roots(&p).unwrap();
        for ode in [build_nve(&p).unwrap(), tangential_ode(&p).unwrap()] {
            for z in [&z1, &z2] {
                let point = Point::finite(z.clone());
                for e in [Rational::zero(), Rational::new(1, 2)] {
                    let s = ode.frobenius_local(&point, &e, 10, ResonancePolicy::Strict).unwrap();
                    prop_assert!(s.coeffs[0].is_one());
                    let defect = ode.defect(&s).unwrap();
                    prop_assert!(defect.order() >= 8, "defect has {} terms", defect.order());
                    prop_assert!(all_zero(&defect), "{} at {} exponent {}: {:?}", p, z, e, defect.coeffs);
                }
            }
        }
    }

    #[test]
    fn report_json_round_trips(p in params_any()) {
        let r = audit(&p, false);
        let s = r.to_json().unwrap();
        let back = AuditReport::from_json(&s).unwrap();
        prop_assert_eq!(back.to_json().unwrap(), s);
        prop_assert_eq!(back, r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn symplectic_energy_error_is_bounded(r in 0.05f64..0.2, z in -0.2f64..0.2, pr in -0.1f64..0.1, pz in -0.1f64..0.1) {
        let p = TrapParams::from_ints([1, 1, 1, 3, 1, 6, 0]);
        let cfg = IntegratorConfig::symplectic(1e-2);
        let short = integrate_flow(&p, [r, pr, z, pz], 100.0, &cfg).unwrap();
        let long = integrate_flow(&p, [r, pr, z, pz], 200.0, &cfg).unwrap();
        prop_assert!(long.energy_drift < 2.0 * short.energy_drift, "{} {}", short.energy_drift, long.energy_drift);
    }

    #[test]
    fn contour_residues_do_not_depend_on_the_circle(p in generic_params(), f1 in 0.1f64..0.25, f2 in 0.1f64..0.25) {
        for i in [1u8, 2] {
            let rmax = max_radius(&p, i).unwrap();
            let a = contour_residues(&p, i, f1 * rmax, 128).unwrap();
            let b = contour_residues(&p, i, f2 * rmax, 128).unwrap();
            let c = contour_residues(&p, i, f1 * rmax, 64).unwrap();
            for k in 0..4 {
                let scale = a[k].norm().max(1.0);
                prop_assert!((a[k] - b[k]).norm() / scale < 1e-9, "{} z{} radius: {} vs {}", p, i, a[k], b[k]);
                prop_assert!((a[k] - c[k]).norm() / scale < 1e-10, "{} z{} nodes: {} vs {}", p, i, a[k], c[k]);
            }
        }
    }
}
