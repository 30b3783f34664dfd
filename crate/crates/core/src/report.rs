//! The audit report: classification, certificate and every derived
//! structure of one parameter set, with a lossless sorted-key JSON encoding.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::classifier::{classify, Certificate, Verdict};
use crate::error::{Error, Result};
use crate::exactnum::{QuadExt, Rational};
use crate::numerics::{contour_residues, default_radius};
use crate::ve::{
    confluent_heun_reduce, derive, lame_data, lame_residue, ve2_point, whittaker_reduce, TrapParams,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Nodes per turn of the numeric residue check.
pub const CHECK_NODES: usize = 128;

/// Relative agreement required between exact and numeric residues.
pub const CHECK_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericCheck {
    pub radius: f64,
    pub nodes: usize,
    /// `[re, im]` of each component.
    pub residues: [[f64; 2]; 4],
    /// `max |numeric - exact| / max(|exact|, 1)` over the components.
    pub max_error: f64,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ve2PointReport {
    pub index: u8,
    pub point: QuadExt,
    /// Residues of `-xi11_2 K1, xi11_1 K1, -xi12_2 K2, xi12_1 K2`.
    pub component_residues: [QuadExt; 4],
    pub displayed_product: QuadExt,
    pub closed_form: QuadExt,
    pub numeric: Option<NumericCheck>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub version: String,
    pub seed: Option<u64>,
    pub params: TrapParams,
    pub derived: Value,
    pub ve2: Vec<Ve2PointReport>,
    pub lame: Value,
    pub whittaker: Value,
    pub confluent_heun: Value,
    pub verdict: Verdict,
    pub necessary_conditions: Vec<String>,
    pub certificate: Certificate,
    pub warnings: Vec<String>,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).unwrap_or(Value::Null)
}

/// Classifies `params` and collects every structure that applies to its
/// branch. With `numeric_check`, VE2 residues are corroborated by contour
/// integration.
pub fn audit(params: &TrapParams, numeric_check: bool) -> AuditReport {
    let (verdict, certificate) = classify(params);
    let mut warnings = Vec::new();
    let derived = derive(params).map(|d| to_value(&d)).unwrap_or(Value::Null);
    let mut ve2 = Vec::new();
    for i in [1u8, 2] {
        let Ok(pt) = ve2_point(params, i) else { break };
        if pt.closed_form != pt.displayed_product {
            warnings.push(format!(
                "closed-form residue at z{i} is {} but the series residue of the displayed product is {}",
                pt.closed_form, pt.displayed_product
            ));
        }
        let numeric = if numeric_check {
            match numeric_check_at(params, i, &pt.component_residues) {
                Ok(n) => {
                    if !n.agree {
                        warnings.push(format!("numeric residues at z{i} deviate by {:e}", n.max_error));
                    }
                    Some(n)
                }
                Err(e) => {
                    warnings.push(format!("numeric residue check at z{i} failed: {e}"));
                    None
                }
            }
        } else {
            None
        };
        let point = pt.point.value().cloned().unwrap_or_else(QuadExt::zero);
        ve2.push(Ve2PointReport {
            index: i,
            point,
            component_residues: pt.component_residues,
            displayed_product: pt.displayed_product,
            closed_form: pt.closed_form,
            numeric,
        });
    }
    let lame = lame_section(params, &mut warnings);
    let whittaker = match whittaker_reduce(params) {
        Ok(w) => {
            if w.mu_squared != w.mu_squared_printed {
                warnings.push(format!(
                    "Whittaker mu^2 from the reduction is {}; the printed value is {}",
                    w.mu_squared, w.mu_squared_printed
                ));
            }
            to_value(&w)
        }
        Err(_) => Value::Null,
    };
    let confluent_heun = confluent_heun_reduce(params).map(|c| to_value(&c)).unwrap_or(Value::Null);
    AuditReport {
        version: VERSION.to_string(),
        seed: None,
        params: params.clone(),
        derived,
        ve2,
        lame,
        whittaker,
        confluent_heun,
        necessary_conditions: verdict.necessary_conditions().to_vec(),
        verdict,
        certificate,
        warnings,
    }
}

fn lame_section(params: &TrapParams, warnings: &mut Vec<String>) -> Value {
    let Ok(data) = lame_data(params, &params.h) else { return Value::Null };
    let printed = &data.printed;
    let pairs = [
        ("Lame constant", &data.shift, &printed.shift),
        ("g2", &data.g2, &printed.g2),
        ("g3", &data.g3, &printed.g3),
        ("a1", &data.a1, &printed.a1),
        ("b1", &data.b1, &printed.b1),
        ("c1", &data.c1, &printed.c1),
        ("d1", &data.d1, &printed.d1),
        ("d2", &data.d2, &printed.d2),
    ];
    for (name, derived, shown) in pairs {
        if derived != shown {
            warnings.push(format!("Lame {name} from the direct substitution is {derived}; the printed formula gives {shown}"));
        }
    }
    let mut v = to_value(&data);
    if let Value::Object(map) = &mut v {
        let residue = if params.d == Rational::from(3) * &params.c { lame_residue(params).ok() } else { None };
        map.insert("n3_residue".into(), residue.map(|r| to_value(&r)).unwrap_or(Value::Null));
    }
    v
}

fn numeric_check_at(params: &TrapParams, i: u8, exact: &[QuadExt; 4]) -> Result<NumericCheck> {
    let radius = default_radius(params, i)?;
    let num = contour_residues(params, i, radius, CHECK_NODES)?;
    let max_error = num
        .iter()
        .zip(exact)
        .map(|(n, x)| {
            let x: Complex64 = x.to_complex();
            (n - x).norm() / x.norm().max(1.0)
        })
        .fold(0.0, f64::max);
    Ok(NumericCheck {
        radius,
        nodes: CHECK_NODES,
        residues: num.map(|c| [c.re, c.im]),
        max_error,
        agree: max_error < CHECK_TOL,
    })
}

impl AuditReport {
    /// Compact JSON with sorted keys.
    pub fn to_json(&self) -> Result<String> {
        let v = serde_json::to_value(self).map_err(json_err)?;
        serde_json::to_string(&v).map_err(json_err)
    }

    /// Indented JSON with sorted keys.
    pub fn to_json_pretty(&self) -> Result<String> {
        let v = serde_json::to_value(self).map_err(json_err)?;
        serde_json::to_string_pretty(&v).map_err(json_err)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(json_err)
    }
}

pub(crate) fn json_err(e: serde_json::Error) -> Error {
    Error::Parse { field: "json".into(), message: e.to_string() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_through_json() {
        for v in [[1, 1, 1, 3, 1, 6, 0], [1, 1, 0, 0, 0, 0, 1], [1, 2, 3, 1, 1, 2, 0], [1, 1, 1, 3, 0, 0, 0]] {
            let r = audit(&TrapParams::from_ints(v), false);
            let s = r.to_json().unwrap();
            assert_eq!(AuditReport::from_json(&s).unwrap(), r);
        }
    }

    #[test]
    fn keys_are_sorted() {
        let s = audit(&TrapParams::from_ints([1, 1, 1, 3, 1, 6, 0]), false).to_json().unwrap();
        let i = |k: &str| s.find(&format!("\"{k}\"")).unwrap();
        assert!(i("certificate") < i("confluent_heun") && i("confluent_heun") < i("derived") && i("verdict") < i("version"));
    }

    #[test]
    fn numeric_check_agrees_on_fixture() {
        let r = audit(&TrapParams::from_ints([1, 2, 3, 1, 1, 2, 0]), true);
        assert_eq!(r.ve2.len(), 2);
        for p in &r.ve2 {
            assert!(p.numeric.as_ref().unwrap().agree, "{:?}", p.numeric);
        }
    }
}
