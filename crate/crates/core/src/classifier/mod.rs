//! Decision tree over the trap parameters, producing a verdict together
//! with the ordered list of rule evaluations that led to it.

mod branches;
mod rules;
mod screen;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ve::TrapParams;

pub use branches::{homogeneous_checks, lame_branch};
pub use rules::{abelian_candidate, case_b_test, confluent_heun_check, tha_check, whittaker_check, ThaOutcome};
pub use screen::{vmax_screen, ScreenMatch};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "Integrable_Separable")]
    IntegrableSeparable,
    #[serde(rename = "Integrable_Explicit")]
    IntegrableExplicit,
    NoAnalyticIntegral,
    NonIntegrableMeromorphic,
    CandidateIntegrable(Vec<String>),
    Undecided(String),
}

impl Verdict {
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::IntegrableSeparable => "Integrable_Separable",
            Verdict::IntegrableExplicit => "Integrable_Explicit",
            Verdict::NoAnalyticIntegral => "NoAnalyticIntegral",
            Verdict::NonIntegrableMeromorphic => "NonIntegrableMeromorphic",
            Verdict::CandidateIntegrable(_) => "CandidateIntegrable",
            Verdict::Undecided(_) => "Undecided",
        }
    }

    pub fn necessary_conditions(&self) -> &[String] {
        match self {
            Verdict::CandidateIntegrable(c) => c,
            _ => &[],
        }
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            Verdict::Undecided(r) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Undecided(r) => write!(f, "Undecided({r})"),
            Verdict::CandidateIntegrable(c) if !c.is_empty() => {
                write!(f, "CandidateIntegrable({})", c.join("; "))
            }
            v => f.write_str(v.tag()),
        }
    }
}

/// What a finding does to the classification for a given outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Step {
    Continue,
    Conclude(Verdict),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub rule: String,
    pub cite: String,
    pub values: BTreeMap<String, String>,
    pub holds: bool,
    pub on_true: Step,
    pub on_false: Step,
}

impl Finding {
    pub fn step(&self) -> &Step {
        if self.holds {
            &self.on_true
        } else {
            &self.on_false
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub findings: Vec<Finding>,
}

impl Certificate {
    /// Walks the findings in order; the verdict is that of the first
    /// concluding step, which must also be the last finding.
    pub fn replay(&self) -> Result<Verdict> {
        for (i, f) in self.findings.iter().enumerate() {
            if let Step::Conclude(v) = f.step() {
                if i + 1 != self.findings.len() {
                    return Err(Error::PreconditionViolation(format!(
                        "certificate concludes at finding {i} of {}",
                        self.findings.len()
                    )));
                }
                return Ok(v.clone());
            }
        }
        Err(Error::PreconditionViolation("certificate has no concluding finding".into()))
    }

    pub fn rules(&self) -> Vec<&str> {
        self.findings.iter().map(|f| f.rule.as_str()).collect()
    }
}

/// Append-only builder used while classifying.
#[derive(Debug, Default)]
pub(crate) struct Trail {
    findings: Vec<Finding>,
}

pub(crate) fn values<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

impl Trail {
    /// Records a gate; returns the verdict if it concludes.
    pub(crate) fn gate(
        &mut self,
        rule: &str,
        cite: &str,
        values: BTreeMap<String, String>,
        holds: bool,
        on_true: Step,
        on_false: Step,
    ) -> Option<Verdict> {
        let f = Finding { rule: rule.into(), cite: cite.into(), values, holds, on_true, on_false };
        let out = match f.step() {
            Step::Conclude(v) => Some(v.clone()),
            Step::Continue => None,
        };
        self.findings.push(f);
        out
    }

    /// Records an evaluation that never decides.
    pub(crate) fn note(&mut self, rule: &str, cite: &str, values: BTreeMap<String, String>, holds: bool) {
        self.gate(rule, cite, values, holds, Step::Continue, Step::Continue);
    }

    /// Records a final evaluation whose outcome picks one of two verdicts.
    pub(crate) fn decide(
        &mut self,
        rule: &str,
        cite: &str,
        values: BTreeMap<String, String>,
        holds: bool,
        on_true: Verdict,
        on_false: Verdict,
    ) -> Verdict {
        self.gate(rule, cite, values, holds, Step::Conclude(on_true), Step::Conclude(on_false))
            .expect("decide always concludes")
    }

    pub(crate) fn finish(self) -> Certificate {
        Certificate { findings: self.findings }
    }
}

/// Classifies the parameters. Total: unresolved branches end in `Undecided`.
pub fn classify(params: &TrapParams) -> (Verdict, Certificate) {
    let mut trail = Trail::default();
    let verdict = branches::route(params, &mut trail);
    (verdict, trail.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn replay_rejects_trailing_findings() {
        let mut t = Trail::default();
        t.decide("x", "", BTreeMap::new(), true, Verdict::IntegrableExplicit, Verdict::NoAnalyticIntegral);
        t.note("y", "", BTreeMap::new(), true);
        assert!(t.finish().replay().is_err());
    }

    #[test]
    fn verdict_json_tags() {
        let s = serde_json::to_string(&Verdict::IntegrableSeparable).unwrap();
        assert_eq!(s, "\"Integrable_Separable\"");
        let v = Verdict::CandidateIntegrable(vec!["D=0".into()]);
        let back: Verdict = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        assert_eq!(back, v);
    }
}
