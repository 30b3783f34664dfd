use serde::Serialize;

use crate::exactnum::Rational;
use crate::ve::TrapParams;

/// A quartic pattern `(E, F, G)` of the top-degree homogeneous part that
/// admits integrability, with the conditions it imposes on the rest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScreenMatch {
    pub case: String,
    /// `"exact"` for the literal triple, `"ratio"` for `F/E` and `G/E`.
    pub convention: String,
    pub conditions: Vec<String>,
    /// Set when the pattern leaves a coefficient unconstrained.
    pub flagged: bool,
}

impl ScreenMatch {
    pub fn describe(&self) -> String {
        let flag = if self.flagged { ", G unconstrained" } else { "" };
        format!("{} [{}{}]: {}", self.case, self.convention, flag, self.conditions.join(", "))
    }
}

const RATIONAL_Q: &str = "sqrt(A/B) in Q";

fn conds(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn triple_cases() -> Vec<(&'static str, [Rational; 3])> {
    let r = Rational::new;
    vec![
        ("V3", [r(1, 4), r(1, 2), r(1, 4)]),
        ("V5(a)", [r(1, 4), r(3, 1), r(4, 1)]),
        ("V5(b)", [r(4, 1), r(3, 1), r(1, 4)]),
        ("V6(a)", [r(1, 4), r(3, 2), r(2, 1)]),
        ("V6(b)", [r(2, 1), r(3, 2), r(1, 4)]),
    ]
}

/// Matches `(E, F, G)` against the integrable quartic patterns, both as
/// literal triples and up to a common scale.
pub fn vmax_screen(params: &TrapParams) -> Vec<ScreenMatch> {
    let TrapParams { e, f, g, .. } = params;
    let mut out = Vec::new();
    let hit = |case: &str, convention: &str, c: &[&str], flagged: bool| ScreenMatch {
        case: case.into(),
        convention: convention.into(),
        conditions: conds(c),
        flagged,
    };
    if f.is_zero() && e.is_zero() {
        out.push(hit("V1(a)", "exact", &["negation of a Lame-type necessary condition"], false));
    }
    if f.is_zero() && g.is_zero() {
        out.push(hit("V1(b)", "exact", &[RATIONAL_Q, "D=0"], false));
    }
    if f.is_zero() && !e.is_zero() {
        let convention = if e.is_one() { "exact" } else { "ratio" };
        out.push(hit("V4", convention, &[RATIONAL_Q, "D=0"], true));
    }
    let full = [RATIONAL_Q, "C=0", "D=0"];
    for (case, [te, tf, tg]) in triple_cases() {
        if e == &te && f == &tf && g == &tg {
            out.push(hit(case, "exact", &full, false));
        } else if !e.is_zero() && f / e == &tf / &te && g / e == &tg / &te {
            out.push(hit(case, "ratio", &full, false));
        }
    }
    out
}
