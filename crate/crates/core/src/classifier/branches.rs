use num_bigint::BigInt;

use super::rules::{
    case_b_test, confluent_heun_check, heun_values, tha_check, tha_values, whittaker_check, whittaker_values,
    ThaOutcome,
};
use super::screen::vmax_screen;
use super::{values, Step, Trail, Verdict};
use crate::exactnum::{berger_independent, denominator_n, sqrt_classify, Rational, SqrtClass};
use crate::ve::{
    confluent_heun_reduce, derive, lame_data, lame_residue, ve2_data, whittaker_reduce, TrapParams, WhittakerData,
};

const NON_INT: Step = Step::Conclude(Verdict::NonIntegrableMeromorphic);

/// `CandidateIntegrable` with the quartic-pattern conditions appended.
fn candidate(params: &TrapParams, mut conditions: Vec<String>) -> Verdict {
    let screen = vmax_screen(params);
    if screen.is_empty() {
        conditions.push("V_max(r,z) matches no integrable quartic pattern".into());
    }
    conditions.extend(screen.iter().map(|m| m.describe()));
    Verdict::CandidateIntegrable(conditions)
}

fn undecided(reason: &str) -> Step {
    Step::Conclude(Verdict::Undecided(reason.into()))
}

fn s(r: &Rational) -> String {
    r.to_string()
}

pub(crate) fn route(params: &TrapParams, t: &mut Trail) -> Verdict {
    let TrapParams { a, b, c, d, e, f, .. } = params;
    let sep = Step::Conclude(Verdict::IntegrableSeparable);
    let vals = values([("F", s(f)), ("D", s(d))]);
    if let Some(v) = t.gate(
        "separable",
        "the variables in the considered system are separated",
        vals,
        f.is_zero() && d.is_zero(),
        sep,
        Step::Continue,
    ) {
        return v;
    }
    let explicit = a.is_zero() && b.is_zero() && f.is_zero() && e.is_zero();
    let vals = values([("A", s(a)), ("B", s(b)), ("E", s(e)), ("F", s(f))]);
    let cite = "which is integrable (the solutions of this system can be written explicitly)";
    if let Some(v) = t.gate("explicit", cite, vals, explicit, Step::Conclude(Verdict::IntegrableExplicit), Step::Continue)
    {
        return v;
    }
    let vals = || values([("C", s(c)), ("E", s(e)), ("F", s(f))]);
    let lame = e.is_zero() && f.is_zero();
    t.note("branch_lame", "E=F=0", vals(), lame);
    if lame {
        return lame_in(params, t);
    }
    let whit = e.is_zero() && c.is_zero();
    t.note("branch_whittaker", "C=0 and E=0", vals(), whit);
    if whit {
        return whittaker_in(params, t);
    }
    let e0 = e.is_zero();
    t.note("branch_e_zero", "E=0 and F!=0", vals(), e0);
    if e0 {
        return e_zero_in(params, t);
    }
    let ab0 = a.is_zero() && b.is_zero();
    t.note("branch_a_b_zero", "A=B=0", values([("A", s(a)), ("B", s(b))]), ab0);
    if ab0 {
        return a_b_zero_in(params, t);
    }
    if a.is_zero() {
        if let Some(v) = a_zero_in(params, t) {
            return v;
        }
    }
    let vals = values([("A", s(a)), ("B", s(b))]);
    let cite = "B=0 and A!=0 listed among the degenerate cases";
    if let Some(v) = t.gate(
        "b_zero",
        cite,
        vals,
        b.is_zero(),
        undecided("B=0, A≠0 unresolved in source analysis"),
        Step::Continue,
    ) {
        return v;
    }
    let heun = c * c == Rational::from(4) * b * e;
    t.note("branch_heun", "C^2=4BE", values([("C^2", s(&(c * c))), ("4BE", s(&(Rational::from(4) * b * e)))]), heun);
    if heun {
        return heun_in(params, t);
    }
    generic_in(params, t)
}

fn lame_in(params: &TrapParams, t: &mut Trail) -> Verdict {
    let TrapParams { b, c, .. } = params;
    let ok = !b.is_zero() && !c.is_zero();
    let vals = values([("B", s(b)), ("C", s(c))]);
    let stop = undecided("E=F=0 with B=0 or C=0 has no Lame reduction");
    if let Some(v) = t.gate("lame_reducible", "z = -2(wp + B/6)/C", vals, ok, Step::Continue, stop) {
        return v;
    }
    let data = lame_data(params, &params.h).expect("branch checked");
    let vals = values([
        ("g2", s(&data.g2)),
        ("g3", s(&data.g3)),
        ("g2^3-27g3^2", s(&data.discriminant)),
        ("h", s(&data.h)),
        ("4D/C", s(&data.big_n)),
    ]);
    t.note("lame_curve", "elliptic curve of the particular solution is non-degenerate", vals, !data.discriminant.is_zero());
    let outcome = tha_check(&data);
    let n3 = outcome == ThaOutcome::Condition1 { n: 3 };
    let mut vals = tha_values(&data);
    vals.insert("outcome".into(), outcome.label());
    let open = candidate(params, vec![format!("Lame-type necessary condition {} holds", outcome.label())]);
    let on_true = if n3 { Step::Continue } else { Step::Conclude(open) };
    let holds = outcome != ThaOutcome::None;
    if let Some(v) = t.gate("lame_tha", "a necessary conditions for integrability is that", vals, holds, on_true, NON_INT) {
        return v;
    }
    let vals = values([("A", s(&params.a)), ("B", s(&params.b))]);
    t.note("lame_printed_quartic", "not meromorphic integrable if A≠B", vals, params.a != params.b);
    let cite = "second variation for the case D=3C";
    match lame_residue(params) {
        Ok(res) => {
            let vals = values([("residue D xi11 xi12 xi11 at t=0", res.to_string())]);
            let open = candidate(params, vec!["D=3C and the second-variation residue vanishes".into()]);
            t.decide("lame_residue", cite, vals, !res.is_zero(), Verdict::NonIntegrableMeromorphic, open)
        }
        Err(err) => {
            let vals = values([("error", err.tag().to_string())]);
            let reason = format!("Lame residue unavailable: {}", err.tag());
            t.decide("lame_residue", cite, vals, false, Verdict::NonIntegrableMeromorphic, Verdict::Undecided(reason))
        }
    }
}

/// Verdict of the Lame branch `E = F = 0` alone.
pub fn lame_branch(params: &TrapParams) -> Verdict {
    if !params.e.is_zero() || !params.f.is_zero() {
        return Verdict::Undecided("not in the E=F=0 branch".into());
    }
    let mut t = Trail::default();
    lame_in(params, &mut t)
}

fn whittaker_in(params: &TrapParams, t: &mut Trail) -> Verdict {
    let vals = values([("B", s(&params.b))]);
    let stop = undecided("C=E=0 with B=0 has no Whittaker reduction");
    if let Some(v) = t.gate("whittaker_reducible", "x = (1/2) sqrt(B/F) T", vals, !params.b.is_zero(), Step::Continue, stop)
    {
        return v;
    }
    let data = whittaker_reduce(params).expect("branch checked");
    let printed = WhittakerData { mu_squared: data.mu_squared_printed.clone(), ..data.clone() };
    let printed_v = whittaker_check(&printed);
    let vals = values([("mu^2", s(&printed.mu_squared)), ("verdict", printed_v.tag().to_string())]);
    t.note("whittaker_printed_mu", "mu = +-sqrt(1/2 + A/B)", vals, printed_v == Verdict::NonIntegrableMeromorphic);
    let v = whittaker_check(&data);
    let holds = v == Verdict::NonIntegrableMeromorphic;
    let open = match v {
        Verdict::CandidateIntegrable(c) => candidate(params, c),
        other => other,
    };
    t.decide("whittaker_signs", "±κ±μ∉(ℤ+1/2)", whittaker_values(&data), holds, Verdict::NonIntegrableMeromorphic, open)
}

fn e_zero_in(params: &TrapParams, t: &mut Trail) -> Verdict {
    let TrapParams { c, f, .. } = params;
    let two_f = Rational::from(2) * f;
    let sixteen_f = Rational::from(16) * f;
    let three_c = Rational::from(3) * c;
    let holds = &two_f != c || sixteen_f != three_c;
    let vals = values([("2F", s(&two_f)), ("C", s(c)), ("16F", s(&sixteen_f)), ("3C", s(&three_c))]);
    let open = candidate(params, vec!["2F=C and 16F=3C".into()]);
    t.decide("e_zero", "not meromorphic integrable if 2F≠C or 16F≠3C", vals, holds, Verdict::NonIntegrableMeromorphic, open)
}

fn n_of(r: &Rational) -> BigInt {
    denominator_n(r)
}

fn a_b_zero_in(params: &TrapParams, t: &mut Trail) -> Verdict {
    let TrapParams { c, d, e, f, .. } = params;
    let vals = values([("C", s(c))]);
    let stop = undecided("A=B=0 with C=0 leaves P undefined");
    if let Some(v) = t.gate("a_b_zero_p_defined", "D=(P^2-1)/4 C", vals, !c.is_zero(), Step::Continue, stop) {
        return v;
    }
    let four = Rational::from(4);
    let big_p_sq = Rational::one() + &four * d / c;
    let p_sq = Rational::one() + &four * f / e;
    let (big_p, p) = (sqrt_classify(&big_p_sq), sqrt_classify(&p_sq));
    let vals = values([("P", big_p.to_string()), ("p", p.to_string())]);
    let rational = big_p.is_rational() && p.is_rational();
    let cite = "at least one of P or p is not a rational number";
    if let Some(v) = t.gate("a_b_zero_a", cite, vals, !rational, Step::Conclude(Verdict::NoAnalyticIntegral), Step::Continue)
    {
        return v;
    }
    let (bp, sp) = (big_p.rational().expect("rational").clone(), p.rational().expect("rational").clone());
    let sum_int = (&bp + &sp).is_integer() || (&bp - &sp).is_integer();
    let (nb, np) = (n_of(&bp), n_of(&sp));
    let vals = || {
        values([
            ("P+p", s(&(&bp + &sp))),
            ("P-p", s(&(&bp - &sp))),
            ("N(P)", nb.to_string()),
            ("N(p)", np.to_string()),
        ])
    };
    if let Some(v) = t.gate("a_b_zero_b1", "P±p∉ℤ", vals(), !sum_int, NON_INT, Step::Continue) {
        return v;
    }
    let (four_i, five_i, three_i) = (BigInt::from(4), BigInt::from(5), BigInt::from(3));
    let b21 = nb >= four_i && np >= four_i;
    if let Some(v) = t.gate("a_b_zero_b21", "P±p∈ℤ and N(P)≥4 and N(p)≥4", vals(), b21, NON_INT, Step::Continue) {
        return v;
    }
    let b22 = nb == five_i && np == five_i;
    if let Some(v) = t.gate("a_b_zero_b22", "P±p∈ℤ and N(P)=5 and N(p)=5", vals(), b22, NON_INT, Step::Continue) {
        return v;
    }
    let poly = Rational::from(3) * &big_p_sq * &p_sq
        - &big_p_sq * &big_p_sq
        - Rational::from(6) * &p_sq
        - &big_p_sq
        + Rational::from(5);
    let b3 = nb <= three_i && np <= three_i && !e.is_zero() && !poly.is_zero();
    let mut vals = vals();
    vals.insert("3P^2p^2-P^4-6p^2-P^2+5".into(), s(&poly));
    let open = candidate(params, vec!["A=B=0 and none of the sub-cases b1, b21, b22, b3 holds".into()]);
    let cite = "P±p∈ℤ and N(P)≤3 and N(p)≤3 and E≠0 and 3P²p²−P⁴−6p²−P²+5≠0";
    t.decide("a_b_zero_b3", cite, vals, b3, Verdict::NonIntegrableMeromorphic, open)
}

fn a_zero_in(params: &TrapParams, t: &mut Trail) -> Option<Verdict> {
    let TrapParams { b, c, d, e, f, .. } = params;
    let lhs = Rational::from(2) * f * c;
    let rhs = d * e;
    let holds = !b.is_zero() && lhs != rhs;
    let vals = values([("B", s(b)), ("2FC", s(&lhs)), ("DE", s(&rhs))]);
    t.gate("a_zero", "When A=0 and B≠0 and 2FC≠DE", vals, holds, NON_INT, Step::Continue)
}

/// Verdict of whichever of the `A = B = 0`, `A = 0`, `E = 0` propositions
/// applies; `A = 0` with `2FC = DE` continues into the generic analysis.
pub fn homogeneous_checks(params: &TrapParams) -> Verdict {
    let mut t = Trail::default();
    let TrapParams { a, b, e, f, .. } = params;
    if a.is_zero() && b.is_zero() {
        a_b_zero_in(params, &mut t)
    } else if e.is_zero() && !f.is_zero() {
        e_zero_in(params, &mut t)
    } else if a.is_zero() && !b.is_zero() {
        a_zero_in(params, &mut t).unwrap_or_else(|| generic_in(params, &mut t))
    } else {
        Verdict::Undecided("no homogeneous proposition applies".into())
    }
}

fn heun_in(params: &TrapParams, t: &mut Trail) -> Verdict {
    let data = confluent_heun_reduce(params).expect("branch checked");
    let direct: Vec<String> = data.direct_exponent_differences.iter().map(|d| d.to_string()).collect();
    let vals = values([
        ("x=0", direct[0].clone()),
        ("x=1", direct[1].clone()),
        ("x=oo", direct[2].clone()),
    ]);
    t.note("heun_direct_exponents", "exponent differences of the substituted equation", vals, true);
    let v = confluent_heun_check(&data);
    let holds = v == Verdict::NonIntegrableMeromorphic;
    let open = match v {
        Verdict::CandidateIntegrable(c) => candidate(params, c),
        other => other,
    };
    t.decide("heun_signs", "±β±γ∉(ℤ_even∖{0})", heun_values(&data), holds, Verdict::NonIntegrableMeromorphic, open)
}

fn generic_in(params: &TrapParams, t: &mut Trail) -> Verdict {
    let dq = match derive(params) {
        Ok(dq) => dq,
        Err(err) => {
            let reason = format!("generic analysis unavailable: {}", err.tag());
            let vals = values([("error", format!("{err}"))]);
            return t.decide("generic_branch", "B≠0, E≠0, C²≠4BE", vals, false, Verdict::Undecided(reason.clone()), Verdict::Undecided(reason));
        }
    };
    let vals = values([("q", dq.q.to_string()), ("p", dq.p.to_string())]);
    let rational = dq.q.is_rational() && dq.p.is_rational();
    let cite = "q∉ℚ or p∉ℚ: no additional holomorphic first integral";
    if let Some(v) = t.gate("case_a", cite, vals, !rational, Step::Conclude(Verdict::NoAnalyticIntegral), Step::Continue) {
        return v;
    }
    let (SqrtClass::RationalValue(q), SqrtClass::RationalValue(p)) = (&dq.q, &dq.p) else {
        unreachable!("checked rational")
    };
    let two_q = Rational::from(2) * q;
    let vals = values([("theorem", "or".into()), ("proposition", "and".into()), ("used", "and".into())]);
    t.note("case_b_connective", "2q±p∉ℤ or/and N(2q)≥4, N(p)≥4", vals, true);
    let berger = berger_independent(&two_q, p);
    let vals = values([
        ("2q", s(&two_q)),
        ("p", s(p)),
        ("independent", berger.as_ref().map_or_else(|e| e.tag().to_string(), |b| b.to_string())),
    ]);
    t.note("berger", "1, cos(2πq), cos(πp) linearly independent over ℚ", vals, berger.unwrap_or(false));
    let case_b = case_b_test(q, p);
    let vals = values([
        ("2q+p", s(&(&two_q + p))),
        ("2q-p", s(&(&two_q - p))),
        ("N(2q)", n_of(&two_q).to_string()),
        ("N(p)", n_of(p).to_string()),
    ]);
    let cite = "when 2q±p∉ℤ and N(2q)≥4, N(p)≥4, and (N(2q), N(p))≠(5,5)";
    if let Some(v) = t.gate("case_b", cite, vals, case_b, NON_INT, Step::Continue) {
        return v;
    }
    let cite = "2q±p∈ℤ, or N(2q)≤3, N(p)≤3, or (N(2q), N(p))=(5,5)";
    t.note("abelian_candidate", cite, values([("q", s(q)), ("p", s(p))]), true);
    let TrapParams { c, d, .. } = params;
    let p2m1 = p * p - Rational::one();
    let ptest = !d.is_zero() && !c.is_zero() && !p2m1.is_zero();
    let vals = values([("D", s(d)), ("C", s(c)), ("p^2-1", s(&p2m1))]);
    t.note("case_c_parameters", "D≠0, C≠0, and p²−1≠0", vals, ptest);
    let cite = "second variational equations: nonzero residue at a branch point";
    match ve2_data(params) {
        Ok(data) => {
            let mut vals = values([("D!=0, C!=0, p^2!=1", ptest.to_string())]);
            for pt in &data.points {
                let comps: Vec<String> = pt.component_residues.iter().map(|r| r.to_string()).collect();
                vals.insert(format!("z{} = {}", pt.index, pt.point), format!("[{}]", comps.join(", ")));
            }
            let nonzero = data.any_nonzero();
            let mut conds = vec!["2q±p∈ℤ or small denominators".to_string()];
            if !ptest {
                conds.push("D=0, C=0 or p^2=1".into());
            }
            if !nonzero {
                conds.push("second variational residues vanish".into());
            }
            let open = candidate(params, conds);
            t.decide("ve2_residue", cite, vals, ptest && nonzero, Verdict::NonIntegrableMeromorphic, open)
        }
        Err(err) => {
            let vals = values([("error", err.tag().to_string())]);
            let reason = format!("second variational residues unavailable: {}", err.tag());
            t.decide("ve2_residue", cite, vals, false, Verdict::NonIntegrableMeromorphic, Verdict::Undecided(reason))
        }
    }
}
