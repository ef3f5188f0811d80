//! Checkers for the model conditions. Each returns the list of violations
//! found; an empty list means the instance passed.

use std::fmt;

use crate::manyvalued::{eval_param, Flavor, TruthValue};
use crate::substitution::{syntactic_reference, Substitution};
use crate::syntax::{Formula, Prop};

use super::{eval_gamma, verify_substitution_property, Assignment, ExtensionalModel, ModelError, ModelKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    /// `|Γ(φ:true)| = |Γ(φ)|`
    Truth,
    /// `Γ(φ:false) ∈ TRUE ⇔ Γ(φ) ∈ FALSE`
    FalsityTrue,
    /// `Γ(φ:false) ∈ FALSE ⇔ Γ(φ) ∈ TRUE`
    FalsityFalse,
    Join,
    Meet,
    /// `Γ(φ≡ψ) ∈ FALSE\TRUE ⇔ Γ(φ) ≠ Γ(ψ)`
    Identity,
    /// `Γ(φ<ψ) ∈ FALSE\TRUE ⇔ not Γ(φ) <^M Γ(ψ)`
    Reference,
    Exists,
    Forall,
    Bridge,
    Extension,
    Coincidence,
    Substitution,
    ReferenceProperty,
    /// K3 flavor iff `TRUE ∩ FALSE = ∅`
    Gapless,
    /// P3 flavor iff `M = TRUE ∪ FALSE`
    Exhaustive,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::Truth => "truth",
            Condition::FalsityTrue => "falsity-true",
            Condition::FalsityFalse => "falsity-false",
            Condition::Join => "join",
            Condition::Meet => "meet",
            Condition::Identity => "identity",
            Condition::Reference => "reference",
            Condition::Exists => "exists",
            Condition::Forall => "forall",
            Condition::Bridge => "bridge",
            Condition::Extension => "EP",
            Condition::Coincidence => "CP",
            Condition::Substitution => "SP",
            Condition::ReferenceProperty => "RP",
            Condition::Gapless => "gapless",
            Condition::Exhaustive => "exhaustive",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    pub formula: Formula,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated at `{}`: {}", self.condition, self.formula, self.detail)
    }
}

struct Collector<'a> {
    m: &'a ExtensionalModel,
    out: Vec<Violation>,
}

impl Collector<'_> {
    fn require(&mut self, ok: bool, condition: Condition, formula: &Formula, detail: impl FnOnce() -> String) {
        if !ok {
            self.out.push(Violation { condition, formula: formula.clone(), detail: detail() });
        }
    }

    fn abs(&self, t: TruthValue) -> TruthValue {
        self.m.classify(t)
    }
}

/// Checks every truth condition that applies at each subformula of `f`.
pub fn check_truth_conditions(
    m: &ExtensionalModel,
    f: &Formula,
    gamma: &Assignment,
) -> Result<Vec<Violation>, ModelError> {
    let mut c = Collector { m, out: Vec::new() };
    for g in f.subformulas() {
        check_node(&mut c, g, gamma)?;
    }
    Ok(c.out)
}

fn check_node(c: &mut Collector<'_>, f: &Formula, gamma: &Assignment) -> Result<(), ModelError> {
    let m = c.m;
    let v = eval_gamma(m, f, gamma)?;
    match f {
        Formula::True(a) => {
            let va = eval_gamma(m, a, gamma)?;
            c.require(c.abs(v) == c.abs(va), Condition::Truth, f, || format!("|{v}| vs |{va}|"));
        }
        Formula::False(a) => {
            let va = eval_gamma(m, a, gamma)?;
            c.require(m.is_true(v) == m.is_false(va), Condition::FalsityTrue, f, || format!("{v} vs {va}"));
            c.require(m.is_false(v) == m.is_true(va), Condition::FalsityFalse, f, || format!("{v} vs {va}"));
        }
        Formula::Or(a, b) | Formula::And(a, b) => {
            let (va, vb) = (c.abs(eval_gamma(m, a, gamma)?), c.abs(eval_gamma(m, b, gamma)?));
            let (cond, expected) = match f {
                Formula::Or(..) => (Condition::Join, va.join(vb)),
                _ => (Condition::Meet, va.meet(vb)),
            };
            c.require(c.abs(v) == expected, cond, f, || format!("got {v}, expected {expected}"));
        }
        Formula::Ident(a, b) => {
            let differ = eval_gamma(m, a, gamma)? != eval_gamma(m, b, gamma)?;
            let strictly_false = m.is_false(v) && !m.is_true(v);
            c.require(strictly_false == differ, Condition::Identity, f, || format!("value {v}, differ={differ}"));
        }
        Formula::Refers(a, b) => {
            let related = m.refers(eval_gamma(m, a, gamma)?, eval_gamma(m, b, gamma)?);
            let strictly_false = m.is_false(v) && !m.is_true(v);
            c.require(strictly_false == !related, Condition::Reference, f, || format!("value {v}"));
        }
        Formula::Exists(x, body) | Formula::Forall(x, body) => {
            let existential = matches!(f, Formula::Exists(..));
            let mut acc: Option<TruthValue> = None;
            for &e in m.universe() {
                let r = c.abs(eval_gamma(m, body, &gamma.clone().with(*x, e))?);
                acc = Some(match acc {
                    None => r,
                    Some(a) if existential => a.join(r),
                    Some(a) => a.meet(r),
                });
            }
            let expected = acc.expect("universe is nonempty");
            let cond = if existential { Condition::Exists } else { Condition::Forall };
            c.require(c.abs(v) == expected, cond, f, || format!("got {v}, expected {expected}"));
        }
        Formula::Param(a) => {
            let in_t = eval_param(m.theory(), a).is_designated();
            let neg_in_t = eval_param(m.theory(), &Prop::not(a.clone())).is_designated();
            c.require(m.is_true(v) == in_t, Condition::Bridge, f, || format!("Γ = {v}, a ∈ T is {in_t}"));
            c.require(m.is_false(v) == neg_in_t, Condition::Bridge, f, || format!("Γ = {v}, ∼a ∈ T is {neg_in_t}"));
        }
        Formula::Var(_) | Formula::Const(_) => {}
    }
    Ok(())
}

/// Checks EP, CP, SP and RP at one instance, plus the flavor laws of the
/// model. `other` is an arbitrary second assignment: CP compares `gamma`
/// against `other` overridden to agree with `gamma` on `f`'s free variables.
/// SP is skipped when `sigma` is not a substitution on variables.
pub fn check_structure_conditions(
    m: &ExtensionalModel,
    f: &Formula,
    g: &Formula,
    gamma: &Assignment,
    other: &Assignment,
    sigma: &Substitution,
) -> Result<Vec<Violation>, ModelError> {
    let mut c = Collector { m, out: Vec::new() };

    for x in f.free_vars() {
        let xf = Formula::Var(x);
        let got = eval_gamma(m, &xf, gamma)?;
        c.require(got == gamma.get(x), Condition::Extension, &xf, || format!("Γ = {got}, γ = {}", gamma.get(x)));
    }

    let agreeing = f.free_vars().into_iter().fold(other.clone(), |a, x| a.with(x, gamma.get(x)));
    let (v1, v2) = (eval_gamma(m, f, gamma)?, eval_gamma(m, f, &agreeing)?);
    c.require(v1 == v2, Condition::Coincidence, f, || format!("{v1} under {gamma}, {v2} under {agreeing}"));

    if sigma.is_variable_only() {
        let ok = verify_substitution_property(m, f, sigma, gamma)?;
        c.require(ok, Condition::Substitution, f, || format!("σ = {sigma}"));
    }

    if syntactic_reference(f, g) {
        let (vf, vg) = (eval_gamma(m, f, gamma)?, eval_gamma(m, g, gamma)?);
        c.require(m.refers(vf, vg), Condition::ReferenceProperty, f, || format!("not {vf} < {vg} in {g}"));
    }

    let universe = m.universe();
    let gapless = universe.iter().all(|t| !(m.is_true(*t) && m.is_false(*t)));
    let exhaustive = universe.iter().all(|t| m.is_true(*t) || m.is_false(*t));
    let theory_k3_ok = m.theory().explicit_values().all(|(_, t)| t != TruthValue::Both) && m.theory().fill() != TruthValue::Both;
    let theory_p3_ok = m.theory().explicit_values().all(|(_, t)| t != TruthValue::Neither) && m.theory().fill() != TruthValue::Neither;
    if let ModelKind::Flavored(fl) = m.kind() {
        let k3 = matches!(fl, Flavor::K3 | Flavor::Classical);
        let p3 = matches!(fl, Flavor::P3 | Flavor::Classical);
        c.require(gapless == k3, Condition::Gapless, f, || format!("flavor {fl}, TRUE ∩ FALSE empty is {gapless}"));
        c.require(exhaustive == p3, Condition::Exhaustive, f, || format!("flavor {fl}, M = TRUE ∪ FALSE is {exhaustive}"));
        if k3 {
            c.require(theory_k3_ok, Condition::Gapless, f, || "theory has a glutted atom".into());
        }
        if p3 {
            c.require(theory_p3_ok, Condition::Exhaustive, f, || "theory has a gapped atom".into());
        }
    }
    Ok(c.out)
}
