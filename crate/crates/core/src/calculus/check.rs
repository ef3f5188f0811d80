use std::collections::{BTreeMap, BTreeSet};

use crate::substitution::{alpha_congruent, substitute_var, syntactic_reference};
use crate::syntax::{Formula, Prop, Var};

use super::{derive_base, Derivation, DerivationStep, ReasonCode, Rejection, Rule, Verdict};

type Check = Result<(), Rejection>;

/// Verifies every step in order and reports the first failure.
pub fn check_derivation(d: &Derivation) -> Verdict {
    if d.steps.is_empty() {
        return Verdict::Rejected(Rejection {
            step: 0,
            reason: ReasonCode::BadPremiseRef,
            message: "derivation has no steps".into(),
        });
    }
    let mut seen: BTreeMap<u32, &DerivationStep> = BTreeMap::new();
    let mut last_id = 0;
    for step in &d.steps {
        if let Err(r) = check_step(step, last_id, &seen) {
            return Verdict::Rejected(r);
        }
        last_id = step.id;
        seen.insert(step.id, step);
    }
    Verdict::Accepted
}

struct Ctx<'a> {
    step: &'a DerivationStep,
    premises: Vec<&'a DerivationStep>,
}

impl Ctx<'_> {
    fn fail(&self, reason: ReasonCode, message: impl Into<String>) -> Rejection {
        Rejection { step: self.step.id, reason, message: message.into() }
    }

    fn require(&self, ok: bool, reason: ReasonCode, message: impl FnOnce() -> String) -> Check {
        if ok {
            Ok(())
        } else {
            Err(self.fail(reason, message()))
        }
    }

    fn concl(&self) -> &Formula {
        &self.step.sequent.concl
    }

    fn ctx(&self) -> &BTreeSet<Formula> {
        &self.step.sequent.ctx
    }

    fn premise(&self, i: usize) -> &DerivationStep {
        self.premises[i]
    }

    fn same_ctx_as_premises(&self) -> Check {
        for p in &self.premises {
            self.require(p.sequent.ctx == *self.ctx(), ReasonCode::ContextMismatch, || {
                format!("context differs from that of premise step {}", p.id)
            })?;
        }
        Ok(())
    }

    fn same_concl_as_premises(&self) -> Check {
        for p in &self.premises {
            self.require(p.sequent.concl == *self.concl(), ReasonCode::SideCondition, || {
                format!("conclusion differs from that of premise step {}", p.id)
            })?;
        }
        Ok(())
    }

    fn formula_param(&self, key: &str) -> &Formula {
        &self.step.params[key]
    }

    fn var_param(&self, key: &str) -> Result<Var, Rejection> {
        match self.formula_param(key) {
            Formula::Var(v) => Ok(*v),
            other => Err(self.fail(ReasonCode::MalformedParams, format!("param.{key} must be a variable, got `{other}`"))),
        }
    }

    fn premise_concl(&self, i: usize) -> &Formula {
        &self.premise(i).sequent.concl
    }
}

fn check_step<'a>(step: &'a DerivationStep, last_id: u32, seen: &BTreeMap<u32, &'a DerivationStep>) -> Check {
    let reject = |reason, message: String| Rejection { step: step.id, reason, message };

    if step.id == 0 || step.id <= last_id {
        return Err(reject(
            ReasonCode::BadPremiseRef,
            format!("step id {} does not increase on the previous id {last_id}", step.id),
        ));
    }
    let Some(arity) = step.rule.premise_count() else {
        return Err(reject(ReasonCode::UnknownRule, format!("unknown rule `{}`", step.rule)));
    };

    let expected: BTreeSet<&str> = step.rule.param_keys().iter().copied().collect();
    let given: BTreeSet<&str> = step.params.keys().map(String::as_str).collect();
    if expected != given {
        let missing: Vec<_> = expected.difference(&given).collect();
        let extra: Vec<_> = given.difference(&expected).collect();
        return Err(reject(
            ReasonCode::MalformedParams,
            format!("{} expects params {:?}; missing {missing:?}, unexpected {extra:?}", step.rule, expected),
        ));
    }

    if step.premises.len() != arity {
        return Err(reject(
            ReasonCode::BadPremiseRef,
            format!("{} takes {arity} premise(s), got {}", step.rule, step.premises.len()),
        ));
    }
    let mut premises = Vec::with_capacity(arity);
    for id in &step.premises {
        match seen.get(id) {
            Some(p) => premises.push(*p),
            None => return Err(reject(ReasonCode::BadPremiseRef, format!("premise {id} is not an earlier step"))),
        }
    }

    let c = Ctx { step, premises };
    match &step.rule {
        Rule::R1 => c.require(c.ctx().contains(c.concl()), ReasonCode::SideCondition, || {
            "conclusion is not a member of the context".into()
        }),
        Rule::R2 => {
            c.same_concl_as_premises()?;
            c.require(c.premise(0).sequent.ctx.is_subset(c.ctx()), ReasonCode::ContextMismatch, || {
                "premise context is not a subset of the context".into()
            })
        }
        Rule::R3 => {
            c.same_ctx_as_premises()?;
            let phi = c.premise_concl(0);
            c.require(*c.premise_concl(1) == Formula::falsity(phi.clone()), ReasonCode::SideCondition, || {
                format!("second premise must conclude `{}`", Formula::falsity(phi.clone()))
            })
        }
        Rule::R4 => check_r4(&c),
        Rule::R5 | Rule::R6 => {
            c.same_ctx_as_premises()?;
            let phi = c.premise_concl(0);
            let ok = match (c.concl(), &step.rule) {
                (Formula::Or(a, _), Rule::R5) => **a == *phi,
                (Formula::Or(_, b), Rule::R6) => **b == *phi,
                _ => false,
            };
            let side = if matches!(step.rule, Rule::R5) { "left" } else { "right" };
            c.require(ok, ReasonCode::SideCondition, || format!("conclusion must be a disjunction with `{phi}` on the {side}"))
        }
        Rule::R7 => check_r7(&c),
        Rule::R8 => check_r8(&c),
        Rule::R9 => check_r9(&c),
        Rule::R10 => check_r10(&c),
        Rule::R11 => {
            c.same_ctx_as_premises()?;
            let Formula::Ident(a, b) = c.premise_concl(0) else {
                return Err(c.fail(ReasonCode::SideCondition, "premise must conclude an identity"));
            };
            let expected = Formula::implies((**a).clone(), (**b).clone());
            c.require(*c.concl() == expected, ReasonCode::SideCondition, || format!("conclusion must be `{expected}`"))
        }
        Rule::R12 => {
            let Formula::Ident(a, b) = c.concl() else {
                return Err(c.fail(ReasonCode::SideCondition, "conclusion must be an identity"));
            };
            c.require(alpha_congruent(a, b), ReasonCode::SideCondition, || format!("`{a}` and `{b}` are not alpha-congruent"))
        }
        Rule::R13 => {
            let Formula::Refers(a, b) = c.concl() else {
                return Err(c.fail(ReasonCode::SideCondition, "conclusion must be a reference formula"));
            };
            c.require(syntactic_reference(a, b), ReasonCode::SideCondition, || format!("`{b}` does not syntactically refer to `{a}`"))
        }
        Rule::R14 => {
            c.same_ctx_as_premises()?;
            match (c.premise_concl(0), c.premise_concl(1), c.concl()) {
                (Formula::Refers(a, b1), Formula::Refers(b2, d), Formula::Refers(a2, d2)) => {
                    c.require(b1 == b2, ReasonCode::SideCondition, || format!("middle terms `{b1}` and `{b2}` differ"))?;
                    c.require(a == a2 && d == d2, ReasonCode::SideCondition, || format!("conclusion must be `{a} < {d}`"))
                }
                _ => Err(c.fail(ReasonCode::SideCondition, "premises and conclusion must be reference formulas")),
            }
        }
        Rule::R15 => {
            c.same_ctx_as_premises()?;
            let expected = Formula::truth(c.premise_concl(0).clone());
            c.require(*c.concl() == expected, ReasonCode::SideCondition, || format!("conclusion must be `{expected}`"))
        }
        Rule::R16 => {
            c.same_ctx_as_premises()?;
            let expected = Formula::truth(c.concl().clone());
            c.require(*c.premise_concl(0) == expected, ReasonCode::SideCondition, || format!("premise must conclude `{expected}`"))
        }
        Rule::R17 => {
            c.same_ctx_as_premises()?;
            let Formula::False(inner) = c.concl() else {
                return Err(c.fail(ReasonCode::SideCondition, "conclusion must have the form `a :false`"));
            };
            let a = param_of(&c, inner)?;
            let expected = Formula::param(Prop::not(a.clone()));
            c.require(*c.premise_concl(0) == expected, ReasonCode::SideCondition, || format!("premise must conclude `{expected}`"))
        }
        Rule::R18 => {
            c.same_ctx_as_premises()?;
            let Formula::False(inner) = c.premise_concl(0) else {
                return Err(c.fail(ReasonCode::SideCondition, "premise must conclude `a :false`"));
            };
            let a = param_of(&c, inner)?;
            let expected = Formula::param(Prop::not(a.clone()));
            c.require(*c.concl() == expected, ReasonCode::SideCondition, || format!("conclusion must be `{expected}`"))
        }
        Rule::RK => {
            let a = param_of(&c, c.concl())?;
            c.require(derive_base(c.ctx(), a), ReasonCode::BaseOracleRefuted, || {
                format!("the parameter part of the context does not classically entail `{a}`")
            })
        }
        Rule::Unknown(_) => unreachable!("rejected above"),
    }
}

fn param_of<'a>(c: &Ctx<'_>, f: &'a Formula) -> Result<&'a Prop, Rejection> {
    f.as_param().ok_or_else(|| c.fail(ReasonCode::NotParamFormula, format!("`{f}` is not a parameter formula")))
}

fn with(delta: &BTreeSet<Formula>, extra: &Formula) -> BTreeSet<Formula> {
    let mut s = delta.clone();
    s.insert(extra.clone());
    s
}

fn without(ctx: &BTreeSet<Formula>, f: &Formula) -> BTreeSet<Formula> {
    let mut s = ctx.clone();
    s.remove(f);
    s
}

fn check_r4(c: &Ctx<'_>) -> Check {
    c.same_concl_as_premises()?;
    let delta = c.ctx();
    let (left, right) = (&c.premise(0).sequent.ctx, &c.premise(1).sequent.ctx);
    let found = left
        .iter()
        .any(|phi| *left == with(delta, phi) && *right == with(delta, &Formula::falsity(phi.clone())));
    c.require(found, ReasonCode::ContextMismatch, || {
        "premise contexts must extend the context by some `φ` and `φ :false` respectively".into()
    })
}

fn check_r7(c: &Ctx<'_>) -> Check {
    c.same_concl_as_premises()?;
    let (left, right) = (&c.premise(0).sequent.ctx, &c.premise(1).sequent.ctx);
    let found = c.ctx().iter().any(|d| {
        let Formula::Or(a, b) = d else { return false };
        let reduced = without(c.ctx(), d);
        let fits = |delta: &BTreeSet<Formula>| *left == with(delta, a) && *right == with(delta, b);
        fits(&reduced) || fits(c.ctx())
    });
    c.require(found, ReasonCode::ContextMismatch, || {
        "no disjunction `φ1 \\/ φ2` in the context matches the premise contexts".into()
    })
}

/// `x ∈ fvar(φ)` and `z ∉ fvar(φ) \ {x}`.
fn quantifier_conditions(c: &Ctx<'_>, template: &Formula, x: Var, z: Var) -> Check {
    let fv = template.free_vars();
    c.require(fv.contains(&x), ReasonCode::SideCondition, || format!("{x} is not free in the template `{template}`"))?;
    c.require(z == x || !fv.contains(&z), ReasonCode::SideCondition, || {
        format!("{z} is free in the template `{template}` and differs from {x}")
    })
}

fn check_r8(c: &Ctx<'_>) -> Check {
    let (x, z) = (c.var_param("x")?, c.var_param("z")?);
    let template = c.formula_param("template");
    let witness = c.formula_param("witness");
    c.same_ctx_as_premises()?;
    quantifier_conditions(c, template, x, z)?;

    let instance = substitute_var(template, x, witness);
    c.require(*c.premise_concl(0) == instance, ReasonCode::SideCondition, || {
        format!("premise must conclude `{instance}`")
    })?;
    let generalized = Formula::exists(z, substitute_var(template, x, &Formula::Var(z)));
    c.require(*c.concl() == generalized, ReasonCode::SideCondition, || format!("conclusion must be `{generalized}`"))
}

fn check_r9(c: &Ctx<'_>) -> Check {
    let (x, y, z) = (c.var_param("x")?, c.var_param("y")?, c.var_param("z")?);
    let template = c.formula_param("template");
    c.same_concl_as_premises()?;
    quantifier_conditions(c, template, x, z)?;

    let hypothesis = Formula::exists(z, substitute_var(template, x, &Formula::Var(z)));
    let instance = substitute_var(template, x, &Formula::Var(y));
    if !c.ctx().contains(&hypothesis) {
        return Err(c.fail(ReasonCode::ContextMismatch, format!("context must contain `{hypothesis}`")));
    }
    // Δ is the context minus the hypothesis, or the whole context when the
    // hypothesis also belongs to Δ.
    let reduced = without(c.ctx(), &hypothesis);
    let premise_ctx = &c.premise(0).sequent.ctx;
    let deltas: Vec<&BTreeSet<Formula>> =
        [&reduced, c.ctx()].into_iter().filter(|d| *premise_ctx == with(d, &instance)).collect();
    if deltas.is_empty() {
        return Err(c.fail(
            ReasonCode::ContextMismatch,
            format!("premise context must be Δ ∪ {{{instance}}} where the context is Δ ∪ {{{hypothesis}}}"),
        ));
    }

    let mut outside: BTreeSet<Var> = Formula::exists(x, template.clone()).free_vars();
    outside.extend(c.concl().free_vars());
    let eigen_ok = |delta: &BTreeSet<Formula>| !outside.contains(&y) && delta.iter().all(|f| !f.has_free_var(y));
    c.require(deltas.iter().any(|d| eigen_ok(d)), ReasonCode::EigenvariableViolation, || {
        format!("eigenvariable {y} occurs free in Δ, `ex {x} . {template}` or `{}`", c.concl())
    })
}

fn check_r10(c: &Ctx<'_>) -> Check {
    let x = c.var_param("x")?;
    let template = c.formula_param("template");
    c.same_ctx_as_premises()?;
    let Formula::Ident(psi, psi2) = c.premise_concl(0) else {
        return Err(c.fail(ReasonCode::SideCondition, "premise must conclude an identity"));
    };
    let expected = Formula::ident(substitute_var(template, x, psi), substitute_var(template, x, psi2));
    c.require(*c.concl() == expected, ReasonCode::SideCondition, || format!("conclusion must be `{expected}`"))
}
