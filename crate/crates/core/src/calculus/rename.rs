use thiserror::Error;

use crate::syntax::{Formula, Var};

use super::{Derivation, DerivationStep, Sequent};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{var} already occurs in step {step}; pick a variable that is fresh for the whole derivation")]
pub struct RenameError {
    pub var: Var,
    pub step: u32,
}

fn mentions(f: &Formula, x: Var) -> bool {
    f.vars().contains(&x)
}

/// `f[c := x]` by direct replacement. Because `x` is fresh no binder can
/// capture it, so this is alpha-congruent to the capture-avoiding
/// substitution while leaving bound names (and formulas without `c`)
/// untouched.
pub fn replace_constant(f: &Formula, c: &str, x: Var) -> Formula {
    let r = |g: &Formula| Box::new(replace_constant(g, c, x));
    match f {
        Formula::Const(name) if name == c => Formula::Var(x),
        Formula::Var(_) | Formula::Const(_) | Formula::Param(_) => f.clone(),
        Formula::True(a) => Formula::True(r(a)),
        Formula::False(a) => Formula::False(r(a)),
        Formula::Or(a, b) => Formula::Or(r(a), r(b)),
        Formula::And(a, b) => Formula::And(r(a), r(b)),
        Formula::Ident(a, b) => Formula::Ident(r(a), r(b)),
        Formula::Refers(a, b) => Formula::Refers(r(a), r(b)),
        Formula::Exists(y, a) => Formula::Exists(*y, r(a)),
        Formula::Forall(y, a) => Formula::Forall(*y, r(a)),
    }
}

/// Replaces the constant `c` by the variable `x_c` throughout `d`: in every
/// context, conclusion, template and witness. `x_c` must not occur anywhere
/// in `d`, free or bound, including the variable parameters.
pub fn rename_constant(d: &Derivation, c: &str, x_c: Var) -> Result<Derivation, RenameError> {
    for step in &d.steps {
        let occurs = step.sequent.ctx.iter().any(|f| mentions(f, x_c))
            || mentions(&step.sequent.concl, x_c)
            || step.params.values().any(|f| mentions(f, x_c));
        if occurs {
            return Err(RenameError { var: x_c, step: step.id });
        }
    }

    let apply = |f: &Formula| replace_constant(f, c, x_c);
    let steps = d
        .steps
        .iter()
        .map(|s| DerivationStep {
            id: s.id,
            rule: s.rule.clone(),
            premises: s.premises.clone(),
            sequent: Sequent { ctx: s.sequent.ctx.iter().map(apply).collect(), concl: apply(&s.sequent.concl) },
            params: s
                .params
                .iter()
                .map(|(k, v)| {
                    let v = if k == "template" || k == "witness" { apply(v) } else { v.clone() };
                    (k.clone(), v)
                })
                .collect(),
        })
        .collect();
    Ok(Derivation { steps })
}
