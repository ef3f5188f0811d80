//! Substitutions over variables, constants and parameter formulas; their
//! capture-avoiding extension to formulas; composition; alpha-congruence and
//! the syntactic reference relation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::syntax::{parse_formula, Atom, Formula, ParseError, Var};

/// A finite-support map from atoms to formulas; identity elsewhere.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    map: BTreeMap<Atom, Formula>,
}

impl Substitution {
    /// The identity substitution.
    pub fn identity() -> Self {
        Substitution::default()
    }

    pub fn single(u: Atom, f: Formula) -> Self {
        Substitution::identity().update(u, f)
    }

    pub fn var(x: Var, f: Formula) -> Self {
        Substitution::single(Atom::Var(x), f)
    }

    /// `σ[u := f]`. Binding `u` to itself removes it from the support.
    pub fn update(mut self, u: Atom, f: Formula) -> Self {
        if u.to_formula() == f {
            self.map.remove(&u);
        } else {
            self.map.insert(u, f);
        }
        self
    }

    pub fn from_bindings(bindings: impl IntoIterator<Item = (Atom, Formula)>) -> Self {
        bindings
            .into_iter()
            .fold(Substitution::identity(), |s, (u, f)| s.update(u, f))
    }

    /// `σ(u)`.
    pub fn get(&self, u: &Atom) -> Formula {
        self.map.get(u).cloned().unwrap_or_else(|| u.to_formula())
    }

    pub fn support(&self) -> impl Iterator<Item = (&Atom, &Formula)> {
        self.map.iter()
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    /// True iff the support contains variables only.
    pub fn is_variable_only(&self) -> bool {
        self.map.keys().all(|u| matches!(u, Atom::Var(_)))
    }

    /// Parses `[v0 := <formula>; $c := <formula>; {p0} := <formula>]`.
    pub fn parse(text: &str) -> Result<Self, SubstitutionParseError> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or(SubstitutionParseError::Brackets)?;
        let mut out = Substitution::identity();
        for binding in inner.split(';').map(str::trim).filter(|b| !b.is_empty()) {
            let (lhs, rhs) = binding
                .split_once(":=")
                .ok_or_else(|| SubstitutionParseError::Binding(binding.to_string()))?;
            let atom = match parse_formula(lhs)? {
                Formula::Var(v) => Atom::Var(v),
                Formula::Const(c) => Atom::Const(c),
                Formula::Param(p) => Atom::Param(p),
                other => return Err(SubstitutionParseError::NotAnAtom(other.to_string())),
            };
            out = out.update(atom, parse_formula(rhs)?);
        }
        Ok(out)
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (u, g)) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{u} := {g}")?;
        }
        f.write_str("]")
    }
}

#[derive(Debug, Error)]
pub enum SubstitutionParseError {
    #[error("substitution must be enclosed in `[` and `]`")]
    Brackets,
    #[error("binding `{0}` lacks `:=`")]
    Binding(String),
    #[error("left side `{0}` is not a variable, constant or parameter formula")]
    NotAnAtom(String),
    #[error(transparent)]
    Formula(#[from] ParseError),
}

/// The variable forced by `sigma` with respect to the quantified formula
/// `binder`: the least variable not free in any `σ(u)` with `u` a free atom
/// of `binder`.
///
/// # Panics
/// If `binder` is not a quantifier.
pub fn forced_variable(sigma: &Substitution, binder: &Formula) -> Var {
    assert!(binder.is_binder(), "forced_variable needs a quantified formula");
    let excluded: BTreeSet<Var> = binder
        .free_atoms()
        .iter()
        .flat_map(|u| sigma.get(u).free_vars())
        .collect();
    least_var_outside(&excluded)
}

fn least_var_outside(excluded: &BTreeSet<Var>) -> Var {
    let mut candidate = 0;
    for v in excluded {
        if v.0 == candidate {
            candidate += 1;
        } else if v.0 > candidate {
            break;
        }
    }
    Var(candidate)
}

/// `f[σ]`.
pub fn apply_substitution(sigma: &Substitution, f: &Formula) -> Formula {
    match f {
        Formula::Var(v) => sigma.get(&Atom::Var(*v)),
        Formula::Const(c) => sigma.get(&Atom::Const(c.clone())),
        Formula::Param(p) => sigma.get(&Atom::Param(p.clone())),
        Formula::True(a) => Formula::truth(apply_substitution(sigma, a)),
        Formula::False(a) => Formula::falsity(apply_substitution(sigma, a)),
        Formula::Or(a, b) => Formula::or(apply_substitution(sigma, a), apply_substitution(sigma, b)),
        Formula::And(a, b) => Formula::and(apply_substitution(sigma, a), apply_substitution(sigma, b)),
        Formula::Ident(a, b) => Formula::ident(apply_substitution(sigma, a), apply_substitution(sigma, b)),
        Formula::Refers(a, b) => Formula::refers(apply_substitution(sigma, a), apply_substitution(sigma, b)),
        Formula::Exists(x, body) | Formula::Forall(x, body) => {
            let y = forced_variable(sigma, f);
            let inner = sigma.clone().update(Atom::Var(*x), Formula::Var(y));
            let body = apply_substitution(&inner, body);
            if matches!(f, Formula::Exists(..)) {
                Formula::exists(y, body)
            } else {
                Formula::forall(y, body)
            }
        }
    }
}

/// `φ[x := ψ]`.
pub fn substitute_var(f: &Formula, x: Var, psi: &Formula) -> Formula {
    apply_substitution(&Substitution::var(x, psi.clone()), f)
}

/// `σ ∘ τ`, mapping `u` to `σ(u)[τ]`.
pub fn compose(sigma: &Substitution, tau: &Substitution) -> Substitution {
    let mut out = Substitution::identity();
    for (u, f) in sigma.support() {
        out = out.update(u.clone(), apply_substitution(tau, f));
    }
    for (u, f) in tau.support() {
        if !sigma.map.contains_key(u) {
            out = out.update(u.clone(), f.clone());
        }
    }
    out
}

/// True iff `f` and `g` differ at most in the names of bound variables.
pub fn alpha_congruent(f: &Formula, g: &Formula) -> bool {
    alpha_eq(f, g, &mut Vec::new(), &mut Vec::new())
}

fn alpha_eq(f: &Formula, g: &Formula, lhs: &mut Vec<Var>, rhs: &mut Vec<Var>) -> bool {
    use Formula::*;
    match (f, g) {
        (Var(a), Var(b)) => {
            let da = lhs.iter().rposition(|v| v == a);
            let db = rhs.iter().rposition(|v| v == b);
            match (da, db) {
                (Some(i), Some(j)) => i == j,
                (None, None) => a == b,
                _ => false,
            }
        }
        (Const(a), Const(b)) => a == b,
        (Param(a), Param(b)) => a == b,
        (True(a), True(b)) | (False(a), False(b)) => alpha_eq(a, b, lhs, rhs),
        (Or(a1, b1), Or(a2, b2))
        | (And(a1, b1), And(a2, b2))
        | (Ident(a1, b1), Ident(a2, b2))
        | (Refers(a1, b1), Refers(a2, b2)) => alpha_eq(a1, a2, lhs, rhs) && alpha_eq(b1, b2, lhs, rhs),
        (Exists(x, a), Exists(y, b)) | (Forall(x, a), Forall(y, b)) => {
            lhs.push(*x);
            rhs.push(*y);
            let eq = alpha_eq(a, b, lhs, rhs);
            lhs.pop();
            rhs.pop();
            eq
        }
        _ => false,
    }
}

/// `f ≺ g`: `g` refers to `f`.
///
/// Decided as: `f` is alpha-congruent to a proper subformula `f'` of `g`
/// such that no free variable of `f'` is captured by a binder of `g` above
/// it.
pub fn syntactic_reference(f: &Formula, g: &Formula) -> bool {
    let f_free = f.free_vars();
    let mut bound: Vec<Var> = binder_of(g).into_iter().collect();
    g.children()
        .into_iter()
        .any(|child| refers_below(f, &f_free, child, &mut bound))
}

fn binder_of(f: &Formula) -> Option<Var> {
    match f {
        Formula::Exists(x, _) | Formula::Forall(x, _) => Some(*x),
        _ => None,
    }
}

fn refers_below(f: &Formula, f_free: &BTreeSet<Var>, node: &Formula, bound: &mut Vec<Var>) -> bool {
    let candidate_ok = || {
        let free = node.free_vars();
        // alpha-congruent formulas have equal free variables
        free == *f_free && free.iter().all(|v| !bound.contains(v)) && alpha_congruent(f, node)
    };
    if candidate_ok() {
        return true;
    }
    let b = binder_of(node);
    if let Some(x) = b {
        bound.push(x);
    }
    let hit = node.children().into_iter().any(|c| refers_below(f, f_free, c, bound));
    if b.is_some() {
        bound.pop();
    }
    hit
}
