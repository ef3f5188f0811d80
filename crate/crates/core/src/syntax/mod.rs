//! The formula language: parameter-logic propositions embedded as leaves of
//! the richer language with truth and falsity operators, propositional
//! identity, reference and propositional quantifiers.

mod parse;
mod render;

use std::collections::BTreeSet;
use std::fmt;

pub use parse::{parse_formula, parse_prop, ParseError, ParseErrorKind, SourceSpan};
pub use render::render_formula;

/// A propositional variable `v<N>` of the extended language.
///
/// Variables are well-ordered by their index; "least fresh variable"
/// always means least index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u32);

impl Var {
    pub fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// A formula of the parameter logic (classical propositional logic over
/// atoms `p0, p1, ...`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Prop {
    Atom(u32),
    Not(Box<Prop>),
    And(Box<Prop>, Box<Prop>),
    Or(Box<Prop>, Box<Prop>),
    /// Material implication; semantically `~a | b`.
    Implies(Box<Prop>, Box<Prop>),
}

impl Prop {
    pub fn atom(index: u32) -> Self {
        Prop::Atom(index)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Prop) -> Self {
        Prop::Not(Box::new(a))
    }

    pub fn and(a: Prop, b: Prop) -> Self {
        Prop::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Prop, b: Prop) -> Self {
        Prop::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Prop, b: Prop) -> Self {
        Prop::Implies(Box::new(a), Box::new(b))
    }

    pub fn atoms(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<u32>) {
        match self {
            Prop::Atom(i) => {
                out.insert(*i);
            }
            Prop::Not(a) => a.collect_atoms(out),
            Prop::And(a, b) | Prop::Or(a, b) | Prop::Implies(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Height of the tree; atoms have depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Prop::Atom(_) => 1,
            Prop::Not(a) => 1 + a.depth(),
            Prop::And(a, b) | Prop::Or(a, b) | Prop::Implies(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// All subtrees, pre-order, including `self`.
    pub fn subformulas(&self) -> Vec<&Prop> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(p) = stack.pop() {
            out.push(p);
            match p {
                Prop::Atom(_) => {}
                Prop::Not(a) => stack.push(a),
                Prop::And(a, b) | Prop::Or(a, b) | Prop::Implies(a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
            }
        }
        out
    }
}

/// A formula of the extended language.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Var(Var),
    Const(String),
    /// An embedded parameter-logic formula, treated as an atom.
    Param(Prop),
    /// `φ :true`
    True(Box<Formula>),
    /// `φ :false`; also the negation of the extended language.
    False(Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    /// Propositional identity `φ == ψ`.
    Ident(Box<Formula>, Box<Formula>),
    /// Reference `φ < ψ`.
    Refers(Box<Formula>, Box<Formula>),
    Exists(Var, Box<Formula>),
    Forall(Var, Box<Formula>),
}

/// The atoms a substitution may act on: variables, constants and embedded
/// parameter formulas.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Var(Var),
    Const(String),
    Param(Prop),
}

impl Atom {
    pub fn to_formula(&self) -> Formula {
        match self {
            Atom::Var(v) => Formula::Var(*v),
            Atom::Const(c) => Formula::Const(c.clone()),
            Atom::Param(p) => Formula::Param(p.clone()),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_formula().fmt(f)
    }
}

impl Formula {
    pub fn var(index: u32) -> Self {
        Formula::Var(Var(index))
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Formula::Const(name.into())
    }

    pub fn param(p: Prop) -> Self {
        Formula::Param(p)
    }

    pub fn truth(f: Formula) -> Self {
        Formula::True(Box::new(f))
    }

    pub fn falsity(f: Formula) -> Self {
        Formula::False(Box::new(f))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn ident(a: Formula, b: Formula) -> Self {
        Formula::Ident(Box::new(a), Box::new(b))
    }

    pub fn refers(a: Formula, b: Formula) -> Self {
        Formula::Refers(Box::new(a), Box::new(b))
    }

    pub fn exists(x: Var, body: Formula) -> Self {
        Formula::Exists(x, Box::new(body))
    }

    pub fn forall(x: Var, body: Formula) -> Self {
        Formula::Forall(x, Box::new(body))
    }

    /// `a -> b`, an abbreviation for `a :false \/ b`.
    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::or(Formula::falsity(a), b)
    }

    pub fn is_binder(&self) -> bool {
        matches!(self, Formula::Exists(..) | Formula::Forall(..))
    }

    pub fn as_param(&self) -> Option<&Prop> {
        match self {
            Formula::Param(p) => Some(p),
            _ => None,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        let mut bound = Vec::new();
        self.collect_free_vars(&mut bound, &mut out);
        out
    }

    fn collect_free_vars(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Var(v) => {
                if !bound.contains(v) {
                    out.insert(*v);
                }
            }
            Formula::Const(_) | Formula::Param(_) => {}
            Formula::True(a) | Formula::False(a) => a.collect_free_vars(bound, out),
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Ident(a, b) | Formula::Refers(a, b) => {
                a.collect_free_vars(bound, out);
                b.collect_free_vars(bound, out);
            }
            Formula::Exists(x, body) | Formula::Forall(x, body) => {
                bound.push(*x);
                body.collect_free_vars(bound, out);
                bound.pop();
            }
        }
    }

    pub fn has_free_var(&self, v: Var) -> bool {
        match self {
            Formula::Var(w) => *w == v,
            Formula::Const(_) | Formula::Param(_) => false,
            Formula::True(a) | Formula::False(a) => a.has_free_var(v),
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Ident(a, b) | Formula::Refers(a, b) => {
                a.has_free_var(v) || b.has_free_var(v)
            }
            Formula::Exists(x, body) | Formula::Forall(x, body) => *x != v && body.has_free_var(v),
        }
    }

    /// Every variable occurring in the formula, free, bound or as a binder.
    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Var(v) | Formula::Exists(v, _) | Formula::Forall(v, _) => {
                out.insert(*v);
            }
            _ => {}
        });
        out
    }

    pub fn constants(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Const(c) = f {
                out.insert(c.clone());
            }
        });
        out
    }

    pub fn param_exprs(&self) -> BTreeSet<Prop> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Param(p) = f {
                out.insert(p.clone());
            }
        });
        out
    }

    /// Free variables, constants and parameter expressions of the formula:
    /// exactly the atoms a substitution can affect.
    pub fn free_atoms(&self) -> BTreeSet<Atom> {
        let mut out: BTreeSet<Atom> = self.free_vars().into_iter().map(Atom::Var).collect();
        self.visit(&mut |f| match f {
            Formula::Const(c) => {
                out.insert(Atom::Const(c.clone()));
            }
            Formula::Param(p) => {
                out.insert(Atom::Param(p.clone()));
            }
            _ => {}
        });
        out
    }

    /// Parameter-logic atoms occurring inside embedded parameter formulas.
    pub fn param_atoms(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Param(p) = f {
                out.extend(p.atoms());
            }
        });
        out
    }

    /// Pre-order walk over all subformulas, `self` first.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        match self {
            Formula::Var(_) | Formula::Const(_) | Formula::Param(_) => {}
            Formula::True(a) | Formula::False(a) => a.visit(f),
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Ident(a, b) | Formula::Refers(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Formula::Exists(_, body) | Formula::Forall(_, body) => body.visit(f),
        }
    }

    /// All subtrees including `self`, in pre-order.
    pub fn subformulas(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        self.visit(&mut |f| out.push(f));
        out
    }

    /// Immediate subformulas.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Var(_) | Formula::Const(_) | Formula::Param(_) => vec![],
            Formula::True(a) | Formula::False(a) => vec![a],
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Ident(a, b) | Formula::Refers(a, b) => {
                vec![a, b]
            }
            Formula::Exists(_, body) | Formula::Forall(_, body) => vec![body],
        }
    }

    /// True iff every quantified subformula binds a variable that is free in
    /// its body.
    pub fn is_intended(&self) -> bool {
        let mut ok = true;
        self.visit(&mut |f| {
            if let Formula::Exists(x, body) | Formula::Forall(x, body) = f {
                if !body.has_free_var(*x) {
                    ok = false;
                }
            }
        });
        ok
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Height of the tree; leaves have depth 1.
    pub fn depth(&self) -> usize {
        1 + self.children().into_iter().map(Formula::depth).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }
}
