//! Seeded random generators shared by the integration tests.
#![allow(dead_code)]

pub mod mutations;

use std::collections::BTreeSet;

use etl_core::manyvalued::{Flavor, TruthValue, Valuation};
use etl_core::models::{build_model, Assignment, ExtensionalModel};
use etl_core::substitution::Substitution;
use etl_core::syntax::{Atom, Formula, Prop, Var};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CONSTANTS: [&str; 2] = ["c", "d"];

pub struct Gen {
    pub rng: ChaCha8Rng,
    /// Variables are drawn from `v0 .. v{vars-1}`.
    pub vars: u32,
    pub atoms: u32,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed), vars: 4, atoms: 2 }
    }

    pub fn var(&mut self) -> Var {
        Var(self.rng.gen_range(0..self.vars))
    }

    pub fn prop(&mut self, depth: usize) -> Prop {
        if depth <= 1 || self.rng.gen_bool(0.3) {
            return Prop::atom(self.rng.gen_range(0..self.atoms));
        }
        match self.rng.gen_range(0..4) {
            0 => Prop::not(self.prop(depth - 1)),
            1 => Prop::and(self.prop(depth - 1), self.prop(depth - 1)),
            2 => Prop::or(self.prop(depth - 1), self.prop(depth - 1)),
            _ => Prop::implies(self.prop(depth - 1), self.prop(depth - 1)),
        }
    }

    pub fn leaf(&mut self) -> Formula {
        match self.rng.gen_range(0..6) {
            0..=2 => Formula::Var(self.var()),
            3 | 4 => Formula::constant(*CONSTANTS.choose(&mut self.rng).unwrap()),
            _ => Formula::param(self.prop(2)),
        }
    }

    /// A random formula of depth at most `depth` (leaves have depth 1).
    pub fn formula(&mut self, depth: usize) -> Formula {
        if depth <= 1 || self.rng.gen_bool(0.2) {
            return self.leaf();
        }
        let d = depth - 1;
        match self.rng.gen_range(0..10) {
            0 => Formula::truth(self.formula(d)),
            1 => Formula::falsity(self.formula(d)),
            2 => Formula::or(self.formula(d), self.formula(d)),
            3 => Formula::and(self.formula(d), self.formula(d)),
            4 => Formula::ident(self.formula(d), self.formula(d)),
            5 => Formula::refers(self.formula(d), self.formula(d)),
            6 | 7 => {
                let x = self.var();
                Formula::exists(x, self.formula(d))
            }
            _ => {
                let x = self.var();
                Formula::forall(x, self.formula(d))
            }
        }
    }

    /// A substitution on variables only, with one to three bindings.
    pub fn var_substitution(&mut self) -> Substitution {
        let n = self.rng.gen_range(1..=3);
        let mut s = Substitution::identity();
        for _ in 0..n {
            let x = self.var();
            let image = self.formula(3);
            s = s.update(Atom::Var(x), image);
        }
        s
    }

    /// A substitution whose support may also contain constants and
    /// parameter expressions.
    pub fn substitution(&mut self) -> Substitution {
        let n = self.rng.gen_range(1..=3);
        let mut s = Substitution::identity();
        for _ in 0..n {
            let key = match self.rng.gen_range(0..4) {
                0 | 1 => Atom::Var(self.var()),
                2 => Atom::Const(CONSTANTS.choose(&mut self.rng).unwrap().to_string()),
                _ => Atom::Param(self.prop(2)),
            };
            let image = self.formula(3);
            s = s.update(key, image);
        }
        s
    }

    pub fn value(&mut self, universe: &[TruthValue]) -> TruthValue {
        *universe.choose(&mut self.rng).unwrap()
    }

    pub fn assignment(&mut self, universe: &[TruthValue]) -> Assignment {
        let mut a = Assignment::constant(self.value(universe));
        for i in 0..self.vars {
            if self.rng.gen_bool(0.75) {
                let t = self.value(universe);
                a = a.with(Var(i), t);
            }
        }
        a
    }

    /// A model of `flavor` over atoms `p0..` and the shared constants.
    pub fn model(&mut self, flavor: Flavor) -> ExtensionalModel {
        let values = flavor.values();
        let mut theory = Valuation::new(Flavor::B4, TruthValue::Zero).unwrap();
        for a in 0..self.atoms {
            theory = theory.with(a, self.value(values)).unwrap();
        }
        let consts: Vec<(String, TruthValue)> =
            CONSTANTS.iter().map(|c| (c.to_string(), self.value(values))).collect();
        build_model(flavor, theory, consts).unwrap()
    }

    /// A random proper subformula of `f`, if it has any.
    pub fn proper_subformula<'a>(&mut self, f: &'a Formula) -> Option<&'a Formula> {
        let subs = f.subformulas();
        subs[1..].choose(&mut self.rng).copied()
    }
}

/// Renames every binder of `f` to a variable from `fresh_from` upward that
/// occurs nowhere else; the result is alpha-congruent to `f`.
pub fn alpha_variant(f: &Formula, fresh_from: u32) -> Formula {
    let mut next = fresh_from.max(f.vars().iter().map(|v| v.0 + 1).max().unwrap_or(0));
    rename_binders(f, &mut next)
}

fn rename_binders(f: &Formula, next: &mut u32) -> Formula {
    let mut r = |g: &Formula| Box::new(rename_binders(g, next));
    match f {
        Formula::Var(_) | Formula::Const(_) | Formula::Param(_) => f.clone(),
        Formula::True(a) => Formula::True(r(a)),
        Formula::False(a) => Formula::False(r(a)),
        Formula::Or(a, b) => {
            let a = r(a);
            Formula::Or(a, r(b))
        }
        Formula::And(a, b) => {
            let a = r(a);
            Formula::And(a, r(b))
        }
        Formula::Ident(a, b) => {
            let a = r(a);
            Formula::Ident(a, r(b))
        }
        Formula::Refers(a, b) => {
            let a = r(a);
            Formula::Refers(a, r(b))
        }
        Formula::Exists(x, body) | Formula::Forall(x, body) => {
            let y = Var(*next);
            *next += 1;
            let body = rename_free(&rename_binders(body, next), *x, y);
            if matches!(f, Formula::Exists(..)) {
                Formula::exists(y, body)
            } else {
                Formula::forall(y, body)
            }
        }
    }
}

/// Literal replacement of the free occurrences of `x` by `y`; only sound
/// when `y` is not bound anywhere in `f`.
pub fn rename_free(f: &Formula, x: Var, y: Var) -> Formula {
    let r = |g: &Formula| Box::new(rename_free(g, x, y));
    match f {
        Formula::Var(v) if *v == x => Formula::Var(y),
        Formula::Var(_) | Formula::Const(_) | Formula::Param(_) => f.clone(),
        Formula::True(a) => Formula::True(r(a)),
        Formula::False(a) => Formula::False(r(a)),
        Formula::Or(a, b) => Formula::Or(r(a), r(b)),
        Formula::And(a, b) => Formula::And(r(a), r(b)),
        Formula::Ident(a, b) => Formula::Ident(r(a), r(b)),
        Formula::Refers(a, b) => Formula::Refers(r(a), r(b)),
        Formula::Exists(v, _) | Formula::Forall(v, _) if *v == x => f.clone(),
        Formula::Exists(v, a) => Formula::Exists(*v, r(a)),
        Formula::Forall(v, a) => Formula::Forall(*v, r(a)),
    }
}

/// Reference semantics for substitution: first move every binder to a
/// variable that no image mentions, then replace atoms literally.
pub fn naive_substitution(sigma: &Substitution, f: &Formula) -> Formula {
    let mut fresh = f.vars().iter().map(|v| v.0 + 1).max().unwrap_or(0);
    for (_, g) in sigma.support() {
        fresh = fresh.max(g.vars().iter().map(|v| v.0 + 1).max().unwrap_or(0));
    }
    replace_atoms(sigma, &alpha_variant(f, fresh + 100))
}

fn replace_atoms(sigma: &Substitution, f: &Formula) -> Formula {
    let r = |g: &Formula| Box::new(replace_atoms(sigma, g));
    match f {
        Formula::Var(x) => sigma.get(&Atom::Var(*x)),
        Formula::Const(c) => sigma.get(&Atom::Const(c.clone())),
        Formula::Param(a) => sigma.get(&Atom::Param(a.clone())),
        Formula::True(a) => Formula::True(r(a)),
        Formula::False(a) => Formula::False(r(a)),
        Formula::Or(a, b) => Formula::Or(r(a), r(b)),
        Formula::And(a, b) => Formula::And(r(a), r(b)),
        Formula::Ident(a, b) => Formula::Ident(r(a), r(b)),
        Formula::Refers(a, b) => Formula::Refers(r(a), r(b)),
        // binders are fresh for σ, so σ only acts on the free atoms below
        Formula::Exists(v, a) => Formula::Exists(*v, Box::new(replace_atoms(&sigma.clone().update(Atom::Var(*v), Formula::Var(*v)), a))),
        Formula::Forall(v, a) => Formula::Forall(*v, Box::new(replace_atoms(&sigma.clone().update(Atom::Var(*v), Formula::Var(*v)), a))),
    }
}

pub fn all_flavors() -> [Flavor; 4] {
    Flavor::ALL
}

pub fn vars_upto(n: u32) -> BTreeSet<Var> {
    (0..n).map(Var).collect()
}
