//! Extensional models: the universe is a sublattice of the four truth values
//! and a formula denotes its own truth value.
//!
//! Γ is computed exactly. Quantifiers range over the finite universe, `==`
//! denotes `1` on equal denotations and `0` otherwise, and `<` always
//! denotes `1` (the model's reference relation is `M × M`).

mod conditions;
mod text;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::manyvalued::{eval_param, valuations_over, Flavor, TruthValue, Valuation};
use crate::substitution::{apply_substitution, Substitution};
use crate::syntax::{Atom, Formula, Var};

pub use conditions::{check_structure_conditions, check_truth_conditions, Condition, Violation};
pub use text::{parse_model_description, ModelTextError};

/// The model flavors, plus the two one-element models.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelKind {
    Flavored(Flavor),
    /// `TRUE = FALSE = ∅`; satisfies nothing.
    UnitEmpty,
    /// `M = TRUE = FALSE`; satisfies everything.
    UnitFull,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelKind::Flavored(fl) => fl.fmt(f),
            ModelKind::UnitEmpty => f.write_str("unit-empty"),
            ModelKind::UnitFull => f.write_str("unit-full"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("{what} has value {value}, not admitted by flavor {flavor}")]
    FlavorMismatch { what: String, value: TruthValue, flavor: Flavor },
    #[error("constant ${0} has no value in the model")]
    UnknownConstant(String),
    #[error("parameter atom p{0} is outside the theory's domain")]
    UnknownParamAtom(u32),
    #[error("assignment sends {var} to {value}, which is not in the universe {universe}")]
    AssignmentOutsideUniverse { var: String, value: TruthValue, universe: String },
    #[error("the substitution property is stated for substitutions on variables only")]
    NonVariableSubstitution,
    #[error("enumeration needs {needed} interpretations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
}

/// An extensional model over a complete theory, given as a valuation, with
/// constants partitioned into value classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionalModel {
    kind: ModelKind,
    theory: Valuation,
    constants: BTreeMap<String, TruthValue>,
}

fn universe_of(kind: ModelKind) -> &'static [TruthValue] {
    match kind {
        ModelKind::Flavored(f) => f.values(),
        ModelKind::UnitEmpty => &[TruthValue::Neither],
        ModelKind::UnitFull => &[TruthValue::Both],
    }
}

pub fn build_model(
    flavor: Flavor,
    theory: Valuation,
    constants: impl IntoIterator<Item = (String, TruthValue)>,
) -> Result<ExtensionalModel, ModelError> {
    let mismatch = |what: String, value: TruthValue| ModelError::FlavorMismatch { what, value, flavor };
    for (atom, t) in theory.explicit_values() {
        if !flavor.admits(t) {
            return Err(mismatch(format!("theory atom p{atom}"), t));
        }
    }
    if !flavor.admits(theory.fill()) {
        return Err(mismatch("theory fill".into(), theory.fill()));
    }
    let constants: BTreeMap<String, TruthValue> = constants.into_iter().collect();
    for (c, t) in &constants {
        if !flavor.admits(*t) {
            return Err(mismatch(format!("constant ${c}"), *t));
        }
    }
    Ok(ExtensionalModel { kind: ModelKind::Flavored(flavor), theory, constants })
}

impl ExtensionalModel {
    /// The one-element model over the empty theory.
    pub fn unit_empty() -> Self {
        ExtensionalModel {
            kind: ModelKind::UnitEmpty,
            theory: Valuation::constant(Flavor::B4, TruthValue::Neither).expect("b4 admits N"),
            constants: BTreeMap::new(),
        }
    }

    /// The one-element model over the theory of all parameter formulas.
    pub fn unit_full() -> Self {
        ExtensionalModel {
            kind: ModelKind::UnitFull,
            theory: Valuation::constant(Flavor::B4, TruthValue::Both).expect("b4 admits B"),
            constants: BTreeMap::new(),
        }
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn theory(&self) -> &Valuation {
        &self.theory
    }

    pub fn constants(&self) -> &BTreeMap<String, TruthValue> {
        &self.constants
    }

    /// The universe `M`, in enumeration order.
    pub fn universe(&self) -> &'static [TruthValue] {
        universe_of(self.kind)
    }

    pub fn contains(&self, m: TruthValue) -> bool {
        self.universe().contains(&m)
    }

    /// Membership in TRUE.
    pub fn is_true(&self, m: TruthValue) -> bool {
        self.contains(m) && m.is_designated()
    }

    /// Membership in FALSE.
    pub fn is_false(&self, m: TruthValue) -> bool {
        self.contains(m) && m.is_antidesignated()
    }

    pub fn true_set(&self) -> Vec<TruthValue> {
        self.universe().iter().copied().filter(|m| self.is_true(*m)).collect()
    }

    pub fn false_set(&self) -> Vec<TruthValue> {
        self.universe().iter().copied().filter(|m| self.is_false(*m)).collect()
    }

    /// `|m|`: the truth value classifying a proposition by TRUE/FALSE
    /// membership. In an extensional model this is the proposition itself.
    pub fn classify(&self, m: TruthValue) -> TruthValue {
        match (self.is_true(m), self.is_false(m)) {
            (true, false) => TruthValue::One,
            (false, true) => TruthValue::Zero,
            (true, true) => TruthValue::Both,
            (false, false) => TruthValue::Neither,
        }
    }

    /// `<^M`; the total relation.
    pub fn refers(&self, a: TruthValue, b: TruthValue) -> bool {
        self.contains(a) && self.contains(b)
    }

    fn is_unit(&self) -> bool {
        !matches!(self.kind, ModelKind::Flavored(_))
    }

    fn check_assignment(&self, gamma: &Assignment) -> Result<(), ModelError> {
        let outside = |var: String, value: TruthValue| ModelError::AssignmentOutsideUniverse {
            var,
            value,
            universe: format!("{:?}", self.universe().iter().map(|t| t.symbol()).collect::<Vec<_>>()),
        };
        if !self.contains(gamma.default) {
            return Err(outside("default".into(), gamma.default));
        }
        for (v, t) in &gamma.map {
            if !self.contains(*t) {
                return Err(outside(v.to_string(), *t));
            }
        }
        Ok(())
    }
}

impl fmt::Display for ExtensionalModel {
    /// The model description text form (without assignment).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "flavor={} theory{{{}}} consts{{", self.kind, self.theory)?;
        for (i, (c, t)) in self.constants.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "${c}={t}")?;
        }
        f.write_str("}")
    }
}

/// A total map from variables to elements of the universe: explicit values
/// plus a default.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    map: BTreeMap<Var, TruthValue>,
    default: TruthValue,
}

impl Assignment {
    pub fn constant(default: TruthValue) -> Self {
        Assignment { map: BTreeMap::new(), default }
    }

    pub fn with(mut self, x: Var, m: TruthValue) -> Self {
        self.map.insert(x, m);
        self
    }

    pub fn get(&self, x: Var) -> TruthValue {
        self.map.get(&x).copied().unwrap_or(self.default)
    }

    pub fn default_value(&self) -> TruthValue {
        self.default
    }

    pub fn explicit(&self) -> impl Iterator<Item = (Var, TruthValue)> + '_ {
        self.map.iter().map(|(v, t)| (*v, *t))
    }

    /// Sets `x` and returns its previous explicit binding.
    fn bind(&mut self, x: Var, m: TruthValue) -> Option<TruthValue> {
        self.map.insert(x, m)
    }

    fn restore(&mut self, x: Var, previous: Option<TruthValue>) {
        match previous {
            Some(t) => self.map.insert(x, t),
            None => self.map.remove(&x),
        };
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("assign{")?;
        for (i, (v, t)) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}={t}")?;
        }
        write!(f, "}} default={}", self.default)
    }
}

/// `Γ(f, γ)`.
pub fn eval_gamma(m: &ExtensionalModel, f: &Formula, gamma: &Assignment) -> Result<TruthValue, ModelError> {
    m.check_assignment(gamma)?;
    if m.is_unit() {
        return Ok(m.universe()[0]);
    }
    let mut env = gamma.clone();
    eval(m, f, &mut env)
}

fn eval(m: &ExtensionalModel, f: &Formula, env: &mut Assignment) -> Result<TruthValue, ModelError> {
    Ok(match f {
        Formula::Var(x) => env.get(*x),
        Formula::Const(c) => *m.constants.get(c).ok_or_else(|| ModelError::UnknownConstant(c.clone()))?,
        Formula::Param(a) => {
            if let Some(atom) = a.atoms().into_iter().find(|p| !m.theory.covers(*p)) {
                return Err(ModelError::UnknownParamAtom(atom));
            }
            eval_param(&m.theory, a)
        }
        Formula::True(a) => eval(m, a, env)?,
        Formula::False(a) => eval(m, a, env)?.negate(),
        Formula::Or(a, b) => eval(m, a, env)?.join(eval(m, b, env)?),
        Formula::And(a, b) => eval(m, a, env)?.meet(eval(m, b, env)?),
        Formula::Ident(a, b) => {
            if eval(m, a, env)? == eval(m, b, env)? {
                TruthValue::One
            } else {
                TruthValue::Zero
            }
        }
        Formula::Refers(a, b) => {
            // denotations are still computed so unknown symbols are reported
            eval(m, a, env)?;
            eval(m, b, env)?;
            TruthValue::One
        }
        Formula::Exists(x, body) | Formula::Forall(x, body) => {
            let existential = matches!(f, Formula::Exists(..));
            let mut acc: Option<TruthValue> = None;
            for &value in m.universe() {
                let previous = env.bind(*x, value);
                let r = eval(m, body, env);
                env.restore(*x, previous);
                let r = r?;
                acc = Some(match acc {
                    None => r,
                    Some(a) if existential => a.join(r),
                    Some(a) => a.meet(r),
                });
            }
            acc.expect("universe is nonempty")
        }
    })
}

/// `(M, γ) ⊨ f`.
pub fn satisfies(m: &ExtensionalModel, gamma: &Assignment, f: &Formula) -> Result<bool, ModelError> {
    Ok(m.is_true(eval_gamma(m, f, gamma)?))
}

/// `γσ`: the assignment `x ↦ Γ(σ(x), γ)`.
pub fn compose_assignment(
    m: &ExtensionalModel,
    gamma: &Assignment,
    sigma: &Substitution,
) -> Result<Assignment, ModelError> {
    if !sigma.is_variable_only() {
        return Err(ModelError::NonVariableSubstitution);
    }
    let mut out = gamma.clone();
    for (u, g) in sigma.support() {
        if let Atom::Var(x) = u {
            out = out.with(*x, eval_gamma(m, g, gamma)?);
        }
    }
    Ok(out)
}

/// `Γ(f[σ], γ) = Γ(f, γσ)` at one instance.
pub fn verify_substitution_property(
    m: &ExtensionalModel,
    f: &Formula,
    sigma: &Substitution,
    gamma: &Assignment,
) -> Result<bool, ModelError> {
    let gamma_sigma = compose_assignment(m, gamma, sigma)?;
    Ok(eval_gamma(m, &apply_substitution(sigma, f), gamma)? == eval_gamma(m, f, &gamma_sigma)?)
}

/// Which models [`extensional_consequence`] ranges over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub flavors: Vec<Flavor>,
    pub include_unit_models: bool,
    /// Maximum number of (model, assignment) pairs to enumerate.
    pub budget: u64,
}

impl Default for Family {
    fn default() -> Self {
        Family { flavors: Flavor::ALL.to_vec(), include_unit_models: false, budget: 1_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub model: ExtensionalModel,
    pub assignment: Assignment,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsequenceOutcome {
    pub valid: bool,
    pub counterexample: Option<Counterexample>,
    /// Interpretations examined before stopping.
    pub checked: u64,
}

/// All models of `flavor` over the given parameter atoms and constants:
/// theory valuations in lexicographic order, then constant partitions in
/// lexicographic order.
pub fn models_of_flavor<'a>(
    flavor: Flavor,
    param_atoms: &'a BTreeSet<u32>,
    constants: &BTreeSet<String>,
) -> impl Iterator<Item = ExtensionalModel> + 'a {
    let names: Vec<String> = constants.iter().cloned().collect();
    let const_indices: BTreeSet<u32> = (0..names.len() as u32).collect();
    valuations_over(flavor, param_atoms).flat_map(move |theory| {
        let names = names.clone();
        valuations_over(flavor, &const_indices)
            .map(move |classes| {
                let partition = names.iter().enumerate().map(|(i, c)| (c.clone(), classes.value(i as u32)));
                build_model(flavor, theory.clone(), partition).expect("enumerated values are admitted")
            })
            .collect::<Vec<_>>()
    })
}

/// All assignments of `vars` into the universe, lexicographic, with the
/// first universe element as default.
pub fn assignments_over(universe: &'static [TruthValue], vars: &BTreeSet<Var>) -> impl Iterator<Item = Assignment> {
    let vars: Vec<Var> = vars.iter().copied().collect();
    let n = universe.len();
    let total = n.checked_pow(vars.len() as u32).expect("assignment space overflows usize");
    (0..total).map(move |mut code| {
        let mut digits = vec![0usize; vars.len()];
        for d in digits.iter_mut().rev() {
            *d = code % n;
            code /= n;
        }
        vars.iter()
            .zip(digits)
            .fold(Assignment::constant(universe[0]), |a, (x, d)| a.with(*x, universe[d]))
    })
}

/// Does every interpretation in the family satisfying all `premises` satisfy
/// `conclusion`? Over the parameter atoms, constants and free variables
/// that occur.
pub fn extensional_consequence(
    premises: &[Formula],
    conclusion: &Formula,
    family: &Family,
) -> Result<ConsequenceOutcome, ModelError> {
    let all = premises.iter().chain(std::iter::once(conclusion));
    let mut atoms = BTreeSet::new();
    let mut constants = BTreeSet::new();
    let mut vars = BTreeSet::new();
    for f in all {
        atoms.extend(f.param_atoms());
        constants.extend(f.constants());
        vars.extend(f.free_vars());
    }

    let symbols = (atoms.len() + constants.len() + vars.len()) as u32;
    let mut needed: u128 = family
        .flavors
        .iter()
        .map(|f| (f.values().len() as u128).checked_pow(symbols).unwrap_or(u128::MAX))
        .fold(0u128, u128::saturating_add);
    if family.include_unit_models {
        needed = needed.saturating_add(2);
    }
    if needed > family.budget as u128 {
        return Err(ModelError::BudgetExceeded { needed, budget: family.budget });
    }

    let mut checked = 0u64;
    let units = family
        .include_unit_models
        .then(|| [ExtensionalModel::unit_empty(), ExtensionalModel::unit_full()])
        .into_iter()
        .flatten();
    let models = family
        .flavors
        .iter()
        .flat_map(|fl| models_of_flavor(*fl, &atoms, &constants))
        .chain(units);
    for model in models {
        for gamma in assignments_over(model.universe(), &vars) {
            checked += 1;
            let mut premises_hold = true;
            for p in premises {
                if !satisfies(&model, &gamma, p)? {
                    premises_hold = false;
                    break;
                }
            }
            if premises_hold && !satisfies(&model, &gamma, conclusion)? {
                return Ok(ConsequenceOutcome {
                    valid: false,
                    counterexample: Some(Counterexample { model, assignment: gamma }),
                    checked,
                });
            }
        }
    }
    Ok(ConsequenceOutcome { valid: true, counterexample: None, checked })
}
