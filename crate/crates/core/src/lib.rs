//! Propositional parameter logics extended with a truth predicate,
//! identity, reference and quantification over propositions.
//!
//! - [`syntax`]: formulas, parser and printer
//! - [`substitution`]: capture-avoiding substitution, alpha-congruence,
//!   syntactic reference
//! - [`manyvalued`]: the four-valued lattice, valuations and the
//!   B4/K3/P3/classical consequence oracles
//! - [`models`]: extensional models and the Γ evaluator
//! - [`calculus`]: derivation checker for the sequent calculus

pub mod calculus;
pub mod manyvalued;
pub mod models;
pub mod substitution;
pub mod syntax;

pub use manyvalued::{Flavor, TruthValue, Valuation};
pub use models::{Assignment, ExtensionalModel};
pub use substitution::Substitution;
pub use syntax::{parse_formula, parse_prop, Atom, Formula, Prop, Var};
