//! Derivations in the sequent calculus for the classical case and a checker
//! for them.
//!
//! Steps carry their rule parameters explicitly (templates, witnesses,
//! eigenvariables), so checking is a direct verification with no search
//! beyond picking the side formula of R4/R7/R9 out of a context. Contexts
//! and the results of substitutions are compared by structural equality;
//! alpha-congruence only enters through R12.

mod check;
mod corpus;
mod format;
mod rename;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::manyvalued::{entails, Flavor};
use crate::syntax::{Formula, Prop};

pub use check::check_derivation;
pub use corpus::{golden_corpus, CorpusEntry};
pub use format::{parse_derivation, ProofParseError};
pub use rename::{rename_constant, replace_constant, RenameError};

/// `Δ ⊢ φ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sequent {
    pub ctx: BTreeSet<Formula>,
    pub concl: Formula,
}

impl Sequent {
    pub fn new(ctx: impl IntoIterator<Item = Formula>, concl: Formula) -> Self {
        Sequent { ctx: ctx.into_iter().collect(), concl }
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, g) in self.ctx.iter().enumerate() {
            f.write_str(if i == 0 { " " } else { " ; " })?;
            write!(f, "{g}")?;
        }
        if !self.ctx.is_empty() {
            f.write_str(" ")?;
        }
        write!(f, "}} |- {}", self.concl)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R9,
    R10,
    R11,
    R12,
    R13,
    R14,
    R15,
    R16,
    R17,
    R18,
    /// The base calculus, realized as a classical entailment oracle.
    RK,
    Unknown(String),
}

impl Rule {
    pub const KNOWN: [Rule; 19] = [
        Rule::R1,
        Rule::R2,
        Rule::R3,
        Rule::R4,
        Rule::R5,
        Rule::R6,
        Rule::R7,
        Rule::R8,
        Rule::R9,
        Rule::R10,
        Rule::R11,
        Rule::R12,
        Rule::R13,
        Rule::R14,
        Rule::R15,
        Rule::R16,
        Rule::R17,
        Rule::R18,
        Rule::RK,
    ];

    pub fn premise_count(&self) -> Option<usize> {
        Some(match self {
            Rule::R1 | Rule::R12 | Rule::R13 | Rule::RK => 0,
            Rule::R3 | Rule::R4 | Rule::R7 | Rule::R14 => 2,
            Rule::Unknown(_) => return None,
            _ => 1,
        })
    }

    /// Parameter keys the rule requires, sorted.
    pub fn param_keys(&self) -> &'static [&'static str] {
        match self {
            Rule::R8 => &["template", "witness", "x", "z"],
            Rule::R9 => &["template", "x", "y", "z"],
            Rule::R10 => &["template", "x"],
            _ => &[],
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Rule::R1 => "R1",
            Rule::R2 => "R2",
            Rule::R3 => "R3",
            Rule::R4 => "R4",
            Rule::R5 => "R5",
            Rule::R6 => "R6",
            Rule::R7 => "R7",
            Rule::R8 => "R8",
            Rule::R9 => "R9",
            Rule::R10 => "R10",
            Rule::R11 => "R11",
            Rule::R12 => "R12",
            Rule::R13 => "R13",
            Rule::R14 => "R14",
            Rule::R15 => "R15",
            Rule::R16 => "R16",
            Rule::R17 => "R17",
            Rule::R18 => "R18",
            Rule::RK => "RK",
            Rule::Unknown(s) => s,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = std::convert::Infallible;

    /// Never fails; unrecognized names become [`Rule::Unknown`] so the
    /// checker can report them.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Rule::KNOWN
            .iter()
            .find(|r| r.name().eq_ignore_ascii_case(s))
            .cloned()
            .unwrap_or_else(|| Rule::Unknown(s.to_string())))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationStep {
    pub id: u32,
    pub rule: Rule,
    pub premises: Vec<u32>,
    pub sequent: Sequent,
    pub params: BTreeMap<String, Formula>,
}

impl DerivationStep {
    pub fn new(id: u32, rule: Rule, premises: impl IntoIterator<Item = u32>, sequent: Sequent) -> Self {
        DerivationStep { id, rule, premises: premises.into_iter().collect(), sequent, params: BTreeMap::new() }
    }

    pub fn with_param(mut self, key: &str, value: Formula) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }
}

/// A sequence of steps; the last one is the derived sequent.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Derivation {
    pub steps: Vec<DerivationStep>,
}

impl Derivation {
    pub fn new(steps: Vec<DerivationStep>) -> Self {
        Derivation { steps }
    }

    pub fn final_step(&self) -> Option<&DerivationStep> {
        self.steps.last()
    }

    pub fn conclusion(&self) -> Option<&Sequent> {
        self.final_step().map(|s| &s.sequent)
    }

    /// Renders in the proof file format; [`parse_derivation`] reads it back.
    pub fn to_text(&self) -> String {
        format::render(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReasonCode {
    UnknownRule,
    BadPremiseRef,
    ContextMismatch,
    SideCondition,
    EigenvariableViolation,
    NotParamFormula,
    MalformedParams,
    BaseOracleRefuted,
}

impl ReasonCode {
    pub const ALL: [ReasonCode; 8] = [
        ReasonCode::UnknownRule,
        ReasonCode::BadPremiseRef,
        ReasonCode::ContextMismatch,
        ReasonCode::SideCondition,
        ReasonCode::EigenvariableViolation,
        ReasonCode::NotParamFormula,
        ReasonCode::MalformedParams,
        ReasonCode::BaseOracleRefuted,
    ];

    pub fn code(self) -> &'static str {
        match self {
            ReasonCode::UnknownRule => "UNKNOWN_RULE",
            ReasonCode::BadPremiseRef => "BAD_PREMISE_REF",
            ReasonCode::ContextMismatch => "CONTEXT_MISMATCH",
            ReasonCode::SideCondition => "SIDE_CONDITION",
            ReasonCode::EigenvariableViolation => "EIGENVARIABLE_VIOLATION",
            ReasonCode::NotParamFormula => "NOT_PARAM_FORMULA",
            ReasonCode::MalformedParams => "MALFORMED_PARAMS",
            ReasonCode::BaseOracleRefuted => "BASE_ORACLE_REFUTED",
        }
    }
}

impl fmt::Display for ReasonCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for ReasonCode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ReasonCode::ALL.into_iter().find(|r| r.code() == s).ok_or_else(|| format!("unknown reason code `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    pub step: u32,
    pub reason: ReasonCode,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Rejected(Rejection),
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted)
    }

    pub fn rejection(&self) -> Option<&Rejection> {
        match self {
            Verdict::Accepted => None,
            Verdict::Rejected(r) => Some(r),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accepted => f.write_str("Accepted"),
            Verdict::Rejected(r) => write!(f, "Rejected at step {} ({}): {}", r.step, r.reason, r.message),
        }
    }
}

/// The base calculus: the parameter formulas of `ctx` classically entail
/// `a`. Other context members are ignored.
pub fn derive_base<'a>(ctx: impl IntoIterator<Item = &'a Formula>, a: &Prop) -> bool {
    let premises: Vec<Prop> = ctx.into_iter().filter_map(|f| f.as_param().cloned()).collect();
    entails(Flavor::Classical, &premises, a).holds
}
