//! Structured results of each subcommand. Every report serializes to JSON
//! and reads back unchanged.

use std::fmt::{self, Write};

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Parse(ParseReport),
    Eval(EvalReport),
    Satisfies(EvalReport),
    Entail(EntailReport),
    Classify(ClassifyReport),
    ClosureMember(ClosureReport),
    Consequence(ConsequenceReport),
    Check(CheckReport),
    Rename(RenameReport),
    Corpus(CorpusReport),
    Error(ErrorReport),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseReport {
    pub formula: String,
    /// `Debug` form of the syntax tree.
    pub ast: String,
    pub intended: bool,
    pub closed: bool,
    pub free_vars: Vec<String>,
    pub depth: usize,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalReport {
    pub model: String,
    pub assignment: String,
    pub formula: String,
    pub value: String,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntailReport {
    pub flavor: String,
    pub premises: Vec<String>,
    pub conclusion: String,
    pub holds: bool,
    /// In `p0=B p1=0` form.
    pub countermodel: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub valuation: String,
    pub class: String,
    pub universe: Option<UniverseReport>,
}

/// Membership facts over the bounded universe used with `--universe-depth`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniverseReport {
    pub depth: usize,
    pub formulas: usize,
    pub in_theory: usize,
    pub contradictions_in_theory: usize,
    pub tautologies_missing: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub valuations: Vec<String>,
    pub formula: String,
    pub member: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsequenceReport {
    pub flavors: Vec<String>,
    pub include_unit_models: bool,
    pub premises: Vec<String>,
    pub conclusion: String,
    pub valid: bool,
    pub checked: u64,
    /// Model description of the first counterexample, with its assignment.
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub file: String,
    pub steps: usize,
    pub conclusion: Option<String>,
    pub verdict: VerdictRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum VerdictRecord {
    Accepted,
    Rejected { step: u32, reason: String, message: String },
}

impl VerdictRecord {
    pub fn is_accepted(&self) -> bool {
        matches!(self, VerdictRecord::Accepted)
    }
}

impl fmt::Display for VerdictRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerdictRecord::Accepted => f.write_str("Accepted"),
            VerdictRecord::Rejected { step, reason, message } => {
                write!(f, "Rejected at step {step} ({reason}): {message}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenameReport {
    pub constant: String,
    pub variable: String,
    pub derivation: String,
    pub verdict: VerdictRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub entries: Vec<CorpusLine>,
    pub accepted: usize,
    pub total: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusLine {
    pub name: String,
    pub verdict: VerdictRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub message: String,
}

impl Report {
    /// 0 for success, holds or accepted; 1 for a refutation or rejection;
    /// 2 for errors.
    pub fn exit_code(&self) -> i32 {
        let ok = match self {
            Report::Parse(_) | Report::Eval(_) | Report::Classify(_) => true,
            Report::Satisfies(r) => r.satisfied,
            Report::Entail(r) => r.holds,
            Report::ClosureMember(r) => r.member,
            Report::Consequence(r) => r.valid,
            Report::Check(r) => r.verdict.is_accepted(),
            Report::Rename(r) => r.verdict.is_accepted(),
            Report::Corpus(r) => r.accepted == r.total,
            Report::Error(_) => return 2,
        };
        if ok {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports contain only strings, numbers and booleans")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        // writing to a String cannot fail
        let _ = self.write_text(&mut s);
        s
    }

    fn write_text(&self, s: &mut String) -> fmt::Result {
        match self {
            Report::Parse(r) => {
                writeln!(s, "formula: {}", r.formula)?;
                writeln!(s, "ast: {}", r.ast)?;
                writeln!(s, "intended: {}", r.intended)?;
                writeln!(s, "closed: {}", r.closed)?;
                writeln!(s, "free variables: {}", list(&r.free_vars))?;
                writeln!(s, "depth: {}, size: {}", r.depth, r.size)
            }
            Report::Eval(r) | Report::Satisfies(r) => {
                writeln!(s, "value: {}", r.value)?;
                writeln!(s, "satisfied: {}", r.satisfied)
            }
            Report::Entail(r) => match &r.countermodel {
                None => writeln!(s, "holds"),
                Some(cm) => writeln!(s, "refuted\ncountermodel: {cm}"),
            },
            Report::Classify(r) => {
                writeln!(s, "{}", r.class)?;
                if let Some(u) = &r.universe {
                    writeln!(s, "universe depth {}: {} formulas, {} in the theory", u.depth, u.formulas, u.in_theory)?;
                    writeln!(s, "classical contradictions in the theory: {}", u.contradictions_in_theory)?;
                    writeln!(s, "classical tautologies missing: {}", u.tautologies_missing)?;
                }
                Ok(())
            }
            Report::ClosureMember(r) => writeln!(s, "{}", if r.member { "member" } else { "not a member" }),
            Report::Consequence(r) => {
                match &r.counterexample {
                    None => writeln!(s, "valid")?,
                    Some(c) => writeln!(s, "invalid\ncounterexample: {c}")?,
                }
                writeln!(s, "interpretations checked: {}", r.checked)
            }
            Report::Check(r) => writeln!(s, "{}", r.verdict),
            Report::Rename(r) => {
                s.push_str(&r.derivation);
                writeln!(s, "# {}", r.verdict)
            }
            Report::Corpus(r) => {
                for e in &r.entries {
                    writeln!(s, "{:<28} {}", e.name, e.verdict)?;
                }
                writeln!(s, "{} of {} accepted", r.accepted, r.total)
            }
            Report::Error(r) => writeln!(s, "error: {}", r.message),
        }
    }
}

fn list(items: &[String]) -> String {
    if items.is_empty() {
        "none".to_string()
    } else {
        items.join(" ")
    }
}
