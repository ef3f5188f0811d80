//! The `etl` command line: a thin layer over `etl-core` that parses flags,
//! calls one library operation and reports the outcome.

pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use etl_core::calculus::{check_derivation, golden_corpus, parse_derivation, rename_constant, Derivation, Verdict};
use etl_core::manyvalued::{
    classify_theory, desk_universe, entails, intersection_membership, is_classical_contradiction,
    is_classical_tautology, theory_membership, Flavor, Valuation,
};
use etl_core::models::{eval_gamma, extensional_consequence, parse_model_description, Family, ModelError};
use etl_core::syntax::{parse_formula, parse_prop, Formula, Prop, Var};

use report::*;

/// Exit code and everything the command prints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub code: i32,
    pub output: String,
}

#[derive(Parser, Debug)]
#[command(name = "etl", version, about = "Many-valued and non-Fregean logic toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Output {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a formula and describe it.
    Parse {
        #[arg(long)]
        formula: String,
        #[command(flatten)]
        out: Output,
    },
    /// Evaluate a formula in a model under the model's assignment.
    Eval {
        #[arg(long)]
        model: String,
        #[arg(long)]
        formula: String,
        #[command(flatten)]
        out: Output,
    },
    /// Like `eval`, but exits 1 when the formula is not satisfied.
    Satisfies {
        #[arg(long)]
        model: String,
        #[arg(long)]
        formula: String,
        #[command(flatten)]
        out: Output,
    },
    /// Decide propositional consequence by enumerating valuations.
    Entail {
        #[arg(long)]
        flavor: Flavor,
        #[arg(long)]
        premise: Vec<String>,
        #[arg(long)]
        concl: String,
        #[command(flatten)]
        out: Output,
    },
    /// Classify the theory induced by a valuation such as `p0=B p1=1`.
    Classify {
        #[arg(long)]
        valuation: String,
        #[arg(long, default_value = "b4")]
        flavor: Flavor,
        /// Also report membership facts over all formulas of this depth.
        #[arg(long)]
        universe_depth: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Is a formula in the intersection of the theories of the valuations?
    ClosureMember {
        #[arg(long = "valuation", required = true)]
        valuations: Vec<String>,
        #[arg(long, default_value = "b4")]
        flavor: Flavor,
        #[arg(long)]
        formula: String,
        #[command(flatten)]
        out: Output,
    },
    /// Check consequence over all finite extensional models of the flavors.
    Consequence {
        #[arg(long)]
        premise: Vec<String>,
        #[arg(long)]
        concl: String,
        /// Repeatable; defaults to all four flavors.
        #[arg(long = "flavor")]
        flavors: Vec<Flavor>,
        #[arg(long)]
        include_unit_models: bool,
        /// Maximum number of interpretations to enumerate.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Check a proof file.
    Check {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Replace a constant by a fresh variable throughout a proof file.
    Rename {
        file: PathBuf,
        #[arg(long)]
        constant: String,
        #[arg(long)]
        var: String,
        #[command(flatten)]
        out: Output,
    },
    /// Check the built-in derivation corpus.
    Corpus {
        #[command(flatten)]
        out: Output,
    },
}

impl Command {
    fn json(&self) -> bool {
        match self {
            Command::Parse { out, .. }
            | Command::Eval { out, .. }
            | Command::Satisfies { out, .. }
            | Command::Entail { out, .. }
            | Command::Classify { out, .. }
            | Command::ClosureMember { out, .. }
            | Command::Consequence { out, .. }
            | Command::Check { out, .. }
            | Command::Rename { out, .. }
            | Command::Corpus { out } => out.json,
        }
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return CommandResult { code, output: e.render().to_string() };
        }
    };
    let json = cli.command.json();
    let report = execute(cli.command).unwrap_or_else(|message| Report::Error(ErrorReport { message }));
    let output = if json { report.to_json() + "\n" } else { report.to_text() };
    CommandResult { code: report.exit_code(), output }
}

fn formula(flag: &str, text: &str) -> Result<Formula, String> {
    parse_formula(text).map_err(|e| format!("invalid {flag}: {}", e.diagnostic(text)))
}

fn prop(flag: &str, text: &str) -> Result<Prop, String> {
    parse_prop(text).map_err(|e| format!("invalid {flag}: {}", e.diagnostic(text)))
}

fn valuation(text: &str, flavor: Flavor) -> Result<Valuation, String> {
    Valuation::parse(text, flavor).map_err(|e| format!("invalid --valuation `{text}`: {e}"))
}

fn read_derivation(path: &PathBuf) -> Result<Derivation, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_derivation(&text).map_err(|e| format!("{}: {}", path.display(), e.diagnostic()))
}

fn verdict_record(v: &Verdict) -> VerdictRecord {
    match v {
        Verdict::Accepted => VerdictRecord::Accepted,
        Verdict::Rejected(r) => {
            VerdictRecord::Rejected { step: r.step, reason: r.reason.code().to_string(), message: r.message.clone() }
        }
    }
}

fn execute(command: Command) -> Result<Report, String> {
    Ok(match command {
        Command::Parse { formula: text, .. } => {
            let f = formula("--formula", &text)?;
            Report::Parse(ParseReport {
                formula: f.to_string(),
                ast: format!("{f:?}"),
                intended: f.is_intended(),
                closed: f.is_closed(),
                free_vars: f.free_vars().iter().map(Var::to_string).collect(),
                depth: f.depth(),
                size: f.size(),
            })
        }
        Command::Eval { model, formula: text, .. } => Report::Eval(evaluate(&model, &text)?),
        Command::Satisfies { model, formula: text, .. } => Report::Satisfies(evaluate(&model, &text)?),
        Command::Entail { flavor, premise, concl, .. } => {
            let premises = premise.iter().map(|p| prop("--premise", p)).collect::<Result<Vec<_>, _>>()?;
            let conclusion = prop("--concl", &concl)?;
            let e = entails(flavor, &premises, &conclusion);
            Report::Entail(EntailReport {
                flavor: flavor.to_string(),
                premises: premises.iter().map(Prop::to_string).collect(),
                conclusion: conclusion.to_string(),
                holds: e.holds,
                countermodel: e.countermodel.map(|v| v.to_string()),
            })
        }
        Command::Classify { valuation: text, flavor, universe_depth, .. } => {
            let v = valuation(&text, flavor)?;
            let universe = universe_depth.map(|depth| {
                let atoms: Vec<u32> = v.domain().collect();
                let formulas = desk_universe(&atoms, depth);
                let in_theory = |a: &&Prop| theory_membership(&v, a).in_theory;
                UniverseReport {
                    depth,
                    formulas: formulas.len(),
                    in_theory: formulas.iter().filter(in_theory).count(),
                    contradictions_in_theory: formulas
                        .iter()
                        .filter(|a| is_classical_contradiction(a))
                        .filter(in_theory)
                        .count(),
                    tautologies_missing: formulas
                        .iter()
                        .filter(|a| is_classical_tautology(a))
                        .filter(|a| !in_theory(a))
                        .count(),
                }
            });
            Report::Classify(ClassifyReport { valuation: v.to_string(), class: classify_theory(&v).to_string(), universe })
        }
        Command::ClosureMember { valuations, flavor, formula: text, .. } => {
            let set = valuations.iter().map(|t| valuation(t, flavor)).collect::<Result<Vec<_>, _>>()?;
            let a = prop("--formula", &text)?;
            let member = intersection_membership(&set, &a).map_err(|e| e.to_string())?;
            Report::ClosureMember(ClosureReport {
                valuations: set.iter().map(Valuation::to_string).collect(),
                formula: a.to_string(),
                member,
            })
        }
        Command::Consequence { premise, concl, flavors, include_unit_models, budget, .. } => {
            let premises = premise.iter().map(|p| formula("--premise", p)).collect::<Result<Vec<_>, _>>()?;
            let conclusion = formula("--concl", &concl)?;
            let flavors = if flavors.is_empty() { Flavor::ALL.to_vec() } else { flavors };
            let family = Family { flavors: flavors.clone(), include_unit_models, budget };
            let out = extensional_consequence(&premises, &conclusion, &family).map_err(|e| match e {
                ModelError::BudgetExceeded { needed, budget } => {
                    format!("budget exceeded: {needed} interpretations needed, budget is {budget}")
                }
                other => other.to_string(),
            })?;
            Report::Consequence(ConsequenceReport {
                flavors: flavors.iter().map(Flavor::to_string).collect(),
                include_unit_models,
                premises: premises.iter().map(Formula::to_string).collect(),
                conclusion: conclusion.to_string(),
                valid: out.valid,
                checked: out.checked,
                counterexample: out.counterexample.map(|c| format!("{} {}", c.model, c.assignment)),
            })
        }
        Command::Check { file, .. } => {
            let d = read_derivation(&file)?;
            Report::Check(CheckReport {
                file: file.display().to_string(),
                steps: d.steps.len(),
                conclusion: d.conclusion().map(|s| s.to_string()),
                verdict: verdict_record(&check_derivation(&d)),
            })
        }
        Command::Rename { file, constant, var, .. } => {
            let d = read_derivation(&file)?;
            let c = constant.strip_prefix('$').unwrap_or(&constant).to_string();
            let x = match formula("--var", &var)? {
                Formula::Var(x) => x,
                other => return Err(format!("--var must be a variable such as v7, got `{other}`")),
            };
            let renamed = rename_constant(&d, &c, x).map_err(|e| e.to_string())?;
            Report::Rename(RenameReport {
                constant: c,
                variable: x.to_string(),
                derivation: renamed.to_text(),
                verdict: verdict_record(&check_derivation(&renamed)),
            })
        }
        Command::Corpus { .. } => {
            let entries: Vec<CorpusLine> = golden_corpus()
                .iter()
                .map(|e| CorpusLine { name: e.name.to_string(), verdict: verdict_record(&check_derivation(&e.derivation())) })
                .collect();
            let accepted = entries.iter().filter(|e| e.verdict.is_accepted()).count();
            Report::Corpus(CorpusReport { total: entries.len(), accepted, entries })
        }
    })
}

fn evaluate(model: &str, text: &str) -> Result<EvalReport, String> {
    let (m, gamma) = parse_model_description(model).map_err(|e| format!("invalid --model: {e}"))?;
    let f = formula("--formula", text)?;
    let value = eval_gamma(&m, &f, &gamma).map_err(|e| e.to_string())?;
    Ok(EvalReport {
        model: m.to_string(),
        assignment: gamma.to_string(),
        formula: f.to_string(),
        value: value.to_string(),
        satisfied: m.is_true(value),
    })
}
