//! Fixtures shared by the benchmarks.

use etl_core::manyvalued::{Flavor, TruthValue, Valuation};
use etl_core::models::{build_model, Assignment, ExtensionalModel};
use etl_core::syntax::{Formula, Prop, Var};

/// `p0 | p1 | ... | p{n-1}` against the premises `~p0, ..., ~p{n-2}`: the
/// scan has to visit every valuation before it finds the countermodel.
pub fn disjunctive_chain(n: u32) -> (Vec<Prop>, Prop) {
    let premises = (0..n.saturating_sub(1)).map(|i| Prop::not(Prop::atom(i))).collect();
    let conclusion = (1..n).fold(Prop::atom(0), |acc, i| Prop::or(acc, Prop::atom(i)));
    (premises, conclusion)
}

/// Alternating `all`/`ex` over `v0 .. v{depth-1}` around a disjunction of
/// identities `v{i-1} == (v{i} :false)`; each extra level multiplies the
/// work by the universe size.
pub fn quantifier_nest(depth: u32) -> Formula {
    let matrix = (1..depth.max(1)).fold(Formula::var(0), |acc, i| {
        Formula::or(acc, Formula::ident(Formula::var(i - 1), Formula::falsity(Formula::var(i))))
    });
    (0..depth).rev().fold(matrix, |body, i| {
        if i % 2 == 0 {
            Formula::forall(Var(i), body)
        } else {
            Formula::exists(Var(i), body)
        }
    })
}

pub fn b4_model() -> ExtensionalModel {
    let theory = Valuation::from_values(Flavor::B4, [(0, TruthValue::Both), (1, TruthValue::Neither)])
        .expect("B4 admits every value");
    build_model(Flavor::B4, theory, [("c".to_string(), TruthValue::Both)]).expect("values fit the flavor")
}

pub fn default_assignment() -> Assignment {
    Assignment::constant(TruthValue::Zero)
}
