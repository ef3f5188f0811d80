//! Golden derivations, shipped as proof files under `proofs/`.

use super::{parse_derivation, Derivation};

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub text: &'static str,
}

impl CorpusEntry {
    pub fn derivation(&self) -> Derivation {
        parse_derivation(self.text).unwrap_or_else(|e| panic!("corpus file {} is malformed: {e}", self.name))
    }
}

macro_rules! entry {
    ($name:literal) => {
        CorpusEntry { name: $name, text: include_str!(concat!("../../../../proofs/", $name, ".proof")) }
    };
}

const CORPUS: &[CorpusEntry] = &[
    entry!("alpha_identity"),
    entry!("base_oracle"),
    entry!("base_tautology"),
    entry!("bridge_back"),
    entry!("bridge_negation"),
    entry!("bridge_plus_base"),
    entry!("disjunction_elim"),
    entry!("excluded_middle"),
    entry!("exists_elim"),
    entry!("exists_identity"),
    entry!("explosion"),
    entry!("identity_to_implication"),
    entry!("liar"),
    entry!("negated_disjunction"),
    entry!("reference_chain"),
    entry!("substitution_congruence"),
    entry!("truth_intro_elim"),
    entry!("weakening"),
];

pub fn golden_corpus() -> &'static [CorpusEntry] {
    CORPUS
}
