//! Corrupted derivations with the verdict the checker must give them.

use etl_core::calculus::ReasonCode::{self, *};

pub struct Mutation {
    pub name: &'static str,
    pub text: &'static str,
    pub step: u32,
    pub reason: ReasonCode,
}

const fn m(name: &'static str, text: &'static str, step: u32, reason: ReasonCode) -> Mutation {
    Mutation { name, text, step, reason }
}

pub const MUTATIONS: &[Mutation] = &[
    m(
        "premise id that does not exist",
        "step 1 rule=R12 premises=[] ctx={} concl=$c == $c
         step 2 rule=R8 premises=[7] ctx={} concl=ex v0 . v0 == $c param.x=v0 param.z=v0 param.template=v0 == $c param.witness=$c",
        2,
        BadPremiseRef,
    ),
    m(
        "premise refers to its own step",
        "step 1 rule=R1 premises=[] ctx={ v0 } concl=v0
         step 2 rule=R2 premises=[2] ctx={ v0 ; $c } concl=v0",
        2,
        BadPremiseRef,
    ),
    m(
        "duplicate step ids",
        "step 1 rule=R1 premises=[] ctx={ {~p0} } concl={~p0}
         step 1 rule=R17 premises=[1] ctx={ {~p0} } concl={p0} :false",
        1,
        BadPremiseRef,
    ),
    m(
        "too few premises for R3",
        "step 1 rule=R1 premises=[] ctx={ v0 ; v0 :false } concl=v0
         step 2 rule=R3 premises=[1] ctx={ v0 ; v0 :false } concl=$d",
        2,
        BadPremiseRef,
    ),
    m("empty derivation", "# nothing here", 0, BadPremiseRef),
    m("unknown rule", "step 1 rule=R19 premises=[] ctx={ v0 } concl=v0", 1, UnknownRule),
    m(
        "R9 eigenvariable free in the context",
        "step 1 rule=R1 premises=[] ctx={ v1 :true ; v1 } concl=v1 :true
         step 2 rule=R16 premises=[1] ctx={ v1 :true ; v1 } concl=v1
         step 3 rule=R8 premises=[2] ctx={ v1 :true ; v1 } concl=ex v0 . v0 param.x=v0 param.z=v0 param.template=v0 param.witness=v1
         step 4 rule=R9 premises=[3] ctx={ ex v0 . v0 :true ; v1 } concl=ex v0 . v0 param.x=v0 param.z=v0 param.y=v1 param.template=v0 :true",
        4,
        EigenvariableViolation,
    ),
    m(
        "R9 eigenvariable free in the conclusion",
        "step 1 rule=R1 premises=[] ctx={ v1 :true } concl=v1 :true
         step 2 rule=R16 premises=[1] ctx={ v1 :true } concl=v1
         step 3 rule=R9 premises=[2] ctx={ ex v0 . v0 :true } concl=v1 param.x=v0 param.z=v0 param.y=v1 param.template=v0 :true",
        3,
        EigenvariableViolation,
    ),
    m(
        "R9 eigenvariable free in the existential",
        "step 1 rule=R1 premises=[] ctx={ v1 /\\ v1 ; $d } concl=$d
         step 2 rule=R9 premises=[1] ctx={ ex v0 . v0 /\\ v1 ; $d } concl=$d param.x=v0 param.z=v0 param.y=v1 param.template=v0 /\\ v1",
        2,
        EigenvariableViolation,
    ),
    m(
        "R17 on a constant",
        "step 1 rule=R1 premises=[] ctx={ $c } concl=$c
         step 2 rule=R17 premises=[1] ctx={ $c } concl=$c :false",
        2,
        NotParamFormula,
    ),
    m(
        "R18 on a variable",
        "step 1 rule=R1 premises=[] ctx={ v0 :false } concl=v0 :false
         step 2 rule=R18 premises=[1] ctx={ v0 :false } concl={~p0}",
        2,
        NotParamFormula,
    ),
    m(
        "R17 premise is not the negation",
        "step 1 rule=R1 premises=[] ctx={ {p0} } concl={p0}
         step 2 rule=R17 premises=[1] ctx={ {p0} } concl={p0} :false",
        2,
        SideCondition,
    ),
    m(
        "R12 on formulas that are not alpha-congruent",
        "step 1 rule=R12 premises=[] ctx={} concl=(ex v0 . v0 /\\ v2) == ex v1 . v1 /\\ v3",
        1,
        SideCondition,
    ),
    m(
        "R12 with a captured free variable",
        "step 1 rule=R12 premises=[] ctx={} concl=(ex v0 . v0 /\\ v1) == ex v1 . v1 /\\ v1",
        1,
        SideCondition,
    ),
    m(
        "R8 missing witness",
        "step 1 rule=R12 premises=[] ctx={} concl=$c == $c
         step 2 rule=R8 premises=[1] ctx={} concl=ex v0 . v0 == $c param.x=v0 param.z=v0 param.template=v0 == $c",
        2,
        MalformedParams,
    ),
    m(
        "R8 with an extra parameter",
        "step 1 rule=R12 premises=[] ctx={} concl=$c == $c
         step 2 rule=R8 premises=[1] ctx={} concl=ex v0 . v0 == $c param.x=v0 param.z=v0 param.y=v3 param.template=v0 == $c param.witness=$c",
        2,
        MalformedParams,
    ),
    m(
        "R8 bound variable given as a constant",
        "step 1 rule=R12 premises=[] ctx={} concl=$c == $c
         step 2 rule=R8 premises=[1] ctx={} concl=ex v0 . v0 == $c param.x=$c param.z=v0 param.template=v0 == $c param.witness=$c",
        2,
        MalformedParams,
    ),
    m("parameters on R1", "step 1 rule=R1 premises=[] ctx={ v0 } concl=v0 param.x=v0", 1, MalformedParams),
    m(
        "R8 variable not free in the template",
        "step 1 rule=R12 premises=[] ctx={} concl=$c == $c
         step 2 rule=R8 premises=[1] ctx={} concl=ex v0 . $c == $c param.x=v0 param.z=v0 param.template=$c == $c param.witness=$c",
        2,
        SideCondition,
    ),
    m(
        "R8 new binder free in the template",
        "step 1 rule=R1 premises=[] ctx={ $c == v1 } concl=$c == v1
         step 2 rule=R8 premises=[1] ctx={ $c == v1 } concl=ex v1 . v1 == v1 param.x=v0 param.z=v1 param.template=v0 == v1 param.witness=$c",
        2,
        SideCondition,
    ),
    m("R1 conclusion not in the context", "step 1 rule=R1 premises=[] ctx={ $c } concl=v0", 1, SideCondition),
    m(
        "R2 shrinks the context",
        "step 1 rule=R1 premises=[] ctx={ v0 } concl=v0
         step 2 rule=R2 premises=[1] ctx={ $c } concl=v0",
        2,
        ContextMismatch,
    ),
    m(
        "R3 with a different context",
        "step 1 rule=R1 premises=[] ctx={ v0 ; v0 :false } concl=v0
         step 2 rule=R1 premises=[] ctx={ v0 ; v0 :false } concl=v0 :false
         step 3 rule=R3 premises=[1,2] ctx={ v0 ; v0 :false ; $c } concl=$d",
        3,
        ContextMismatch,
    ),
    m(
        "R5 with the disjuncts swapped",
        "step 1 rule=R1 premises=[] ctx={ v0 } concl=v0
         step 2 rule=R5 premises=[1] ctx={ v0 } concl=v1 \\/ v0",
        2,
        SideCondition,
    ),
    m(
        "R14 with premises out of order",
        "step 1 rule=R13 premises=[] ctx={} concl=v0 < v0 :true
         step 2 rule=R13 premises=[] ctx={} concl=v0 :true < v0 :true :false
         step 3 rule=R14 premises=[2,1] ctx={} concl=v0 < v0 :true :false",
        3,
        SideCondition,
    ),
    m("R13 against the reference order", "step 1 rule=R13 premises=[] ctx={} concl=v0 :true < v0", 1, SideCondition),
    m(
        "R11 reversing the identity",
        "step 1 rule=R1 premises=[] ctx={ $c == $d } concl=$c == $d
         step 2 rule=R11 premises=[1] ctx={ $c == $d } concl=$d -> $c",
        2,
        SideCondition,
    ),
    m(
        "R10 replacing the wrong side",
        "step 1 rule=R1 premises=[] ctx={ $c == $d } concl=$c == $d
         step 2 rule=R10 premises=[1] ctx={ $c == $d } concl=$d \\/ v1 == $c \\/ v1 param.x=v0 param.template=v0 \\/ v1",
        2,
        SideCondition,
    ),
    m("RK refuted by the oracle", "step 1 rule=RK premises=[] ctx={ {p0 | p1} } concl={p0}", 1, BaseOracleRefuted),
    m("RK on a non-parameter conclusion", "step 1 rule=RK premises=[] ctx={ v0 } concl=v0", 1, NotParamFormula),
    m(
        "R4 with unrelated hypotheses",
        "step 1 rule=R1 premises=[] ctx={ v0 } concl=v0
         step 2 rule=R1 premises=[] ctx={ v0 ; v1 :false } concl=v0
         step 3 rule=R4 premises=[1,2] ctx={} concl=v0",
        3,
        ContextMismatch,
    ),
];
