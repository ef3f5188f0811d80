mod common;

use common::{all_flavors, Gen};
use etl_core::manyvalued::{eval_param, Flavor, TruthValue, Valuation};
use etl_core::models::{
    build_model, check_structure_conditions, check_truth_conditions, eval_gamma, extensional_consequence,
    models_of_flavor, parse_model_description, satisfies, verify_substitution_property, Assignment,
    ExtensionalModel, Family,
};
use etl_core::substitution::{substitute_var, Substitution};
use etl_core::syntax::{parse_formula, Formula, Prop, Var};

fn p(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

fn liar() -> Formula {
    p("$c == ($c :false)")
}

fn liar_model(flavor: Flavor, c: TruthValue) -> ExtensionalModel {
    build_model(flavor, Valuation::new(flavor, TruthValue::Zero).unwrap(), [("c".to_string(), c)]).unwrap()
}

#[test]
fn liar_matrix() {
    use TruthValue::*;
    let gamma = Assignment::constant(Zero);
    for (flavor, c, expected) in [
        (Flavor::B4, Both, true),
        (Flavor::B4, Neither, true),
        (Flavor::P3, Both, true),
        (Flavor::K3, Neither, true),
        (Flavor::B4, One, false),
        (Flavor::Classical, One, false),
        (Flavor::Classical, Zero, false),
    ] {
        let m = liar_model(flavor, c);
        assert_eq!(satisfies(&m, &gamma, &liar()).unwrap(), expected, "{m}");
    }
    let none = models_of_flavor(Flavor::Classical, &[].into(), &["c".to_string()].into())
        .all(|m| !satisfies(&m, &Assignment::constant(Zero), &liar()).unwrap());
    assert!(none);
}

#[test]
fn flavor_laws_on_random_models() {
    let mut g = Gen::new(21);
    for flavor in all_flavors() {
        for _ in 0..50 {
            let m = g.model(flavor);
            let u = m.universe();
            let gapless = u.iter().all(|t| !(m.is_true(*t) && m.is_false(*t)));
            let exhaustive = u.iter().all(|t| m.is_true(*t) || m.is_false(*t));
            assert_eq!(gapless, matches!(flavor, Flavor::K3 | Flavor::Classical), "{m}");
            assert_eq!(exhaustive, matches!(flavor, Flavor::P3 | Flavor::Classical), "{m}");
        }
    }
}

#[test]
fn tarski_scheme_is_one_everywhere() {
    let mut g = Gen::new(22);
    let scheme = p("all v0 . (v0 :true) == v0");
    for flavor in all_flavors() {
        for _ in 0..20 {
            let m = g.model(flavor);
            let gamma = g.assignment(m.universe());
            assert_eq!(eval_gamma(&m, &scheme, &gamma).unwrap(), TruthValue::One);
        }
    }
}

#[test]
fn truth_teller_and_reference_are_valid() {
    let fam = Family::default();
    for f in ["$c == ($c :true)", "$c < ($c :true)", "v0 == v0"] {
        let out = extensional_consequence(&[], &p(f), &fam).unwrap();
        assert!(out.valid, "{f}: {:?}", out.counterexample);
    }
}

#[test]
fn liar_is_classically_explosive() {
    let fam = Family { flavors: vec![Flavor::Classical], ..Family::default() };
    let out = extensional_consequence(&[liar()], &p("$d"), &fam).unwrap();
    assert!(out.valid);
    let all = extensional_consequence(&[liar()], &p("$d"), &Family::default()).unwrap();
    assert!(!all.valid);
}

#[test]
fn bridge_coherence() {
    let mut g = Gen::new(23);
    for flavor in all_flavors() {
        for _ in 0..300 {
            let m = g.model(flavor);
            let gamma = g.assignment(m.universe());
            let a = g.prop(4);
            let f = Formula::param(a.clone());
            let designated = eval_param(m.theory(), &a).is_designated();
            assert_eq!(satisfies(&m, &gamma, &f).unwrap(), designated, "{a} in {m}");
            let falsity = m.is_false(eval_gamma(&m, &f, &gamma).unwrap());
            assert_eq!(falsity, eval_param(m.theory(), &Prop::not(a.clone())).is_designated());
        }
    }
}

#[test]
fn substitution_principle_instances_are_valid() {
    let mut g = Gen::new(24);
    g.vars = 2;
    g.atoms = 1;
    let fam = Family { flavors: vec![Flavor::Classical, Flavor::K3, Flavor::P3], budget: 200_000, ..Family::default() };
    let mut checked = 0;
    while checked < 25 {
        let phi = g.formula(3);
        let (psi, psi2) = (g.formula(2), g.formula(2));
        let x = Var(0);
        let lhs = Formula::ident(psi.clone(), psi2.clone());
        let rhs = Formula::ident(substitute_var(&phi, x, &psi), substitute_var(&phi, x, &psi2));
        match extensional_consequence(std::slice::from_ref(&lhs), &rhs, &fam) {
            Ok(out) => {
                assert!(out.valid, "{lhs} => {rhs}: {:?}", out.counterexample);
                checked += 1;
            }
            Err(_) => continue,
        }
    }
}

#[test]
fn truth_conditions_hold_on_random_instances() {
    let mut g = Gen::new(25);
    for flavor in all_flavors() {
        for _ in 0..300 {
            let m = g.model(flavor);
            let f = g.formula(5);
            let gamma = g.assignment(m.universe());
            let violations = check_truth_conditions(&m, &f, &gamma).unwrap();
            assert!(violations.is_empty(), "{}", violations[0]);
        }
    }
}

#[test]
fn structure_conditions_hold_on_random_instances() {
    let mut g = Gen::new(26);
    for flavor in all_flavors() {
        for _ in 0..300 {
            let m = g.model(flavor);
            let f = g.formula(5);
            let h = g.formula(4);
            let (gamma, other) = (g.assignment(m.universe()), g.assignment(m.universe()));
            let sigma = g.var_substitution();
            let violations = check_structure_conditions(&m, &f, &h, &gamma, &other, &sigma).unwrap();
            assert!(violations.is_empty(), "{}", violations[0]);
        }
    }
}

#[test]
fn known_substitution_property_instances() {
    let (m, gamma) = parse_model_description("flavor=b4 theory{p0=B} consts{$c=N} assign{v0=B v1=0} default=1").unwrap();
    for (f, s) in [("ex v1 . v0 < v1", "[v0 := v1]"), ("v0 :true", "[v0 := $c]"), ("all v0 . v0 \\/ v1", "[v1 := v0]")] {
        let sigma = Substitution::parse(s).unwrap();
        assert!(verify_substitution_property(&m, &p(f), &sigma, &gamma).unwrap(), "{f} {s}");
    }
    assert!(verify_substitution_property(&m, &p("v0 /\\ $c"), &Substitution::identity(), &gamma).unwrap());
}

#[test]
fn unit_models_are_constant() {
    let mut g = Gen::new(27);
    for _ in 0..200 {
        let f = g.formula(5);
        let empty = ExtensionalModel::unit_empty();
        let full = ExtensionalModel::unit_full();
        assert_eq!(eval_gamma(&empty, &f, &Assignment::constant(TruthValue::Neither)).unwrap(), TruthValue::Neither);
        assert_eq!(eval_gamma(&full, &f, &Assignment::constant(TruthValue::Both)).unwrap(), TruthValue::Both);
    }
}
