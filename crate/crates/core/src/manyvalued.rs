//! The four-valued De Morgan lattice, flavored valuations of the parameter
//! logic and the complete theories they induce, consequence by exhaustive
//! valuation enumeration, and finite-scale prime/complete checks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::syntax::Prop;

/// `One`, `Zero`, `Both` (glut) and `Neither` (gap).
///
/// The derived `Ord` is the enumeration order `Zero < Neither < Both < One`,
/// not the lattice order; use [`TruthValue::leq`] for the latter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TruthValue {
    Zero,
    Neither,
    Both,
    One,
}

impl TruthValue {
    pub const ALL: [TruthValue; 4] = [TruthValue::Zero, TruthValue::Neither, TruthValue::Both, TruthValue::One];

    fn from_bits(told_true: bool, told_false: bool) -> Self {
        match (told_true, told_false) {
            (true, false) => TruthValue::One,
            (false, true) => TruthValue::Zero,
            (true, true) => TruthValue::Both,
            (false, false) => TruthValue::Neither,
        }
    }

    /// Member of TRUE: `One` or `Both`.
    pub fn is_designated(self) -> bool {
        matches!(self, TruthValue::One | TruthValue::Both)
    }

    /// Member of FALSE: `Zero` or `Both`.
    pub fn is_antidesignated(self) -> bool {
        matches!(self, TruthValue::Zero | TruthValue::Both)
    }

    pub fn join(self, other: Self) -> Self {
        Self::from_bits(
            self.is_designated() || other.is_designated(),
            self.is_antidesignated() && other.is_antidesignated(),
        )
    }

    pub fn meet(self, other: Self) -> Self {
        Self::from_bits(
            self.is_designated() && other.is_designated(),
            self.is_antidesignated() || other.is_antidesignated(),
        )
    }

    pub fn negate(self) -> Self {
        Self::from_bits(self.is_antidesignated(), self.is_designated())
    }

    /// Lattice order: `Zero <= Both <= One`, `Zero <= Neither <= One`.
    pub fn leq(self, other: Self) -> bool {
        self.join(other) == other
    }

    pub fn symbol(self) -> &'static str {
        match self {
            TruthValue::Zero => "0",
            TruthValue::Neither => "N",
            TruthValue::Both => "B",
            TruthValue::One => "1",
        }
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for TruthValue {
    type Err = ValuationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "1" => Ok(TruthValue::One),
            "0" => Ok(TruthValue::Zero),
            "B" | "b" => Ok(TruthValue::Both),
            "N" | "n" => Ok(TruthValue::Neither),
            other => Err(ValuationError::BadValue(other.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavor {
    Classical,
    K3,
    P3,
    B4,
}

impl Flavor {
    pub const ALL: [Flavor; 4] = [Flavor::Classical, Flavor::K3, Flavor::P3, Flavor::B4];

    /// The admissible values in enumeration order.
    pub fn values(self) -> &'static [TruthValue] {
        use TruthValue::*;
        match self {
            Flavor::Classical => &[Zero, One],
            Flavor::K3 => &[Zero, Neither, One],
            Flavor::P3 => &[Zero, Both, One],
            Flavor::B4 => &[Zero, Neither, Both, One],
        }
    }

    pub fn admits(self, t: TruthValue) -> bool {
        self.values().contains(&t)
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Classical => "classical",
            Flavor::K3 => "k3",
            Flavor::P3 => "p3",
            Flavor::B4 => "b4",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flavor {
    type Err = ValuationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "classical" => Ok(Flavor::Classical),
            "k3" => Ok(Flavor::K3),
            "p3" => Ok(Flavor::P3),
            "b4" => Ok(Flavor::B4),
            _ => Err(ValuationError::BadFlavor(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ValuationError {
    #[error("value {value} is not admitted by flavor {flavor}")]
    FlavorMismatch { flavor: Flavor, value: TruthValue },
    #[error("unknown truth value `{0}` (expected 1, 0, B or N)")]
    BadValue(String),
    #[error("unknown flavor `{0}` (expected classical, k3, p3 or b4)")]
    BadFlavor(String),
    #[error("malformed valuation token `{0}` (expected p<N>=<value>)")]
    BadToken(String),
    #[error("atom p{0} assigned twice")]
    Duplicate(u32),
}

/// An assignment of truth values to parameter atoms; stands for a complete
/// theory `A` (the designated formulas) and its complement (the
/// antidesignated ones).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Valuation {
    flavor: Flavor,
    values: BTreeMap<u32, TruthValue>,
    fill: TruthValue,
}

impl Valuation {
    /// An empty valuation; every atom takes `fill`.
    pub fn new(flavor: Flavor, fill: TruthValue) -> Result<Self, ValuationError> {
        if !flavor.admits(fill) {
            return Err(ValuationError::FlavorMismatch { flavor, value: fill });
        }
        Ok(Valuation { flavor, values: BTreeMap::new(), fill })
    }

    /// Values given explicitly; other atoms default to `Zero`.
    pub fn from_values(
        flavor: Flavor,
        values: impl IntoIterator<Item = (u32, TruthValue)>,
    ) -> Result<Self, ValuationError> {
        let mut v = Valuation::new(flavor, TruthValue::Zero)?;
        for (atom, t) in values {
            v = v.with(atom, t)?;
        }
        Ok(v)
    }

    /// The same value on every atom.
    pub fn constant(flavor: Flavor, t: TruthValue) -> Result<Self, ValuationError> {
        Valuation::new(flavor, t)
    }

    pub fn with(mut self, atom: u32, t: TruthValue) -> Result<Self, ValuationError> {
        if !self.flavor.admits(t) {
            return Err(ValuationError::FlavorMismatch { flavor: self.flavor, value: t });
        }
        self.values.insert(atom, t);
        Ok(self)
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn fill(&self) -> TruthValue {
        self.fill
    }

    pub fn value(&self, atom: u32) -> TruthValue {
        self.values.get(&atom).copied().unwrap_or(self.fill)
    }

    /// Atoms with an explicit value.
    pub fn domain(&self) -> impl Iterator<Item = u32> + '_ {
        self.values.keys().copied()
    }

    pub fn covers(&self, atom: u32) -> bool {
        self.values.contains_key(&atom)
    }

    pub fn explicit_values(&self) -> impl Iterator<Item = (u32, TruthValue)> + '_ {
        self.values.iter().map(|(a, t)| (*a, *t))
    }

    /// Parses `p0=1 p1=B p2=N p3=0`.
    pub fn parse(text: &str, flavor: Flavor) -> Result<Self, ValuationError> {
        let mut v = Valuation::new(flavor, TruthValue::Zero)?;
        for token in text.split_whitespace() {
            let (lhs, rhs) = token
                .split_once('=')
                .ok_or_else(|| ValuationError::BadToken(token.to_string()))?;
            let atom = lhs
                .strip_prefix('p')
                .and_then(|d| d.parse::<u32>().ok())
                .ok_or_else(|| ValuationError::BadToken(token.to_string()))?;
            if v.covers(atom) {
                return Err(ValuationError::Duplicate(atom));
            }
            v = v.with(atom, rhs.parse()?)?;
        }
        Ok(v)
    }
}

impl fmt::Display for Valuation {
    /// Explicit values only, e.g. `p0=B p1=0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (atom, t)) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "p{atom}={t}")?;
        }
        Ok(())
    }
}

pub fn eval_param(v: &Valuation, a: &Prop) -> TruthValue {
    match a {
        Prop::Atom(i) => v.value(*i),
        Prop::Not(x) => eval_param(v, x).negate(),
        Prop::And(x, y) => eval_param(v, x).meet(eval_param(v, y)),
        Prop::Or(x, y) => eval_param(v, x).join(eval_param(v, y)),
        Prop::Implies(x, y) => eval_param(v, x).negate().join(eval_param(v, y)),
    }
}

/// Whether `a` lies in the theory `A` induced by `v` and in its complement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Membership {
    pub in_theory: bool,
    pub in_complement: bool,
}

pub fn theory_membership(v: &Valuation, a: &Prop) -> Membership {
    let t = eval_param(v, a);
    Membership { in_theory: t.is_designated(), in_complement: t.is_antidesignated() }
}

/// Result of a consequence check; `countermodel` is set iff `holds` is false.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entailment {
    pub holds: bool,
    pub countermodel: Option<Valuation>,
}

/// Atoms in increasing order, all valuations of the flavor over them in
/// lexicographic order (first atom most significant).
pub fn valuations_over(flavor: Flavor, atoms: &BTreeSet<u32>) -> impl Iterator<Item = Valuation> + '_ {
    let atoms: Vec<u32> = atoms.iter().copied().collect();
    let values = flavor.values();
    let total = values.len().checked_pow(atoms.len() as u32).expect("valuation space overflows usize");
    (0..total).map(move |mut code| {
        let mut digits = vec![0usize; atoms.len()];
        for d in digits.iter_mut().rev() {
            *d = code % values.len();
            code /= values.len();
        }
        Valuation::from_values(flavor, atoms.iter().zip(digits).map(|(a, d)| (*a, values[d])))
            .expect("enumerated values are admitted")
    })
}

/// Does every flavor-valuation designating all `premises` designate
/// `conclusion`? The countermodel is the first witness in lexicographic
/// order over the occurring atoms.
pub fn entails(flavor: Flavor, premises: &[Prop], conclusion: &Prop) -> Entailment {
    let mut atoms = conclusion.atoms();
    for p in premises {
        atoms.extend(p.atoms());
    }
    let counter = valuations_over(flavor, &atoms).find(|v| {
        premises.iter().all(|p| eval_param(v, p).is_designated()) && !eval_param(v, conclusion).is_designated()
    });
    Entailment { holds: counter.is_none(), countermodel: counter }
}

/// Which of the four kinds of complete theory a valuation induces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TheoryClass {
    Classical,
    K3Proper,
    P3Proper,
    B4Proper,
}

impl TheoryClass {
    pub fn is_k3(self) -> bool {
        matches!(self, TheoryClass::Classical | TheoryClass::K3Proper)
    }

    pub fn is_p3(self) -> bool {
        matches!(self, TheoryClass::Classical | TheoryClass::P3Proper)
    }

    pub fn name(self) -> &'static str {
        match self {
            TheoryClass::Classical => "classical",
            TheoryClass::K3Proper => "k3-proper",
            TheoryClass::P3Proper => "p3-proper",
            TheoryClass::B4Proper => "b4-proper",
        }
    }
}

impl fmt::Display for TheoryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Classifies by the values taken, including the fill value.
pub fn classify_theory(v: &Valuation) -> TheoryClass {
    let taken = || v.values.values().copied().chain(std::iter::once(v.fill));
    let glut = taken().any(|t| t == TruthValue::Both);
    let gap = taken().any(|t| t == TruthValue::Neither);
    match (glut, gap) {
        (false, false) => TheoryClass::Classical,
        (false, true) => TheoryClass::K3Proper,
        (true, false) => TheoryClass::P3Proper,
        (true, true) => TheoryClass::B4Proper,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("intersection over an empty set of theories")]
pub struct EmptyTheorySet;

/// Is `a` in the intersection of the theories induced by `set`?
pub fn intersection_membership(set: &[Valuation], a: &Prop) -> Result<bool, EmptyTheorySet> {
    if set.is_empty() {
        return Err(EmptyTheorySet);
    }
    Ok(set.iter().all(|v| theory_membership(v, a).in_theory))
}

/// The theory of `set` restricted to `universe`, as a membership vector.
pub fn restricted_theory(set: &[Valuation], universe: &[Prop]) -> Vec<bool> {
    universe
        .iter()
        .map(|a| set.iter().all(|v| eval_param(v, a).is_designated()))
        .collect()
}

/// Finite-scale primality: no pair of theories from `pool` (restricted to
/// `universe`) both differ from the theory of `set` yet intersect to it.
///
/// # Panics
/// If `set` is empty.
pub fn check_prime(set: &[Valuation], pool: &[Vec<Valuation>], universe: &[Prop]) -> bool {
    assert!(!set.is_empty(), "check_prime needs a nonempty valuation set");
    let target = restricted_theory(set, universe);
    let candidates: Vec<Vec<bool>> = pool
        .iter()
        .filter(|s| !s.is_empty())
        .map(|s| restricted_theory(s, universe))
        .filter(|t| *t != target)
        .collect();
    for (i, a) in candidates.iter().enumerate() {
        for b in &candidates[i..] {
            if a.iter().zip(b).map(|(x, y)| *x && *y).eq(target.iter().copied()) {
                return false;
            }
        }
    }
    true
}

/// All parameter formulas over `atoms` of depth at most `depth` (atoms have
/// depth 1) built from `~`, `&` and `|`, deduplicated, in generation order.
/// The result is closed under subformulas.
pub fn desk_universe(atoms: &[u32], depth: usize) -> Vec<Prop> {
    let mut out: Vec<Prop> = Vec::new();
    let mut seen = BTreeSet::new();
    if depth == 0 {
        return out;
    }
    for a in atoms {
        if seen.insert(Prop::Atom(*a)) {
            out.push(Prop::Atom(*a));
        }
    }
    for _ in 1..depth {
        let previous = out.clone();
        let mut next = Vec::new();
        for a in &previous {
            next.push(Prop::not(a.clone()));
        }
        for a in &previous {
            for b in &previous {
                next.push(Prop::and(a.clone(), b.clone()));
                next.push(Prop::or(a.clone(), b.clone()));
            }
        }
        for f in next {
            if seen.insert(f.clone()) {
                out.push(f);
            }
        }
    }
    out
}

/// Classically unsatisfiable: no 0/1 valuation over its atoms designates it.
pub fn is_classical_contradiction(a: &Prop) -> bool {
    valuations_over(Flavor::Classical, &a.atoms()).all(|v| !eval_param(&v, a).is_designated())
}

pub fn is_classical_tautology(a: &Prop) -> bool {
    entails(Flavor::Classical, &[], a).holds
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_prop;
    use TruthValue::*;

    fn pr(s: &str) -> Prop {
        parse_prop(s).unwrap()
    }

    fn b4(values: &[(u32, TruthValue)]) -> Valuation {
        Valuation::from_values(Flavor::B4, values.iter().copied()).unwrap()
    }

    #[test]
    fn lattice_tables() {
        assert_eq!(Both.join(Neither), One);
        assert_eq!(Both.meet(Neither), Zero);
        assert!(Zero.leq(Both) && Both.leq(One) && Zero.leq(Neither) && Neither.leq(One));
        assert!(!Both.leq(Neither) && !Neither.leq(Both));
        assert_eq!([One, Zero, Both, Neither].map(TruthValue::negate), [Zero, One, Both, Neither]);
        let designated: Vec<_> = TruthValue::ALL.into_iter().filter(|t| t.is_designated()).collect();
        assert_eq!(designated, vec![Both, One]);
        let anti: Vec<_> = TruthValue::ALL.into_iter().filter(|t| t.is_antidesignated()).collect();
        assert_eq!(anti, vec![Zero, Both]);
    }

    #[test]
    fn join_meet_are_lub_glb() {
        for a in TruthValue::ALL {
            for b in TruthValue::ALL {
                let j = a.join(b);
                let m = a.meet(b);
                assert!(a.leq(j) && b.leq(j));
                assert!(m.leq(a) && m.leq(b));
                for c in TruthValue::ALL {
                    if a.leq(c) && b.leq(c) {
                        assert!(j.leq(c));
                    }
                    if c.leq(a) && c.leq(b) {
                        assert!(c.leq(m));
                    }
                }
            }
        }
    }

    #[test]
    fn eval_examples() {
        let v = b4(&[(0, Both), (1, Neither)]);
        assert_eq!(eval_param(&v, &pr("p0 | p1")), One);
        let v = b4(&[(0, One)]);
        assert_eq!(eval_param(&v, &pr("~p0")), Zero);
        let v = b4(&[(0, Both)]);
        assert_eq!(eval_param(&v, &pr("p0 & ~p0")), Both);
        assert!(eval_param(&v, &pr("p0 & ~p0")).is_designated());
        let v = b4(&[(0, One), (1, Zero)]);
        assert_eq!(eval_param(&v, &pr("p0 => p1")), Zero);
    }

    #[test]
    fn membership_examples() {
        let glut = b4(&[(0, Both)]);
        assert_eq!(theory_membership(&glut, &pr("p0")), Membership { in_theory: true, in_complement: true });
        let gap = b4(&[(0, Neither)]);
        assert_eq!(theory_membership(&gap, &pr("p0")), Membership { in_theory: false, in_complement: false });
        let t = b4(&[(0, One)]);
        assert_eq!(theory_membership(&t, &pr("~p0")), Membership { in_theory: false, in_complement: true });
    }

    #[test]
    fn entailment_examples() {
        assert!(entails(Flavor::B4, &[pr("p0")], &pr("p0 | p1")).holds);

        let e = entails(Flavor::B4, &[pr("p0"), pr("~p0 | p1")], &pr("p1"));
        assert!(!e.holds);
        assert_eq!(e.countermodel.unwrap().to_string(), "p0=B p1=0");

        assert!(entails(Flavor::K3, &[pr("p0 & ~p0")], &pr("p1")).holds);
        assert!(entails(Flavor::Classical, &[pr("p0 & ~p0")], &pr("p1")).holds);
        let e = entails(Flavor::P3, &[pr("p0 & ~p0")], &pr("p1"));
        assert_eq!(e.countermodel.unwrap().to_string(), "p0=B p1=0");
    }

    #[test]
    fn countermodel_is_first_in_lexicographic_order() {
        // p1 alone refutes; p0 is most significant so p0=0 comes first
        let e = entails(Flavor::B4, &[], &pr("p0 | p1"));
        assert_eq!(e.countermodel.unwrap().to_string(), "p0=0 p1=0");
        let e = entails(Flavor::K3, &[], &pr("p0 | ~p0"));
        assert_eq!(e.countermodel.unwrap().to_string(), "p0=N");
    }

    #[test]
    fn classification() {
        assert_eq!(classify_theory(&Valuation::constant(Flavor::B4, One).unwrap()), TheoryClass::Classical);
        let v = Valuation::constant(Flavor::B4, One).unwrap().with(0, Both).unwrap();
        assert_eq!(classify_theory(&v), TheoryClass::P3Proper);
        assert_eq!(classify_theory(&b4(&[(0, Both), (1, Neither)])), TheoryClass::B4Proper);
        assert_eq!(classify_theory(&b4(&[(1, Neither)])), TheoryClass::K3Proper);
        // the fill value counts
        assert_eq!(classify_theory(&Valuation::new(Flavor::K3, Neither).unwrap()), TheoryClass::K3Proper);
    }

    #[test]
    fn intersection_examples() {
        let v = b4(&[(0, Both)]);
        for a in ["p0", "~p0", "p0 & ~p1"] {
            let a = pr(a);
            assert_eq!(intersection_membership(std::slice::from_ref(&v), &a).unwrap(), theory_membership(&v, &a).in_theory);
        }
        let s = [b4(&[(0, One)]), b4(&[(0, Zero)])];
        assert!(!intersection_membership(&s, &pr("p0")).unwrap());
        assert!(intersection_membership(&s, &pr("p0 | ~p0")).unwrap());
        assert_eq!(intersection_membership(&[], &pr("p0")), Err(EmptyTheorySet));
    }

    #[test]
    fn full_intersection_is_empty() {
        let all: Vec<Valuation> = valuations_over(Flavor::B4, &BTreeSet::from([0, 1])).collect();
        assert_eq!(all.len(), 16);
        for a in desk_universe(&[0, 1], 3) {
            assert!(!intersection_membership(&all, &a).unwrap(), "{a}");
        }
    }

    #[test]
    fn singletons_are_prime() {
        let universe = desk_universe(&[0], 3);
        let singles: Vec<Vec<Valuation>> = valuations_over(Flavor::B4, &BTreeSet::from([0])).map(|v| vec![v]).collect();
        let mut pool = singles.clone();
        for i in 0..singles.len() {
            for j in i + 1..singles.len() {
                pool.push(vec![singles[i][0].clone(), singles[j][0].clone()]);
            }
        }
        for s in &singles {
            assert!(check_prime(s, &pool, &universe));
        }
        let classical_pair = vec![b4(&[(0, One)]), b4(&[(0, Zero)])];
        assert!(!check_prime(&classical_pair, &pool, &universe));
    }

    #[test]
    fn desk_universe_sizes() {
        assert_eq!(desk_universe(&[0], 1).len(), 1);
        assert_eq!(desk_universe(&[0], 2).len(), 4);
        assert_eq!(desk_universe(&[0], 3).len(), 37);
        assert_eq!(desk_universe(&[0, 1], 3).len(), 302);
        let u = desk_universe(&[0, 1], 3);
        let set: BTreeSet<&Prop> = u.iter().collect();
        for a in &u {
            assert!(a.depth() <= 3);
            for s in a.subformulas() {
                assert!(set.contains(s));
            }
        }
    }

    #[test]
    fn valuation_text() {
        let v = Valuation::parse("p0=1 p1=B p2=N p3=0", Flavor::B4).unwrap();
        assert_eq!(v.value(1), Both);
        assert_eq!(v.to_string(), "p0=1 p1=B p2=N p3=0");
        assert_eq!(
            Valuation::parse("p0=B", Flavor::K3),
            Err(ValuationError::FlavorMismatch { flavor: Flavor::K3, value: Both })
        );
        assert!(matches!(Valuation::parse("q0=1", Flavor::B4), Err(ValuationError::BadToken(_))));
        assert_eq!(Valuation::parse("p0=1 p0=0", Flavor::B4), Err(ValuationError::Duplicate(0)));
        assert_eq!("K3".parse::<Flavor>().unwrap(), Flavor::K3);
        assert_eq!("Classical".parse::<Flavor>().unwrap(), Flavor::Classical);
    }

    #[test]
    fn classical_helpers() {
        assert!(is_classical_contradiction(&pr("p0 & ~p0")));
        assert!(!is_classical_contradiction(&pr("p0 | ~p1")));
        assert!(is_classical_tautology(&pr("p0 | ~p0")));
        assert!(is_classical_tautology(&pr("p0 => p0")));
        assert!(!is_classical_tautology(&pr("p0")));
    }
}
