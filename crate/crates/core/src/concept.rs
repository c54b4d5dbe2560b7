//! Concept expressions of the description language and their normal forms.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

macro_rules! symbol_type {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(Arc<str>);

        impl $name {
            pub fn new(name: impl AsRef<str>) -> Self {
                Self(Arc::from(name.as_ref()))
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                Self::new(s)
            }
        }
    };
}

symbol_type!(
    /// Name of a concept (a unary predicate over the domain).
    ConceptSymbol
);
symbol_type!(
    /// Name of a role (a binary relation over the domain).
    RoleSymbol
);

/// Words that can never name a concept or role.
pub const RESERVED: &[&str] = &[
    "top", "bottom", "and", "or", "not", "all", "some", "concept", "role", "pcond",
];

pub fn is_reserved(name: &str) -> bool {
    RESERVED.contains(&name)
}

/// A concept expression. `And`/`Or` are n-ary with at least two operands.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Concept {
    Top,
    Bottom,
    Atom(ConceptSymbol),
    Not(Box<Concept>),
    And(Vec<Concept>),
    Or(Vec<Concept>),
    Forall(RoleSymbol, Box<Concept>),
    Exists(RoleSymbol, Box<Concept>),
}

impl Concept {
    pub fn atom(name: impl AsRef<str>) -> Concept {
        Concept::Atom(ConceptSymbol::new(name))
    }

    pub fn not(c: Concept) -> Concept {
        Concept::Not(Box::new(c))
    }

    pub fn and(a: Concept, b: Concept) -> Concept {
        Concept::And(vec![a, b])
    }

    pub fn or(a: Concept, b: Concept) -> Concept {
        Concept::Or(vec![a, b])
    }

    pub fn all(role: impl AsRef<str>, c: Concept) -> Concept {
        Concept::Forall(RoleSymbol::new(role), Box::new(c))
    }

    pub fn some(role: impl AsRef<str>, c: Concept) -> Concept {
        Concept::Exists(RoleSymbol::new(role), Box::new(c))
    }

    /// Every concept symbol mentioned, in first-occurrence order.
    pub fn symbols(&self) -> Vec<ConceptSymbol> {
        let mut out = Vec::new();
        self.walk(&mut |c| {
            if let Concept::Atom(s) = c {
                if !out.contains(s) {
                    out.push(s.clone());
                }
            }
        });
        out
    }

    pub fn roles(&self) -> Vec<RoleSymbol> {
        let mut out = Vec::new();
        self.walk(&mut |c| {
            if let Concept::Forall(r, _) | Concept::Exists(r, _) = c {
                if !out.contains(r) {
                    out.push(r.clone());
                }
            }
        });
        out
    }

    /// Pre-order traversal.
    pub fn walk(&self, f: &mut impl FnMut(&Concept)) {
        f(self);
        match self {
            Concept::Top | Concept::Bottom | Concept::Atom(_) => {}
            Concept::Not(c) | Concept::Forall(_, c) | Concept::Exists(_, c) => c.walk(f),
            Concept::And(cs) | Concept::Or(cs) => cs.iter().for_each(|c| c.walk(f)),
        }
    }

    pub fn has_role_constructor(&self) -> bool {
        let mut found = false;
        self.walk(&mut |c| {
            if matches!(c, Concept::Forall(..) | Concept::Exists(..)) {
                found = true;
            }
        });
        found
    }

    /// Negation normal form: negation only in front of symbols. No other
    /// simplification beyond flattening nested `And`/`Or`.
    pub fn nnf(&self) -> Concept {
        nnf(self, false)
    }

    /// Canonical representative; see [`normalize`].
    pub fn normalized(&self) -> Concept {
        normalize(self)
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Concept::Top => f.write_str("top"),
            Concept::Bottom => f.write_str("bottom"),
            Concept::Atom(s) => write!(f, "{s}"),
            Concept::Not(c) => write!(f, "(not {c})"),
            Concept::And(cs) => write_nary(f, "and", cs),
            Concept::Or(cs) => write_nary(f, "or", cs),
            Concept::Forall(r, c) => write!(f, "(all {r} {c})"),
            Concept::Exists(r, c) => write!(f, "(some {r} {c})"),
        }
    }
}

fn write_nary(f: &mut fmt::Formatter<'_>, op: &str, cs: &[Concept]) -> fmt::Result {
    write!(f, "({op}")?;
    for c in cs {
        write!(f, " {c}")?;
    }
    f.write_str(")")
}

fn nnf(c: &Concept, negated: bool) -> Concept {
    match (c, negated) {
        (Concept::Top, false) | (Concept::Bottom, true) => Concept::Top,
        (Concept::Top, true) | (Concept::Bottom, false) => Concept::Bottom,
        (Concept::Atom(_), false) => c.clone(),
        (Concept::Atom(_), true) => Concept::not(c.clone()),
        (Concept::Not(inner), _) => nnf(inner, !negated),
        (Concept::And(cs), false) | (Concept::Or(cs), true) => {
            Concept::And(flatten(cs.iter().map(|x| nnf(x, negated)), true))
        }
        (Concept::Or(cs), false) | (Concept::And(cs), true) => {
            Concept::Or(flatten(cs.iter().map(|x| nnf(x, negated)), false))
        }
        (Concept::Forall(r, inner), false) | (Concept::Exists(r, inner), true) => {
            Concept::Forall(r.clone(), Box::new(nnf(inner, negated)))
        }
        (Concept::Exists(r, inner), false) | (Concept::Forall(r, inner), true) => {
            Concept::Exists(r.clone(), Box::new(nnf(inner, negated)))
        }
    }
}

fn flatten(items: impl Iterator<Item = Concept>, conj: bool) -> Vec<Concept> {
    let mut out = Vec::new();
    for item in items {
        match item {
            Concept::And(cs) if conj => out.extend(cs),
            Concept::Or(cs) if !conj => out.extend(cs),
            other => out.push(other),
        }
    }
    out
}

/// Above this many distinct propositional variables the canonical form is
/// skipped in favour of a sorted, simplified NNF.
const CANONICAL_VAR_LIMIT: usize = 10;

/// Canonical form of a concept.
///
/// Quantified subterms are normalized recursively and then treated as opaque
/// propositional variables (`all R C` is read as the negation of
/// `some R (not C)`). The boolean skeleton is rewritten to the disjunction of
/// all its prime implicants, literals and disjuncts sorted by their printed
/// form. The result is in negation normal form, flattened, free of `top` and
/// `bottom` except as the whole concept, and identical for any two concepts
/// with the same truth table over their propositional variables.
pub fn normalize(c: &Concept) -> Concept {
    let mut vars = VarTable::default();
    let skeleton = Skeleton::build(c, &mut vars);
    if vars.keys.len() > CANONICAL_VAR_LIMIT {
        return simplify_nnf(&c.nnf());
    }
    vars.canonical(&skeleton)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum VarKey {
    Symbol(ConceptSymbol),
    /// `some R C` with `C` already normalized.
    Exists(RoleSymbol, Concept),
}

#[derive(Default)]
struct VarTable {
    keys: Vec<VarKey>,
    index: HashMap<VarKey, usize>,
}

impl VarTable {
    fn intern(&mut self, key: VarKey) -> usize {
        if let Some(&i) = self.index.get(&key) {
            return i;
        }
        self.keys.push(key.clone());
        self.index.insert(key, self.keys.len() - 1);
        self.keys.len() - 1
    }

    fn literal(&self, var: usize, positive: bool) -> Concept {
        match (&self.keys[var], positive) {
            (VarKey::Symbol(s), true) => Concept::Atom(s.clone()),
            (VarKey::Symbol(s), false) => Concept::not(Concept::Atom(s.clone())),
            (VarKey::Exists(r, c), true) => Concept::Exists(r.clone(), Box::new(c.clone())),
            (VarKey::Exists(r, c), false) => {
                Concept::Forall(r.clone(), Box::new(normalize(&Concept::not(c.clone()))))
            }
        }
    }

    fn canonical(&self, skeleton: &Skeleton) -> Concept {
        let k = self.keys.len();
        let minterms: Vec<u32> = (0..1u32 << k).filter(|&a| skeleton.eval(a)).collect();
        if minterms.is_empty() {
            return Concept::Bottom;
        }
        let full = if k == 0 { 0 } else { u32::MAX >> (32 - k) };
        let primes = prime_implicants(&minterms, full);
        if primes.iter().any(|cube| cube.mask == 0) {
            return Concept::Top;
        }
        let mut disjuncts: Vec<Concept> = primes
            .iter()
            .map(|cube| {
                let mut lits: Vec<Concept> = (0..k)
                    .filter(|&v| cube.mask & (1 << v) != 0)
                    .map(|v| self.literal(v, cube.value & (1 << v) != 0))
                    .collect();
                if lits.len() == 1 {
                    lits.pop().unwrap()
                } else {
                    sort_by_print(&mut lits);
                    Concept::And(lits)
                }
            })
            .collect();
        if disjuncts.len() == 1 {
            disjuncts.pop().unwrap()
        } else {
            sort_by_print(&mut disjuncts);
            Concept::Or(disjuncts)
        }
    }
}

fn sort_by_print(items: &mut Vec<Concept>) {
    items.sort_by_cached_key(|c| c.to_string());
    items.dedup();
}

/// Boolean skeleton over interned variables.
enum Skeleton {
    Const(bool),
    Var(usize),
    Not(Box<Skeleton>),
    And(Vec<Skeleton>),
    Or(Vec<Skeleton>),
}

impl Skeleton {
    fn build(c: &Concept, vars: &mut VarTable) -> Skeleton {
        match c {
            Concept::Top => Skeleton::Const(true),
            Concept::Bottom => Skeleton::Const(false),
            Concept::Atom(s) => Skeleton::Var(vars.intern(VarKey::Symbol(s.clone()))),
            Concept::Not(inner) => Skeleton::Not(Box::new(Skeleton::build(inner, vars))),
            Concept::And(cs) => Skeleton::And(cs.iter().map(|x| Skeleton::build(x, vars)).collect()),
            Concept::Or(cs) => Skeleton::Or(cs.iter().map(|x| Skeleton::build(x, vars)).collect()),
            Concept::Exists(r, inner) => match normalize(inner) {
                Concept::Bottom => Skeleton::Const(false),
                n => Skeleton::Var(vars.intern(VarKey::Exists(r.clone(), n))),
            },
            Concept::Forall(r, inner) => match normalize(&Concept::not((**inner).clone())) {
                Concept::Bottom => Skeleton::Const(true),
                n => Skeleton::Not(Box::new(Skeleton::Var(
                    vars.intern(VarKey::Exists(r.clone(), n)),
                ))),
            },
        }
    }

    fn eval(&self, assignment: u32) -> bool {
        match self {
            Skeleton::Const(b) => *b,
            Skeleton::Var(v) => assignment & (1 << v) != 0,
            Skeleton::Not(s) => !s.eval(assignment),
            Skeleton::And(ss) => ss.iter().all(|s| s.eval(assignment)),
            Skeleton::Or(ss) => ss.iter().any(|s| s.eval(assignment)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Cube {
    /// Bits the cube constrains.
    mask: u32,
    /// Required values on `mask`; zero elsewhere.
    value: u32,
}

/// Quine–McCluskey merging; returns all prime implicants in sorted order.
fn prime_implicants(minterms: &[u32], full: u32) -> Vec<Cube> {
    let mut current: HashSet<Cube> = minterms
        .iter()
        .map(|&m| Cube { mask: full, value: m })
        .collect();
    let mut primes = Vec::new();
    while !current.is_empty() {
        let mut next = HashSet::new();
        let mut merged = HashSet::new();
        for cube in &current {
            let mut bits = cube.mask;
            while bits != 0 {
                let bit = bits & bits.wrapping_neg();
                bits &= bits - 1;
                let partner = Cube { mask: cube.mask, value: cube.value ^ bit };
                if current.contains(&partner) {
                    merged.insert(*cube);
                    next.insert(Cube {
                        mask: cube.mask & !bit,
                        value: cube.value & !bit,
                    });
                }
            }
        }
        primes.extend(current.iter().filter(|c| !merged.contains(c)).copied());
        current = next;
    }
    primes.sort();
    primes
}

/// Fallback simplifier for concepts with too many variables: sorted,
/// deduplicated, flattened NNF with `top`/`bottom` absorption and
/// complementary-literal detection.
fn simplify_nnf(c: &Concept) -> Concept {
    match c {
        Concept::Top | Concept::Bottom | Concept::Atom(_) | Concept::Not(_) => c.clone(),
        Concept::Forall(r, inner) => match simplify_nnf(inner) {
            Concept::Top => Concept::Top,
            s => Concept::Forall(r.clone(), Box::new(s)),
        },
        Concept::Exists(r, inner) => match simplify_nnf(inner) {
            Concept::Bottom => Concept::Bottom,
            s => Concept::Exists(r.clone(), Box::new(s)),
        },
        Concept::And(cs) | Concept::Or(cs) => {
            let conj = matches!(c, Concept::And(_));
            let (unit, zero) = if conj {
                (Concept::Top, Concept::Bottom)
            } else {
                (Concept::Bottom, Concept::Top)
            };
            let mut items: Vec<Concept> = flatten(cs.iter().map(simplify_nnf), conj)
                .into_iter()
                .filter(|x| *x != unit)
                .collect();
            if items.contains(&zero) {
                return zero;
            }
            let literals: BTreeMap<&Concept, ()> = items.iter().map(|x| (x, ())).collect();
            for item in &items {
                if let Concept::Not(inner) = item {
                    if literals.contains_key(inner.as_ref()) {
                        return zero;
                    }
                }
            }
            sort_by_print(&mut items);
            match items.len() {
                0 => unit,
                1 => items.pop().unwrap(),
                _ if conj => Concept::And(items),
                _ => Concept::Or(items),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a() -> Concept {
        Concept::atom("A")
    }
    fn b() -> Concept {
        Concept::atom("B")
    }

    #[test]
    fn double_negation() {
        assert_eq!(normalize(&Concept::not(Concept::not(a()))), a());
    }

    #[test]
    fn de_morgan() {
        let c = Concept::not(Concept::and(a(), b()));
        assert_eq!(
            normalize(&c),
            Concept::Or(vec![Concept::not(a()), Concept::not(b())])
        );
    }

    #[test]
    fn top_and_duplicates_absorbed() {
        assert_eq!(normalize(&Concept::and(a(), Concept::Top)), a());
        assert_eq!(normalize(&Concept::and(a(), a())), a());
        assert_eq!(normalize(&Concept::or(a(), Concept::Bottom)), a());
        assert_eq!(normalize(&Concept::and(a(), Concept::not(a()))), Concept::Bottom);
        assert_eq!(normalize(&Concept::or(a(), Concept::not(a()))), Concept::Top);
    }

    #[test]
    fn operands_sorted_and_flattened() {
        let c = Concept::and(b(), Concept::and(Concept::atom("C"), a()));
        assert_eq!(
            normalize(&c),
            Concept::And(vec![a(), b(), Concept::atom("C")])
        );
    }

    #[test]
    fn quantifiers_normalize_inside() {
        let c = Concept::not(Concept::all("r", Concept::and(a(), Concept::Top)));
        assert_eq!(normalize(&c), Concept::some("r", Concept::not(a())));
        assert_eq!(normalize(&Concept::all("r", Concept::Top)), Concept::Top);
        assert_eq!(normalize(&Concept::some("r", Concept::Bottom)), Concept::Bottom);
        // (some r A) and (all r (not A)) are complementary literals.
        let clash = Concept::and(
            Concept::some("r", a()),
            Concept::all("r", Concept::not(a())),
        );
        assert_eq!(normalize(&clash), Concept::Bottom);
    }

    #[test]
    fn nnf_pushes_negation() {
        let c = Concept::not(Concept::some("r", Concept::or(a(), Concept::not(b()))));
        assert_eq!(
            c.nnf(),
            Concept::all("r", Concept::And(vec![Concept::not(a()), b()]))
        );
    }

    #[test]
    fn display_roundtrips_shape() {
        let c = Concept::and(a(), Concept::all("moves_by", Concept::atom("flying")));
        assert_eq!(c.to_string(), "(and A (all moves_by flying))");
    }

    fn eval(c: &Concept, assignment: &dyn Fn(&str) -> bool) -> bool {
        match c {
            Concept::Top => true,
            Concept::Bottom => false,
            Concept::Atom(s) => assignment(s.as_str()),
            Concept::Not(x) => !eval(x, assignment),
            Concept::And(xs) => xs.iter().all(|x| eval(x, assignment)),
            Concept::Or(xs) => xs.iter().any(|x| eval(x, assignment)),
            Concept::Forall(..) | Concept::Exists(..) => unreachable!(),
        }
    }

    pub(crate) fn arb_prop_concept() -> impl Strategy<Value = Concept> {
        let leaf = prop_oneof![
            Just(Concept::Top),
            Just(Concept::Bottom),
            (0usize..4).prop_map(|i| Concept::atom(["A", "B", "C", "D"][i])),
        ];
        leaf.prop_recursive(4, 24, 3, |inner| {
            prop_oneof![
                inner.clone().prop_map(Concept::not),
                prop::collection::vec(inner.clone(), 2..4).prop_map(Concept::And),
                prop::collection::vec(inner, 2..4).prop_map(Concept::Or),
            ]
        })
    }

    const NAMES: [&str; 4] = ["A", "B", "C", "D"];

    fn truth_table(c: &Concept) -> Vec<bool> {
        (0..16u32)
            .map(|bits| {
                eval(c, &|s| {
                    let i = NAMES.iter().position(|n| *n == s).unwrap();
                    bits & (1 << i) != 0
                })
            })
            .collect()
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent(c in arb_prop_concept()) {
            let n = normalize(&c);
            prop_assert_eq!(normalize(&n), n);
        }

        #[test]
        fn normalize_preserves_truth_table(c in arb_prop_concept()) {
            prop_assert_eq!(truth_table(&normalize(&c)), truth_table(&c));
        }

        #[test]
        fn equivalent_concepts_share_normal_form(c in arb_prop_concept(), d in arb_prop_concept()) {
            if truth_table(&c) == truth_table(&d) {
                prop_assert_eq!(normalize(&c), normalize(&d));
            }
            // c and (c or (c and d)) are always equivalent.
            let absorbed = Concept::or(c.clone(), Concept::and(c.clone(), d));
            prop_assert_eq!(normalize(&absorbed), normalize(&c));
        }
    }
}
