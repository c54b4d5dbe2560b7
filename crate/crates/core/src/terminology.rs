//! Terminological axioms and their validation.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::concept::{is_reserved, Concept, ConceptSymbol, RoleSymbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AxiomKind {
    /// `A ≐ C`: necessary and sufficient conditions.
    Definition,
    /// `A ⊑ C`: necessary conditions only.
    Specialization,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Axiom {
    pub lhs: ConceptSymbol,
    pub rhs: Concept,
    pub kind: AxiomKind,
}

impl Axiom {
    pub fn definition(lhs: impl AsRef<str>, rhs: Concept) -> Self {
        Self {
            lhs: ConceptSymbol::new(lhs),
            rhs,
            kind: AxiomKind::Definition,
        }
    }

    pub fn specialization(lhs: impl AsRef<str>, rhs: Concept) -> Self {
        Self {
            lhs: ConceptSymbol::new(lhs),
            rhs,
            kind: AxiomKind::Specialization,
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.kind {
            AxiomKind::Definition => "=",
            AxiomKind::Specialization => "<",
        };
        write!(f, "{} {} {}", self.lhs, op, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TerminologyError {
    #[error("concept symbol `{0}` is defined more than once")]
    DuplicateDefinition(ConceptSymbol),
    #[error("terminological cycle: {}", format_path(.0))]
    TerminologicalCycle(Vec<ConceptSymbol>),
    #[error("undeclared symbol `{0}`")]
    UndeclaredSymbol(String),
    #[error("`{0}` is reserved and cannot be defined")]
    ReservedSymbol(String),
    #[error("`{0}` is used both as a concept and as a role")]
    NamespaceClash(String),
}

fn format_path(path: &[ConceptSymbol]) -> String {
    path.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(" -> ")
}

/// A validated, acyclic set of axioms with unique left-hand sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Terminology {
    axioms: Vec<Axiom>,
    signature: Vec<ConceptSymbol>,
    roles: Vec<RoleSymbol>,
    order: Vec<ConceptSymbol>,
    by_lhs: HashMap<ConceptSymbol, usize>,
}

impl Terminology {
    pub fn empty() -> Self {
        Self::validate(&[], &[], Vec::new()).expect("empty terminology is valid")
    }

    /// Signature consists of the left-hand sides only; every symbol used on a
    /// right-hand side must also be defined or specialized.
    pub fn from_axioms(axioms: Vec<Axiom>) -> Result<Self, TerminologyError> {
        Self::validate(&[], &[], axioms)
    }

    /// Validates `axioms` against explicitly declared concepts and roles.
    ///
    /// The signature is the declared concepts followed by any further
    /// left-hand sides, in first-appearance order. Roles used in axioms are
    /// declared implicitly.
    pub fn validate(
        concepts: &[ConceptSymbol],
        roles: &[RoleSymbol],
        axioms: Vec<Axiom>,
    ) -> Result<Self, TerminologyError> {
        let mut signature: Vec<ConceptSymbol> = Vec::new();
        for s in concepts {
            if is_reserved(s.as_str()) {
                return Err(TerminologyError::ReservedSymbol(s.to_string()));
            }
            if !signature.contains(s) {
                signature.push(s.clone());
            }
        }

        let mut by_lhs = HashMap::new();
        for (i, ax) in axioms.iter().enumerate() {
            if is_reserved(ax.lhs.as_str()) {
                return Err(TerminologyError::ReservedSymbol(ax.lhs.to_string()));
            }
            if by_lhs.insert(ax.lhs.clone(), i).is_some() {
                return Err(TerminologyError::DuplicateDefinition(ax.lhs.clone()));
            }
            if !signature.contains(&ax.lhs) {
                signature.push(ax.lhs.clone());
            }
        }

        let mut all_roles: Vec<RoleSymbol> = Vec::new();
        for r in roles.iter().cloned().chain(axioms.iter().flat_map(|a| a.rhs.roles())) {
            if !all_roles.contains(&r) {
                all_roles.push(r);
            }
        }
        for r in &all_roles {
            if is_reserved(r.as_str()) {
                return Err(TerminologyError::ReservedSymbol(r.to_string()));
            }
            if signature.iter().any(|s| s.as_str() == r.as_str()) {
                return Err(TerminologyError::NamespaceClash(r.to_string()));
            }
        }

        for ax in &axioms {
            for s in ax.rhs.symbols() {
                if !signature.contains(&s) {
                    return Err(TerminologyError::UndeclaredSymbol(s.to_string()));
                }
            }
        }

        let order = topological_order(&signature, &axioms, &by_lhs)?;
        Ok(Self {
            axioms,
            signature,
            roles: all_roles,
            order,
            by_lhs,
        })
    }

    pub fn axioms(&self) -> &[Axiom] {
        &self.axioms
    }

    /// All concept symbols, primitive and defined, in declaration order.
    pub fn signature(&self) -> &[ConceptSymbol] {
        &self.signature
    }

    pub fn roles(&self) -> &[RoleSymbol] {
        &self.roles
    }

    /// Symbols ordered so that every symbol follows those its axiom uses.
    pub fn topological_order(&self) -> &[ConceptSymbol] {
        &self.order
    }

    pub fn axiom_for(&self, symbol: &ConceptSymbol) -> Option<&Axiom> {
        self.by_lhs.get(symbol).map(|&i| &self.axioms[i])
    }

    pub fn contains_symbol(&self, symbol: &ConceptSymbol) -> bool {
        self.signature.contains(symbol)
    }

    pub fn contains_role(&self, role: &RoleSymbol) -> bool {
        self.roles.contains(role)
    }

    /// Checks that a concept only mentions known symbols.
    pub fn check_concept(&self, c: &Concept) -> Result<(), TerminologyError> {
        for s in c.symbols() {
            if !self.contains_symbol(&s) {
                return Err(TerminologyError::UndeclaredSymbol(s.to_string()));
            }
        }
        for r in c.roles() {
            if !self.contains_role(&r) {
                return Err(TerminologyError::UndeclaredSymbol(r.to_string()));
            }
        }
        Ok(())
    }
}

fn topological_order(
    signature: &[ConceptSymbol],
    axioms: &[Axiom],
    by_lhs: &HashMap<ConceptSymbol, usize>,
) -> Result<Vec<ConceptSymbol>, TerminologyError> {
    let position: HashMap<&ConceptSymbol, usize> =
        signature.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let uses: Vec<Vec<usize>> = signature
        .iter()
        .map(|s| match by_lhs.get(s) {
            Some(&ax) => axioms[ax].rhs.symbols().iter().map(|u| position[u]).collect(),
            None => Vec::new(),
        })
        .collect();

    if let Some(cycle) = find_cycle(&uses) {
        return Err(TerminologyError::TerminologicalCycle(
            cycle.into_iter().map(|i| signature[i].clone()).collect(),
        ));
    }

    // Kahn's algorithm; ties broken by declaration order.
    let n = signature.len();
    let mut pending: Vec<usize> = uses.iter().map(|u| u.len()).collect();
    let mut users: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, us) in uses.iter().enumerate() {
        for &u in us {
            users[u].push(i);
        }
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&i| pending[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(i) = ready.pop_first() {
        order.push(signature[i].clone());
        for &j in &users[i] {
            pending[j] -= 1;
            if pending[j] == 0 {
                ready.insert(j);
            }
        }
    }
    Ok(order)
}

fn find_cycle(uses: &[Vec<usize>]) -> Option<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    fn visit(v: usize, uses: &[Vec<usize>], marks: &mut [Mark], stack: &mut Vec<usize>) -> Option<Vec<usize>> {
        marks[v] = Mark::Active;
        stack.push(v);
        for &w in &uses[v] {
            match marks[w] {
                Mark::Active => {
                    let start = stack.iter().position(|&x| x == w).unwrap();
                    let mut cycle = stack[start..].to_vec();
                    cycle.push(w);
                    return Some(cycle);
                }
                Mark::New => {
                    if let Some(c) = visit(w, uses, marks, stack) {
                        return Some(c);
                    }
                }
                Mark::Done => {}
            }
        }
        stack.pop();
        marks[v] = Mark::Done;
        None
    }
    let mut marks = vec![Mark::New; uses.len()];
    for v in 0..uses.len() {
        if marks[v] == Mark::New {
            if let Some(c) = visit(v, uses, &mut marks, &mut Vec::new()) {
                return Some(c);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: &str) -> Concept {
        Concept::atom(s)
    }

    pub(crate) fn example2_axioms() -> Vec<Axiom> {
        vec![
            Axiom::specialization("animal", Concept::Top),
            Axiom::specialization("flying", Concept::Top),
            Axiom::definition("flying_object", Concept::all("moves_by", sym("flying"))),
            Axiom::specialization("antarctic_animal", sym("animal")),
            Axiom::specialization("bird", sym("animal")),
            Axiom::definition("antarctic_bird", Concept::and(sym("antarctic_animal"), sym("bird"))),
            Axiom::specialization("penguin", sym("antarctic_bird")),
        ]
    }

    #[test]
    fn example_two_is_a_terminology() {
        let t = Terminology::from_axioms(example2_axioms()).unwrap();
        assert_eq!(t.signature().len(), 7);
        assert_eq!(t.roles(), &[RoleSymbol::new("moves_by")]);
        let order: Vec<&str> = t.topological_order().iter().map(|s| s.as_str()).collect();
        let pos = |s: &str| order.iter().position(|x| *x == s).unwrap();
        assert!(pos("flying") < pos("flying_object"));
        assert!(pos("antarctic_bird") < pos("penguin"));
        assert!(pos("bird") < pos("antarctic_bird"));
    }

    #[test]
    fn self_reference_is_a_cycle() {
        let err = Terminology::from_axioms(vec![Axiom::definition(
            "A",
            Concept::all("R", sym("A")),
        )])
        .unwrap_err();
        assert_eq!(
            err,
            TerminologyError::TerminologicalCycle(vec!["A".into(), "A".into()])
        );
    }

    #[test]
    fn longer_cycle_reports_path() {
        let err = Terminology::from_axioms(vec![
            Axiom::specialization("A", sym("B")),
            Axiom::specialization("B", sym("C")),
            Axiom::definition("C", Concept::not(sym("A"))),
        ])
        .unwrap_err();
        assert!(matches!(err, TerminologyError::TerminologicalCycle(ref p) if p.len() == 4));
    }

    #[test]
    fn duplicate_lhs_rejected() {
        let err = Terminology::from_axioms(vec![
            Axiom::specialization("A", Concept::Top),
            Axiom::definition("A", sym("B")),
        ])
        .unwrap_err();
        assert_eq!(err, TerminologyError::DuplicateDefinition("A".into()));
    }

    #[test]
    fn undeclared_and_reserved() {
        let err = Terminology::from_axioms(vec![Axiom::specialization("A", sym("B"))]).unwrap_err();
        assert_eq!(err, TerminologyError::UndeclaredSymbol("B".into()));
        let ok = Terminology::validate(&["B".into()], &[], vec![Axiom::specialization("A", sym("B"))]);
        assert!(ok.is_ok());
        let err = Terminology::from_axioms(vec![Axiom::specialization("top", Concept::Top)]).unwrap_err();
        assert_eq!(err, TerminologyError::ReservedSymbol("top".into()));
    }

    #[test]
    fn role_and_concept_namespaces_disjoint() {
        let err = Terminology::from_axioms(vec![
            Axiom::specialization("r", Concept::Top),
            Axiom::specialization("A", Concept::some("r", Concept::Top)),
        ])
        .unwrap_err();
        assert_eq!(err, TerminologyError::NamespaceClash("r".into()));
    }

    #[test]
    fn permutation_keeps_signature_set_and_valid_order() {
        let mut axioms = example2_axioms();
        axioms.reverse();
        let t = Terminology::from_axioms(axioms).unwrap();
        let base = Terminology::from_axioms(example2_axioms()).unwrap();
        let mut a: Vec<_> = t.signature().to_vec();
        let mut b: Vec<_> = base.signature().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        for ax in t.axioms() {
            let pos = |s: &ConceptSymbol| t.topological_order().iter().position(|x| x == s).unwrap();
            for used in ax.rhs.symbols() {
                assert!(pos(&used) < pos(&ax.lhs));
            }
        }
    }
}
