//! Tableau decision procedure for concept satisfiability with respect to an
//! acyclic terminology.
//!
//! Defined and specialized symbols are unfolded lazily: when `A` enters a node
//! label its axiom's right-hand side is added, and for definitions `¬A` adds
//! the negated right-hand side. A specialization `A ⊑ C` behaves like
//! `A ≐ A* ⊓ C` for a fresh marker `A*`, so `¬A` adds nothing. Acyclicity
//! bounds the unfolding depth, so no blocking is needed.

use std::collections::{BTreeSet, HashMap};

use crate::concept::{Concept, ConceptSymbol};
use crate::terminology::{AxiomKind, Terminology, TerminologyError};

/// Satisfiability and subsumption queries against one terminology.
#[derive(Debug, Clone)]
pub struct Reasoner<'t> {
    tbox: &'t Terminology,
    unfold_pos: HashMap<ConceptSymbol, Concept>,
    unfold_neg: HashMap<ConceptSymbol, Concept>,
}

impl<'t> Reasoner<'t> {
    pub fn new(tbox: &'t Terminology) -> Self {
        let mut unfold_pos = HashMap::new();
        let mut unfold_neg = HashMap::new();
        for ax in tbox.axioms() {
            unfold_pos.insert(ax.lhs.clone(), ax.rhs.nnf());
            if ax.kind == AxiomKind::Definition {
                unfold_neg.insert(ax.lhs.clone(), Concept::not(ax.rhs.clone()).nnf());
            }
        }
        Self {
            tbox,
            unfold_pos,
            unfold_neg,
        }
    }

    pub fn terminology(&self) -> &'t Terminology {
        self.tbox
    }

    pub fn is_satisfiable(&self, c: &Concept) -> Result<bool, TerminologyError> {
        self.tbox.check_concept(c)?;
        Ok(self.node_satisfiable(vec![c.nnf()]))
    }

    /// `subsumee ⪯ subsumer`: every model puts the subsumee inside the subsumer.
    pub fn subsumes(&self, subsumer: &Concept, subsumee: &Concept) -> Result<bool, TerminologyError> {
        let witness = Concept::and(subsumee.clone(), Concept::not(subsumer.clone()));
        Ok(!self.is_satisfiable(&witness)?)
    }

    /// `c ⊓ d` is unsatisfiable.
    pub fn disjoint(&self, c: &Concept, d: &Concept) -> Result<bool, TerminologyError> {
        Ok(!self.is_satisfiable(&Concept::and(c.clone(), d.clone()))?)
    }

    pub fn equivalent(&self, c: &Concept, d: &Concept) -> Result<bool, TerminologyError> {
        Ok(self.subsumes(c, d)? && self.subsumes(d, c)?)
    }

    fn node_satisfiable(&self, initial: Vec<Concept>) -> bool {
        let mut label = BTreeSet::new();
        self.expand(&mut label, initial)
    }

    fn expand(&self, label: &mut BTreeSet<Concept>, mut pending: Vec<Concept>) -> bool {
        while let Some(c) = pending.pop() {
            if label.contains(&c) {
                continue;
            }
            match &c {
                Concept::Bottom => return false,
                Concept::Top => continue,
                Concept::Atom(s) => {
                    if label.contains(&Concept::not(c.clone())) {
                        return false;
                    }
                    if let Some(u) = self.unfold_pos.get(s) {
                        pending.push(u.clone());
                    }
                }
                Concept::Not(inner) => {
                    if label.contains(inner) {
                        return false;
                    }
                    if let Concept::Atom(s) = inner.as_ref() {
                        if let Some(u) = self.unfold_neg.get(s) {
                            pending.push(u.clone());
                        }
                    }
                }
                Concept::And(cs) => pending.extend(cs.iter().cloned()),
                Concept::Or(_) | Concept::Forall(..) | Concept::Exists(..) => {}
            }
            label.insert(c);
        }

        let open_disjunction = label.iter().find_map(|c| match c {
            Concept::Or(ds)
                if !ds
                    .iter()
                    .any(|d| *d == Concept::Top || label.contains(d)) =>
            {
                Some(ds.clone())
            }
            _ => None,
        });
        if let Some(ds) = open_disjunction {
            return ds.into_iter().any(|d| {
                let mut branch = label.clone();
                self.expand(&mut branch, vec![d])
            });
        }

        for c in label.iter() {
            if let Concept::Exists(role, filler) = c {
                let mut successor = vec![(**filler).clone()];
                successor.extend(label.iter().filter_map(|d| match d {
                    Concept::Forall(r, g) if r == role => Some((**g).clone()),
                    _ => None,
                }));
                if !self.node_satisfiable(successor) {
                    return false;
                }
            }
        }
        true
    }
}

pub fn is_satisfiable(c: &Concept, t: &Terminology) -> Result<bool, TerminologyError> {
    Reasoner::new(t).is_satisfiable(c)
}

/// True when `subsumee ⪯_T subsumer`.
pub fn subsumes(subsumer: &Concept, subsumee: &Concept, t: &Terminology) -> Result<bool, TerminologyError> {
    Reasoner::new(t).subsumes(subsumer, subsumee)
}
