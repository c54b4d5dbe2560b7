//! Atoms of the Lindenbaum algebra over the concept signature.
//!
//! An atom fixes the sign of every concept symbol. Atoms whose conjunction is
//! unsatisfiable under the terminology are dropped, so terminological axioms
//! act on the probabilistic model purely by pruning.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::concept::{normalize, Concept, ConceptSymbol};
use crate::rational::Rational;
use crate::tableau::Reasoner;
use crate::terminology::{AxiomKind, Terminology, TerminologyError};

pub const DEFAULT_ATOM_CAP: usize = 16;
const HARD_ATOM_CAP: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AtomError {
    #[error("signature has {size} symbols; at most {cap} are supported (2^{size} candidate atoms)")]
    SignatureTooLarge { size: usize, cap: usize },
    #[error("`{concept}` uses a role restriction that is not the definition of a named concept; introduce a definition such as `name = {concept}.` and refer to the name instead")]
    NonPropositionalQuery { concept: String },
    #[error(transparent)]
    Terminology(#[from] TerminologyError),
    #[error("cardinalities sum to {sum}, expected domain size {domain}")]
    CardinalityMismatch { sum: u64, domain: u64 },
    #[error("domain size must be positive")]
    EmptyDomain,
    #[error("atom is not part of this space")]
    UnknownAtom,
}

/// Sign vector over the ordered signature; bit `i` set means symbol `i`
/// occurs positively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    bits: u64,
}

impl Atom {
    pub fn from_signs(signs: &[bool]) -> Self {
        let bits = signs
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &s)| if s { acc | (1 << i) } else { acc });
        Self { bits }
    }

    pub fn sign(&self, index: usize) -> bool {
        self.bits & (1 << index) != 0
    }

    /// The conjunction `B1 ⊓ … ⊓ Bm` this atom stands for.
    pub fn to_concept(&self, signature: &[ConceptSymbol]) -> Concept {
        let lits: Vec<Concept> = signature
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let a = Concept::Atom(s.clone());
                if self.sign(i) {
                    a
                } else {
                    Concept::not(a)
                }
            })
            .collect();
        match lits.len() {
            0 => Concept::Top,
            1 => lits.into_iter().next().unwrap(),
            _ => Concept::And(lits),
        }
    }
}

/// Rewrites role restrictions that coincide with the right-hand side of a
/// definition into the defined name, making the concept a boolean
/// combination of symbols.
#[derive(Debug, Clone, Default)]
pub struct DefinitionIndex {
    names: HashMap<Concept, Concept>,
}

impl DefinitionIndex {
    pub fn new(t: &Terminology) -> Self {
        let mut names = HashMap::new();
        for ax in t.axioms() {
            if ax.kind == AxiomKind::Definition && ax.rhs.has_role_constructor() {
                let name = Concept::Atom(ax.lhs.clone());
                names.entry(normalize(&ax.rhs)).or_insert_with(|| name.clone());
                names
                    .entry(normalize(&Concept::not(ax.rhs.clone())))
                    .or_insert_with(|| Concept::not(name));
            }
        }
        Self { names }
    }

    /// Normalized, role-free equivalent of `c`.
    pub fn propositionalize(&self, c: &Concept) -> Result<Concept, AtomError> {
        let n = normalize(c);
        Ok(normalize(&self.rewrite(&n, c)?))
    }

    fn rewrite(&self, c: &Concept, whole: &Concept) -> Result<Concept, AtomError> {
        if let Some(name) = self.names.get(c) {
            return Ok(name.clone());
        }
        match c {
            Concept::Top | Concept::Bottom | Concept::Atom(_) => Ok(c.clone()),
            Concept::Not(inner) => Ok(Concept::not(self.rewrite(inner, whole)?)),
            Concept::And(cs) => Ok(Concept::And(
                cs.iter().map(|x| self.rewrite(x, whole)).collect::<Result<_, _>>()?,
            )),
            Concept::Or(cs) => Ok(Concept::Or(
                cs.iter().map(|x| self.rewrite(x, whole)).collect::<Result<_, _>>()?,
            )),
            Concept::Forall(..) | Concept::Exists(..) => Err(AtomError::NonPropositionalQuery {
                concept: c.to_string(),
            }),
        }
    }
}

/// The satisfiable atoms, in binary-counting order with the first signature
/// symbol most significant and negative before positive.
#[derive(Debug, Clone)]
pub struct AtomSpace {
    signature: Vec<ConceptSymbol>,
    atoms: Vec<Atom>,
    position: HashMap<ConceptSymbol, usize>,
    definitions: DefinitionIndex,
}

impl AtomSpace {
    pub fn signature(&self) -> &[ConceptSymbol] {
        &self.signature
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn index_of(&self, atom: &Atom) -> Option<usize> {
        self.atoms.binary_search_by_key(&self.order_key(atom), |a| self.order_key(a)).ok()
    }

    fn order_key(&self, atom: &Atom) -> u64 {
        // Reverse bit order so that symbol 0 is the most significant digit.
        let m = self.signature.len();
        (0..m).fold(0u64, |acc, i| (acc << 1) | atom.sign(i) as u64)
    }

    pub fn atom_concept(&self, index: usize) -> Concept {
        self.atoms[index].to_concept(&self.signature)
    }

    pub fn definitions(&self) -> &DefinitionIndex {
        &self.definitions
    }

    /// Indices of the atoms below `c`, ascending.
    pub fn concept_to_atoms(&self, c: &Concept) -> Result<Vec<usize>, AtomError> {
        let p = self.definitions.propositionalize(c)?;
        for s in p.symbols() {
            if !self.position.contains_key(&s) {
                return Err(TerminologyError::UndeclaredSymbol(s.to_string()).into());
            }
        }
        Ok((0..self.atoms.len()).filter(|&i| self.holds(&p, &self.atoms[i])).collect())
    }

    /// Membership mask over atoms, aligned with [`AtomSpace::atoms`].
    pub fn concept_mask(&self, c: &Concept) -> Result<Vec<bool>, AtomError> {
        let mut mask = vec![false; self.atoms.len()];
        for i in self.concept_to_atoms(c)? {
            mask[i] = true;
        }
        Ok(mask)
    }

    fn holds(&self, c: &Concept, atom: &Atom) -> bool {
        match c {
            Concept::Top => true,
            Concept::Bottom => false,
            Concept::Atom(s) => atom.sign(self.position[s]),
            Concept::Not(x) => !self.holds(x, atom),
            Concept::And(xs) => xs.iter().all(|x| self.holds(x, atom)),
            Concept::Or(xs) => xs.iter().any(|x| self.holds(x, atom)),
            Concept::Forall(..) | Concept::Exists(..) => unreachable!("propositionalized"),
        }
    }
}

impl fmt::Display for AtomSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.atoms.len() {
            writeln!(f, "{}", self.atom_concept(i))?;
        }
        Ok(())
    }
}

pub fn enumerate_atoms(t: &Terminology) -> Result<AtomSpace, AtomError> {
    enumerate_atoms_capped(t, DEFAULT_ATOM_CAP)
}

/// Enumerates satisfiable atoms by depth-first extension of sign prefixes,
/// abandoning a prefix as soon as its conjunction is unsatisfiable.
pub fn enumerate_atoms_capped(t: &Terminology, cap: usize) -> Result<AtomSpace, AtomError> {
    let signature = t.signature().to_vec();
    let cap = cap.min(HARD_ATOM_CAP);
    if signature.len() > cap {
        return Err(AtomError::SignatureTooLarge {
            size: signature.len(),
            cap,
        });
    }
    let reasoner = Reasoner::new(t);
    let mut atoms = Vec::new();
    let mut prefix = Vec::with_capacity(signature.len());
    extend_prefix(&reasoner, &signature, &mut prefix, &mut atoms)?;
    let position = signature.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    Ok(AtomSpace {
        signature,
        atoms,
        position,
        definitions: DefinitionIndex::new(t),
    })
}

fn extend_prefix(
    reasoner: &Reasoner<'_>,
    signature: &[ConceptSymbol],
    prefix: &mut Vec<bool>,
    out: &mut Vec<Atom>,
) -> Result<(), TerminologyError> {
    let conj = Concept::And(
        prefix
            .iter()
            .enumerate()
            .map(|(i, &s)| {
                let a = Concept::Atom(signature[i].clone());
                if s {
                    a
                } else {
                    Concept::not(a)
                }
            })
            .chain(std::iter::once(Concept::Top))
            .collect(),
    );
    if !reasoner.is_satisfiable(&conj)? {
        return Ok(());
    }
    if prefix.len() == signature.len() {
        out.push(Atom::from_signs(prefix));
        return Ok(());
    }
    for sign in [false, true] {
        prefix.push(sign);
        extend_prefix(reasoner, signature, prefix, out)?;
        prefix.pop();
    }
    Ok(())
}

/// A probability distribution over the atoms of a space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomProbability {
    weights: Vec<Rational>,
}

impl AtomProbability {
    /// Accepts weights aligned with the space's atoms; `None` unless they are
    /// nonnegative and sum to one.
    pub fn new(weights: Vec<Rational>) -> Option<Self> {
        let valid = weights.iter().all(|w| *w >= Rational::zero())
            && weights.iter().fold(Rational::zero(), |a, w| a + w) == Rational::one();
        valid.then_some(Self { weights })
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, index: usize) -> &Rational {
        &self.weights[index]
    }

    pub fn probability_of(&self, c: &Concept, space: &AtomSpace) -> Result<Rational, AtomError> {
        Ok(space
            .concept_to_atoms(c)?
            .into_iter()
            .fold(Rational::zero(), |acc, i| acc + &self.weights[i]))
    }
}

/// The distribution induced by counting how many domain elements fall into
/// each atom.
pub fn induced_probability(
    space: &AtomSpace,
    domain_size: u64,
    cardinalities: &HashMap<Atom, u64>,
) -> Result<AtomProbability, AtomError> {
    if domain_size == 0 {
        return Err(AtomError::EmptyDomain);
    }
    let mut counts = vec![0u64; space.len()];
    for (atom, &n) in cardinalities {
        let i = space.index_of(atom).ok_or(AtomError::UnknownAtom)?;
        counts[i] = n;
    }
    let sum: u64 = counts.iter().sum();
    if sum != domain_size {
        return Err(AtomError::CardinalityMismatch {
            sum,
            domain: domain_size,
        });
    }
    let weights = counts
        .into_iter()
        .map(|n| Rational::new(n.into(), domain_size.into()))
        .collect();
    Ok(AtomProbability { weights })
}

pub fn probability_of(c: &Concept, p: &AtomProbability, space: &AtomSpace) -> Result<Rational, AtomError> {
    p.probability_of(c, space)
}
