//! Probabilistic conditionings and the validated knowledge base.

use std::fmt;

use thiserror::Error;

use crate::atoms::{AtomError, DefinitionIndex};
use crate::concept::Concept;
use crate::interval::Interval;
use crate::tableau::Reasoner;
use crate::terminology::{Terminology, TerminologyError};

/// `antecedent →[lo, hi] consequent`: among the instances of the antecedent,
/// the fraction that are also instances of the consequent lies in the range.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PConditioning {
    pub antecedent: Concept,
    pub consequent: Concept,
    pub range: Interval,
}

impl PConditioning {
    pub fn new(antecedent: Concept, consequent: Concept, range: Interval) -> Self {
        Self {
            antecedent,
            consequent,
            range,
        }
    }
}

impl fmt::Display for PConditioning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} : {}", self.antecedent, self.consequent, self.range)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KbError {
    #[error(transparent)]
    Terminology(#[from] TerminologyError),
    #[error("antecedent of conditioning #{index} (`{conditioning}`) is unsatisfiable")]
    UnsatisfiableAntecedent { index: usize, conditioning: PConditioning },
    #[error("conditioning #{index}: {source}")]
    NonPropositional { index: usize, source: AtomError },
}

/// A terminology together with conditionings whose concepts are normalized
/// and whose antecedents are satisfiable. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnowledgeBase {
    terminology: Terminology,
    conditionings: Vec<PConditioning>,
}

impl KnowledgeBase {
    /// Validates conditionings against `terminology`.
    ///
    /// Role restrictions inside conditionings must coincide with the
    /// right-hand side of a definition; they are replaced by the defined name.
    /// Probabilistic consistency is not decided here.
    pub fn new(terminology: Terminology, conditionings: Vec<PConditioning>) -> Result<Self, KbError> {
        let reasoner = Reasoner::new(&terminology);
        let definitions = DefinitionIndex::new(&terminology);
        let mut normalized = Vec::with_capacity(conditionings.len());
        for (index, pc) in conditionings.into_iter().enumerate() {
            terminology.check_concept(&pc.antecedent)?;
            terminology.check_concept(&pc.consequent)?;
            let prop = |c: &Concept| {
                definitions
                    .propositionalize(c)
                    .map_err(|source| KbError::NonPropositional { index, source })
            };
            let antecedent = prop(&pc.antecedent)?;
            let consequent = prop(&pc.consequent)?;
            if !reasoner.is_satisfiable(&antecedent)? {
                return Err(KbError::UnsatisfiableAntecedent {
                    index,
                    conditioning: pc,
                });
            }
            normalized.push(PConditioning::new(antecedent, consequent, pc.range));
        }
        Ok(Self {
            terminology,
            conditionings: normalized,
        })
    }

    pub fn terminology(&self) -> &Terminology {
        &self.terminology
    }

    pub fn conditionings(&self) -> &[PConditioning] {
        &self.conditionings
    }

    pub fn reasoner(&self) -> Reasoner<'_> {
        Reasoner::new(&self.terminology)
    }
}

pub fn validate_kb(
    terminology: Terminology,
    conditionings: Vec<PConditioning>,
) -> Result<KnowledgeBase, KbError> {
    KnowledgeBase::new(terminology, conditionings)
}
