use std::collections::HashMap;
use std::fmt;

use crate::concept::{normalize, Concept};
use crate::interval::Interval;
use crate::kb::KnowledgeBase;

/// Concepts whose pairwise conditionals are tracked, in a fixed order:
/// named symbols, their negations, then conditioning antecedents,
/// consequents and conjunctions, then any extra query concepts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrackedConceptSet {
    concepts: Vec<Concept>,
    index: HashMap<Concept, usize>,
    negation: Vec<Option<usize>>,
    /// `(x, y) ↦ z` where `z` is the tracked normal form of `x ⊓ y`.
    conjunction: HashMap<(usize, usize), usize>,
    /// `(x, y) ↦ [w]` where `x→y` and `x→w` must carry the same range.
    mirrors: HashMap<(usize, usize), Vec<usize>>,
}

impl TrackedConceptSet {
    pub fn new(kb: &KnowledgeBase) -> Self {
        Self::with_extra(kb, &[])
    }

    /// Also tracks `extra`, e.g. the operands of a query.
    pub fn with_extra(kb: &KnowledgeBase, extra: &[Concept]) -> Self {
        let mut set = Self {
            concepts: Vec::new(),
            index: HashMap::new(),
            negation: Vec::new(),
            conjunction: HashMap::new(),
            mirrors: HashMap::new(),
        };
        let symbols: Vec<Concept> = kb
            .terminology()
            .signature()
            .iter()
            .map(|s| Concept::Atom(s.clone()))
            .collect();
        for s in &symbols {
            set.insert(s);
        }
        for s in &symbols {
            set.insert(&Concept::not(s.clone()));
        }
        for pc in kb.conditionings() {
            set.insert(&pc.antecedent);
            set.insert(&pc.consequent);
            set.insert(&Concept::and(pc.antecedent.clone(), pc.consequent.clone()));
        }
        for c in extra {
            set.insert(c);
        }
        set.link();
        set
    }

    fn insert(&mut self, c: &Concept) {
        let n = normalize(c);
        if n == Concept::Bottom || self.index.contains_key(&n) {
            return;
        }
        self.index.insert(n.clone(), self.concepts.len());
        self.concepts.push(n);
    }

    fn link(&mut self) {
        self.negation = self
            .concepts
            .iter()
            .map(|c| self.index.get(&normalize(&Concept::not(c.clone()))).copied())
            .collect();
        for (x, cx) in self.concepts.iter().enumerate() {
            for (y, cy) in self.concepts.iter().enumerate() {
                if x == y {
                    continue;
                }
                let both = normalize(&Concept::and(cx.clone(), cy.clone()));
                if let Some(&z) = self.index.get(&both) {
                    if z != y {
                        self.conjunction.insert((x, y), z);
                        self.mirrors.entry((x, y)).or_default().push(z);
                        self.mirrors.entry((x, z)).or_default().push(y);
                    }
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    pub fn concept(&self, i: usize) -> &Concept {
        &self.concepts[i]
    }

    /// Position of the normal form of `c`.
    pub fn position(&self, c: &Concept) -> Option<usize> {
        self.index.get(&normalize(c)).copied()
    }

    pub fn negation_of(&self, i: usize) -> Option<usize> {
        self.negation[i]
    }

    pub fn mirror_partners(&self, x: usize, y: usize) -> &[usize] {
        self.mirrors.get(&(x, y)).map_or(&[], Vec::as_slice)
    }

    pub fn conjunction_of(&self, x: usize, y: usize) -> Option<usize> {
        self.conjunction.get(&(x, y)).copied()
    }
}

/// Working ranges for every ordered pair of tracked concepts.
///
/// Entry `(x, y)` bounds `P(y | x)` over every admitted distribution that
/// gives `x` positive probability. A row is vacuous once it is shown that no
/// such distribution exists; its entries are then frozen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalMatrix {
    tracked: TrackedConceptSet,
    entries: Vec<Interval>,
    vacuous: Vec<bool>,
    required: Vec<bool>,
}

impl IntervalMatrix {
    /// Every entry `[0, 1]`, nothing vacuous. `required` marks concepts that
    /// must have positive probability in every model.
    pub fn blank(tracked: TrackedConceptSet, required: Vec<bool>) -> Self {
        let n = tracked.len();
        assert_eq!(required.len(), n);
        Self {
            tracked,
            entries: vec![Interval::unit(); n * n],
            vacuous: vec![false; n],
            required,
        }
    }

    pub fn tracked(&self) -> &TrackedConceptSet {
        &self.tracked
    }

    pub fn len(&self) -> usize {
        self.tracked.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tracked.is_empty()
    }

    pub fn get(&self, x: usize, y: usize) -> &Interval {
        &self.entries[x * self.len() + y]
    }

    pub(crate) fn set(&mut self, x: usize, y: usize, value: Interval) {
        let n = self.len();
        self.entries[x * n + y] = value;
    }

    pub fn is_vacuous(&self, x: usize) -> bool {
        self.vacuous[x]
    }

    pub(crate) fn mark_vacuous(&mut self, x: usize) {
        self.vacuous[x] = true;
    }

    pub fn is_required(&self, x: usize) -> bool {
        self.required[x]
    }

    /// Range for `antecedent → consequent`; `None` if either concept is not
    /// tracked or the antecedent is vacuous.
    pub fn lookup(&self, antecedent: &Concept, consequent: &Concept) -> Option<&Interval> {
        let x = self.tracked.position(antecedent)?;
        let y = self.tracked.position(consequent)?;
        (!self.vacuous[x]).then(|| self.get(x, y))
    }
}

impl fmt::Display for IntervalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.len();
        for x in 0..n {
            if self.vacuous[x] {
                writeln!(f, "{} -> * : vacuous", self.tracked.concept(x))?;
                continue;
            }
            for y in 0..n {
                if x != y {
                    writeln!(f, "{} -> {} : {}", self.tracked.concept(x), self.tracked.concept(y), self.get(x, y))?;
                }
            }
        }
        Ok(())
    }
}
