//! Random knowledge bases that are consistent by construction: a random
//! distribution over the atoms is drawn first and every conditioning range
//! is chosen to contain that distribution's conditional probability.

#![allow(dead_code)]

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use palc::atoms::{enumerate_atoms, AtomSpace};
use palc::concept::{Concept, ConceptSymbol};
use palc::interval::Interval;
use palc::kb::{KnowledgeBase, PConditioning};
use palc::rational::{rat, Rational};
use palc::terminology::{Axiom, Terminology};

pub struct Generated {
    pub kb: KnowledgeBase,
    /// The distribution the ranges were drawn around, aligned with `space`.
    pub model: Vec<Rational>,
    pub space: AtomSpace,
}

pub struct Limits {
    pub max_symbols: usize,
    pub max_axioms: usize,
    pub max_conditionings: usize,
}

pub const CORPUS_LIMITS: Limits = Limits {
    max_symbols: 4,
    max_axioms: 2,
    max_conditionings: 5,
};

const DENOMINATORS: [i64; 7] = [2, 3, 4, 5, 8, 10, 20];

fn name(i: usize) -> String {
    format!("c{i}")
}

fn literal(rng: &mut StdRng, n: usize) -> Concept {
    let a = Concept::atom(name(rng.gen_range(0..n)));
    if rng.gen_bool(0.3) {
        Concept::not(a)
    } else {
        a
    }
}

fn random_concept(rng: &mut StdRng, n: usize) -> Concept {
    match rng.gen_range(0..10) {
        0..=5 => literal(rng, n),
        6 | 7 => Concept::and(literal(rng, n), literal(rng, n)),
        _ => Concept::or(literal(rng, n), literal(rng, n)),
    }
}

fn random_terminology(rng: &mut StdRng, limits: &Limits) -> Terminology {
    let n = rng.gen_range(1..=limits.max_symbols);
    let axioms_wanted = rng.gen_range(0..=limits.max_axioms.min(n - 1));
    let mut lhs: Vec<usize> = (1..n).collect();
    lhs.shuffle(rng);
    lhs.truncate(axioms_wanted);
    lhs.sort_unstable();
    let mut axioms = Vec::new();
    let mut roles = Vec::new();
    for &l in &lhs {
        // Right-hand sides only mention lower-numbered symbols, so no cycles.
        let rhs = match rng.gen_range(0..8) {
            0 => {
                roles.push("r".into());
                Concept::all("r", Concept::atom(name(rng.gen_range(0..l))))
            }
            1..=3 => literal(rng, l),
            _ => {
                let a = literal(rng, l);
                let b = literal(rng, l);
                if rng.gen_bool(0.5) {
                    Concept::and(a, b)
                } else {
                    Concept::or(a, b)
                }
            }
        };
        let lhs_name = name(l);
        axioms.push(if rng.gen_bool(0.5) {
            Axiom::definition(&lhs_name, rhs)
        } else {
            Axiom::specialization(&lhs_name, rhs)
        });
    }
    let declared: Vec<ConceptSymbol> = (0..n)
        .filter(|i| !lhs.contains(i))
        .map(|i| ConceptSymbol::new(name(i)))
        .collect();
    roles.dedup();
    Terminology::validate(&declared, &roles, axioms).expect("generated terminology is valid")
}

fn random_model(rng: &mut StdRng, atoms: usize) -> Vec<Rational> {
    loop {
        let counts: Vec<i64> = (0..atoms)
            .map(|_| if rng.gen_bool(0.25) { 0 } else { rng.gen_range(1..6) })
            .collect();
        let total: i64 = counts.iter().sum();
        if total > 0 {
            return counts.into_iter().map(|c| rat(c, total)).collect();
        }
    }
}

fn probability(space: &AtomSpace, model: &[Rational], c: &Concept) -> Rational {
    space
        .concept_to_atoms(c)
        .expect("propositional concept")
        .into_iter()
        .map(|i| model[i].clone())
        .sum()
}

fn below(rng: &mut StdRng, x: &Rational) -> Rational {
    let d = *DENOMINATORS.choose(rng).unwrap();
    let floor = (x * Rational::from_integer(d.into())).floor();
    let steps = rng.gen_range(0..3);
    let v = (floor - Rational::from_integer(steps.into())) / Rational::from_integer(d.into());
    if v.is_negative() {
        Rational::zero()
    } else {
        v
    }
}

fn above(rng: &mut StdRng, x: &Rational) -> Rational {
    let d = *DENOMINATORS.choose(rng).unwrap();
    let ceil = (x * Rational::from_integer(d.into())).ceil();
    let steps = rng.gen_range(0..3);
    let v = (ceil + Rational::from_integer(steps.into())) / Rational::from_integer(d.into());
    if v > Rational::one() {
        Rational::one()
    } else {
        v
    }
}

/// Draws one consistent knowledge base.
pub fn random_kb(rng: &mut StdRng, limits: &Limits) -> Generated {
    loop {
        let t = random_terminology(rng, limits);
        let space = enumerate_atoms(&t).expect("small signature");
        let model = random_model(rng, space.len());
        let n = t.signature().len();
        let wanted = rng.gen_range(0..=limits.max_conditionings);
        let mut conditionings = Vec::new();
        let mut attempts = 0;
        while conditionings.len() < wanted && attempts < 50 {
            attempts += 1;
            let antecedent = if rng.gen_bool(0.1) { Concept::Top } else { random_concept(rng, n) };
            let consequent = random_concept(rng, n);
            let pa = probability(&space, &model, &antecedent);
            if pa.is_zero() {
                continue;
            }
            let ratio = probability(&space, &model, &Concept::and(antecedent.clone(), consequent.clone())) / pa;
            let range = if rng.gen_bool(0.25) {
                Interval::point(ratio).unwrap()
            } else {
                Interval::new(below(rng, &ratio), above(rng, &ratio)).unwrap()
            };
            conditionings.push(PConditioning::new(antecedent, consequent, range));
        }
        if let Ok(kb) = KnowledgeBase::new(t, conditionings) {
            return Generated { kb, model, space };
        }
    }
}

pub fn corpus(seed: u64, size: usize, limits: &Limits) -> Vec<Generated> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..size).map(|_| random_kb(&mut rng, limits)).collect()
}

/// Every concept a soundness check should look at: the tracked set.
pub fn distribution_map(g: &Generated) -> HashMap<String, Rational> {
    g.space
        .atoms()
        .iter()
        .enumerate()
        .map(|(i, _)| (g.space.atom_concept(i).to_string(), g.model[i].clone()))
        .collect()
}
