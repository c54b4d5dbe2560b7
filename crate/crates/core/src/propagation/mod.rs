//! Sound interval refinement of conditional ranges by local rules, run to a
//! fixpoint over every ordered pair of tracked concepts.

mod matrix;
mod rules;

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::fmt::Write as _;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use num_traits::Signed;

use crate::concept::Concept;
use crate::interval::{Bounds, Interval};
use crate::kb::KnowledgeBase;
use crate::parser::format_range;
use crate::rational::{max, min, round_down_dyadic, round_up_dyadic};

pub use matrix::{IntervalMatrix, TrackedConceptSet};
pub use rules::{rule_bayes, rule_negation_duality, rule_triangle, rule_zero_symmetry_and_positivity};

pub const DEFAULT_MAX_SWEEPS: usize = 100;

/// Rule candidates whose endpoints need longer denominators are widened onto
/// the dyadic grid of this resolution. Keeps rational sizes bounded when a
/// range keeps shrinking towards an irrational-looking limit.
pub const ENDPOINT_PRECISION_BITS: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Diagonal,
    Unsatisfiable,
    Subsumption,
    Disjointness,
    /// The conditioning with this index.
    Explicit(usize),
    Triangle,
    Bayes,
    NegationDuality,
    ConjunctionMirror,
    ZeroSymmetry,
    Positivity,
    /// A vacuous concept has probability zero under every antecedent.
    VacuousColumn,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Diagonal => f.write_str("diagonal"),
            Rule::Unsatisfiable => f.write_str("unsatisfiable"),
            Rule::Subsumption => f.write_str("subsumption"),
            Rule::Disjointness => f.write_str("disjointness"),
            Rule::Explicit(i) => write!(f, "conditioning#{i}"),
            Rule::Triangle => f.write_str("triangle"),
            Rule::Bayes => f.write_str("bayes"),
            Rule::NegationDuality => f.write_str("negation"),
            Rule::ConjunctionMirror => f.write_str("conjunction"),
            Rule::ZeroSymmetry => f.write_str("zero-symmetry"),
            Rule::Positivity => f.write_str("positivity"),
            Rule::VacuousColumn => f.write_str("vacuous"),
        }
    }
}

/// One refinement. `new == None` means the intersection was empty, which
/// makes the row concept vacuous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: Rule,
    pub entry: (usize, usize),
    /// Tracked concepts the rule looked at, for triples `[A, B, C]`.
    pub context: Vec<usize>,
    pub old: Interval,
    pub new: Option<Interval>,
    /// 0 during initialization.
    pub sweep: usize,
}

/// Every change made to the matrix, in order, starting from the blank
/// matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropagationTrace {
    pub tracked: TrackedConceptSet,
    pub required: Vec<bool>,
    pub steps: Vec<TraceStep>,
}

impl PropagationTrace {
    pub fn replay(&self) -> IntervalMatrix {
        let mut m = IntervalMatrix::blank(self.tracked.clone(), self.required.clone());
        for step in &self.steps {
            let (x, y) = step.entry;
            match &step.new {
                Some(v) => m.set(x, y, v.clone()),
                None => m.mark_vacuous(x),
            }
        }
        m
    }

    pub fn render(&self) -> String {
        let name = |i: usize| self.tracked.concept(i).to_string();
        let mut out = String::new();
        for (k, s) in self.steps.iter().enumerate() {
            let (x, y) = s.entry;
            let new = match &s.new {
                Some(v) => format_range(v),
                None => "empty".into(),
            };
            let _ = write!(out, "{:>4} sweep {} {}", k + 1, s.sweep, s.rule);
            if !s.context.is_empty() {
                let ctx: Vec<String> = s.context.iter().map(|&i| name(i)).collect();
                let _ = write!(out, " [{}]", ctx.join(", "));
            }
            let _ = writeln!(out, ": {} -> {} {} => {}", name(x), name(y), format_range(&s.old), new);
        }
        out
    }
}

/// The empty intersection that proved inconsistency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalConflict {
    pub rule: Rule,
    pub antecedent: Concept,
    pub consequent: Concept,
    pub current: Interval,
    pub candidate: Bounds,
}

impl fmt::Display for LocalConflict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -> {}: {} leaves no room in {} ({})",
            self.antecedent,
            self.consequent,
            self.rule,
            self.current,
            match self.candidate.to_interval() {
                Some(i) => i.to_string(),
                None => "an empty range".into(),
            }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalInconsistency {
    pub conflict: LocalConflict,
    /// Ends with the failing step.
    pub trace: PropagationTrace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Propagation {
    pub matrix: IntervalMatrix,
    pub trace: PropagationTrace,
    /// Sweeps run, including the final one that changed nothing.
    pub sweeps: usize,
    /// Rule candidates widened to `ENDPOINT_PRECISION_BITS`.
    pub widened: usize,
}

impl Propagation {
    /// Last sweep that changed `antecedent → consequent`; 0 if only
    /// initialization touched it.
    pub fn settled_at(&self, antecedent: &Concept, consequent: &Concept) -> Option<usize> {
        let t = self.matrix.tracked();
        let entry = (t.position(antecedent)?, t.position(consequent)?);
        Some(
            self.trace
                .steps
                .iter()
                .filter(|s| s.entry == entry)
                .map(|s| s.sweep)
                .max()
                .unwrap_or(0),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropagationOutcome {
    Converged(Propagation),
    /// The sweep cap was reached; the matrix is still sound.
    NonConvergence(Propagation),
    Inconsistent(LocalInconsistency),
}

impl PropagationOutcome {
    pub fn propagation(&self) -> Option<&Propagation> {
        match self {
            PropagationOutcome::Converged(p) | PropagationOutcome::NonConvergence(p) => Some(p),
            PropagationOutcome::Inconsistent(_) => None,
        }
    }

    pub fn matrix(&self) -> Option<&IntervalMatrix> {
        self.propagation().map(|p| &p.matrix)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalVerdict {
    /// No local rule found a contradiction. Weaker than exact consistency.
    ConsistentSoFar,
    Inconsistent(LocalInconsistency),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropagationOptions {
    pub max_sweeps: usize,
    /// Shuffles the worklist order of every sweep.
    pub shuffle_seed: Option<u64>,
}

impl Default for PropagationOptions {
    fn default() -> Self {
        Self {
            max_sweeps: DEFAULT_MAX_SWEEPS,
            shuffle_seed: None,
        }
    }
}

struct Engine {
    m: IntervalMatrix,
    steps: Vec<TraceStep>,
    dirty: BTreeSet<(usize, usize)>,
    sweep: usize,
    widened: usize,
}

impl Engine {
    fn new(tracked: TrackedConceptSet, required: Vec<bool>) -> Self {
        Self {
            m: IntervalMatrix::blank(tracked, required),
            steps: Vec::new(),
            dirty: BTreeSet::new(),
            sweep: 0,
            widened: 0,
        }
    }

    fn trace(&self) -> PropagationTrace {
        PropagationTrace {
            tracked: self.m.tracked().clone(),
            required: (0..self.m.len()).map(|i| self.m.is_required(i)).collect(),
            steps: self.steps.clone(),
        }
    }

    /// Intersects `candidate` into entry `(x, y)`.
    fn refine(&mut self, x: usize, y: usize, candidate: Bounds, rule: Rule, context: &[usize]) -> Result<(), LocalConflict> {
        if self.m.is_vacuous(x) {
            return Ok(());
        }
        let current = self.m.get(x, y).clone();
        let rounded = Bounds::new(
            round_down_dyadic(&candidate.lo, ENDPOINT_PRECISION_BITS),
            round_up_dyadic(&candidate.hi, ENDPOINT_PRECISION_BITS),
        );
        if rounded != candidate {
            self.widened += 1;
        }
        let candidate = rounded;
        let lo = max(current.lo(), &candidate.lo);
        let hi = min(current.hi(), &candidate.hi);
        if lo > hi {
            self.steps.push(TraceStep {
                rule,
                entry: (x, y),
                context: context.to_vec(),
                old: current.clone(),
                new: None,
                sweep: self.sweep,
            });
            if self.m.is_required(x) {
                self.m.mark_vacuous(x);
                let tracked = self.m.tracked();
                return Err(LocalConflict {
                    rule,
                    antecedent: tracked.concept(x).clone(),
                    consequent: tracked.concept(y).clone(),
                    current,
                    candidate,
                });
            }
            return self.vacate(x);
        }
        if lo == *current.lo() && hi == *current.hi() {
            return Ok(());
        }
        let new = Interval::new(lo, hi).expect("intersection of ranges in [0, 1]");
        self.steps.push(TraceStep {
            rule,
            entry: (x, y),
            context: context.to_vec(),
            old: current,
            new: Some(new.clone()),
            sweep: self.sweep,
        });
        self.m.set(x, y, new);
        self.dirty.insert((x, y));
        Ok(())
    }

    fn vacate(&mut self, x: usize) -> Result<(), LocalConflict> {
        self.m.mark_vacuous(x);
        for y in 0..self.m.len() {
            if y != x {
                self.refine(y, x, Interval::zero().into(), Rule::VacuousColumn, &[x])?;
            }
        }
        Ok(())
    }

    fn initialize(&mut self, kb: &KnowledgeBase) -> Result<(), LocalConflict> {
        let reasoner = kb.reasoner();
        let n = self.m.len();
        let concepts: Vec<Concept> = self.m.tracked().concepts().to_vec();
        let tableau = |r: Result<bool, _>| r.expect("tracked concepts are validated");
        for x in 0..n {
            if !tableau(reasoner.is_satisfiable(&concepts[x])) {
                self.refine(x, x, Bounds::empty(), Rule::Unsatisfiable, &[])?;
            } else {
                self.refine(x, x, Interval::one().into(), Rule::Diagonal, &[])?;
            }
        }
        for x in 0..n {
            for y in 0..n {
                if x == y || self.m.is_vacuous(x) || self.m.is_vacuous(y) {
                    continue;
                }
                if tableau(reasoner.subsumes(&concepts[y], &concepts[x])) {
                    self.refine(x, y, Interval::one().into(), Rule::Subsumption, &[])?;
                } else if tableau(reasoner.disjoint(&concepts[x], &concepts[y])) {
                    self.refine(x, y, Interval::zero().into(), Rule::Disjointness, &[])?;
                }
            }
        }
        for (i, pc) in kb.conditionings().iter().enumerate() {
            let t = self.m.tracked();
            let a = t.position(&pc.antecedent).expect("antecedents are tracked");
            match t.position(&pc.consequent) {
                Some(c) => self.refine(a, c, pc.range.clone().into(), Rule::Explicit(i), &[])?,
                // The consequent normalized to bottom, whose conditional probability is 0.
                None if pc.range.lo().is_positive() => {
                    self.refine(a, a, Bounds::empty(), Rule::Explicit(i), &[])?
                }
                None => {}
            }
        }
        Ok(())
    }

    fn pair_rules(&mut self, x: usize, y: usize) -> Result<(), LocalConflict> {
        if self.m.is_vacuous(x) {
            return Ok(());
        }
        let xy = self.m.get(x, y).clone();
        if let Some(ny) = self.m.tracked().negation_of(y) {
            self.refine(x, ny, rule_negation_duality(&xy), Rule::NegationDuality, &[y])?;
        }
        let partners: Vec<usize> = self.m.tracked().mirror_partners(x, y).to_vec();
        for z in partners {
            let xy = self.m.get(x, y).clone();
            self.refine(x, z, xy.into(), Rule::ConjunctionMirror, &[y])?;
        }
        if x != y && !self.m.is_vacuous(y) {
            if let Some(candidate) = rule_zero_symmetry_and_positivity(self.m.get(x, y)) {
                let rule = if self.m.get(y, x).lo().is_positive() {
                    Rule::Positivity
                } else {
                    Rule::ZeroSymmetry
                };
                self.refine(y, x, candidate, rule, &[])?;
            }
        }
        Ok(())
    }

    fn triple_rules(&mut self, triple: [usize; 3]) -> Result<(), LocalConflict> {
        let [x, y, z] = triple;
        for [a, b, c] in [[x, y, z], [x, z, y], [y, x, z], [y, z, x], [z, x, y], [z, y, x]] {
            if self.m.is_vacuous(a) || self.m.is_vacuous(b) || self.m.is_vacuous(c) {
                continue;
            }
            let p = self.m.get(a, c).clone();
            let q = self.m.get(a, b).clone();
            let q_rev = self.m.get(b, a).clone();
            let p_rev = self.m.get(c, a).clone();
            let r_rev = self.m.get(c, b).clone();
            self.refine(b, c, rule_triangle(&p, &q, &q_rev, &p_rev), Rule::Triangle, &[a, b, c])?;
            if let Some(bounds) = rule_bayes(&p, &q, &q_rev, &p_rev, &r_rev) {
                self.refine(b, c, bounds, Rule::Bayes, &[a, b, c])?;
            }
        }
        Ok(())
    }

    fn sweep(&mut self, order: Vec<(usize, usize)>) -> Result<(), LocalConflict> {
        let n = self.m.len();
        let mut seen: HashSet<[usize; 3]> = HashSet::new();
        for &(x, y) in &order {
            self.pair_rules(x, y)?;
        }
        for (x, y) in order {
            if x == y {
                continue;
            }
            for z in 0..n {
                if z == x || z == y {
                    continue;
                }
                let mut key = [x, y, z];
                key.sort_unstable();
                if seen.insert(key) {
                    self.triple_rules(key)?;
                }
            }
        }
        Ok(())
    }
}

/// Concepts that must have positive probability: explicit antecedents, and
/// `top` when tracked.
fn required_flags(kb: &KnowledgeBase, tracked: &TrackedConceptSet) -> Vec<bool> {
    let mut required = vec![false; tracked.len()];
    for pc in kb.conditionings() {
        if let Some(i) = tracked.position(&pc.antecedent) {
            required[i] = true;
        }
    }
    if let Some(i) = tracked.position(&Concept::Top) {
        required[i] = true;
    }
    required
}

/// Initial matrix: diagonal certainty, tableau-proved subsumptions and
/// disjointness, and the explicit conditionings.
pub fn initialize_matrix(kb: &KnowledgeBase, tracked: &TrackedConceptSet) -> Result<Propagation, LocalInconsistency> {
    let mut engine = Engine::new(tracked.clone(), required_flags(kb, tracked));
    match engine.initialize(kb) {
        Ok(()) => Ok(Propagation {
            trace: engine.trace(),
            matrix: engine.m,
            sweeps: 0,
            widened: engine.widened,
        }),
        Err(conflict) => Err(LocalInconsistency {
            conflict,
            trace: engine.trace(),
        }),
    }
}

pub fn propagate_to_fixpoint(kb: &KnowledgeBase, options: &PropagationOptions) -> PropagationOutcome {
    propagate_tracked(kb, &TrackedConceptSet::new(kb), options)
}

/// Runs the engine over an explicit tracked set.
pub fn propagate_tracked(
    kb: &KnowledgeBase,
    tracked: &TrackedConceptSet,
    options: &PropagationOptions,
) -> PropagationOutcome {
    let mut engine = Engine::new(tracked.clone(), required_flags(kb, tracked));
    let fail = |engine: &Engine, conflict| {
        PropagationOutcome::Inconsistent(LocalInconsistency {
            conflict,
            trace: engine.trace(),
        })
    };
    if let Err(conflict) = engine.initialize(kb) {
        return fail(&engine, conflict);
    }
    let n = engine.m.len();
    let mut rng = options.shuffle_seed.map(StdRng::seed_from_u64);
    let mut pending: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    engine.dirty.clear();
    let mut sweeps = 0;
    while !pending.is_empty() {
        if sweeps == options.max_sweeps {
            return PropagationOutcome::NonConvergence(Propagation {
                trace: engine.trace(),
                matrix: engine.m,
                sweeps,
                widened: engine.widened,
            });
        }
        sweeps += 1;
        engine.sweep = sweeps;
        if let Some(rng) = rng.as_mut() {
            pending.shuffle(rng);
        }
        if let Err(conflict) = engine.sweep(pending) {
            return fail(&engine, conflict);
        }
        pending = std::mem::take(&mut engine.dirty).into_iter().collect();
    }
    PropagationOutcome::Converged(Propagation {
        trace: engine.trace(),
        matrix: engine.m,
        sweeps,
        widened: engine.widened,
    })
}

pub fn check_consistency_local(kb: &KnowledgeBase) -> LocalVerdict {
    match propagate_to_fixpoint(kb, &PropagationOptions::default()) {
        PropagationOutcome::Inconsistent(report) => LocalVerdict::Inconsistent(report),
        _ => LocalVerdict::ConsistentSoFar,
    }
}
