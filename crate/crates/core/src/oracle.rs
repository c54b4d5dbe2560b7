//! Exact consistency and tightest-range computation by linear programming
//! over the polytope of atom distributions compatible with a knowledge base.

use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::atoms::{enumerate_atoms_capped, AtomError, AtomProbability, AtomSpace, DEFAULT_ATOM_CAP};
use crate::concept::Concept;
use crate::interval::Interval;
use crate::kb::KnowledgeBase;
use crate::lp::{dot, LinearProgram, LpOutcome, Relation, Sense};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintRelation {
    GeZero,
    EqZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// `P(C1 ⊓ C2) − q_l·P(C1) ≥ 0` for conditioning `index`.
    Lower(usize),
    /// `q_u·P(C1) − P(C1 ⊓ C2) ≥ 0` for conditioning `index`.
    Upper(usize),
}

/// Homogeneous constraint over atom probabilities. Coefficients are aligned
/// with the atoms of the owning space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearConstraint {
    pub coefficients: Vec<Rational>,
    pub relation: ConstraintRelation,
    pub provenance: Provenance,
}

impl LinearConstraint {
    pub fn is_satisfied_by(&self, p: &[Rational]) -> bool {
        let v = dot(&self.coefficients, p);
        match self.relation {
            ConstraintRelation::GeZero => !v.is_negative(),
            ConstraintRelation::EqZero => v.is_zero(),
        }
    }
}

/// The constraints plus the implicit `Σp = 1, p ≥ 0`.
#[derive(Debug, Clone)]
pub struct Polytope {
    pub space: AtomSpace,
    pub constraints: Vec<LinearConstraint>,
}

impl Polytope {
    pub fn dimension(&self) -> usize {
        self.space.len()
    }

    pub fn contains(&self, p: &AtomProbability) -> bool {
        let w = p.weights();
        w.len() == self.dimension()
            && w.iter().all(|x| !x.is_negative())
            && w.iter().sum::<Rational>() == Rational::one()
            && self.constraints.iter().all(|c| c.is_satisfied_by(w))
    }

    fn indicator(&self, c: &Concept) -> Result<Vec<Rational>, AtomError> {
        Ok(self
            .space
            .concept_mask(c)?
            .into_iter()
            .map(|b| if b { Rational::one() } else { Rational::zero() })
            .collect())
    }

    /// LP over atom probabilities with the polytope constraints and `Σp = 1`.
    fn program(&self, sense: Sense, objective: Vec<Rational>) -> LinearProgram {
        let n = self.dimension();
        let mut lp = LinearProgram::new(n, sense, objective);
        for c in &self.constraints {
            lp.add_row(c.coefficients.clone(), relation(c.relation), Rational::zero());
        }
        lp.add_row(vec![Rational::one(); n], Relation::Eq, Rational::one());
        lp
    }
}

fn relation(r: ConstraintRelation) -> Relation {
    match r {
        ConstraintRelation::GeZero => Relation::Ge,
        ConstraintRelation::EqZero => Relation::Eq,
    }
}

/// Emits the two linear constraints of every conditioning.
pub fn build_polytope(kb: &KnowledgeBase, space: AtomSpace) -> Result<Polytope, AtomError> {
    let mut constraints = Vec::with_capacity(2 * kb.conditionings().len());
    for (index, pc) in kb.conditionings().iter().enumerate() {
        let ante = space.concept_mask(&pc.antecedent)?;
        let cons = space.concept_mask(&pc.consequent)?;
        let (lo, hi) = (pc.range.lo(), pc.range.hi());
        let mut lower = vec![Rational::zero(); space.len()];
        let mut upper = vec![Rational::zero(); space.len()];
        for i in 0..space.len() {
            if !ante[i] {
                continue;
            }
            let hit = if cons[i] { Rational::one() } else { Rational::zero() };
            lower[i] = &hit - lo;
            upper[i] = hi - &hit;
        }
        constraints.push(LinearConstraint {
            coefficients: lower,
            relation: ConstraintRelation::GeZero,
            provenance: Provenance::Lower(index),
        });
        constraints.push(LinearConstraint {
            coefficients: upper,
            relation: ConstraintRelation::GeZero,
            provenance: Provenance::Upper(index),
        });
    }
    Ok(Polytope { space, constraints })
}

/// Result of an LP over the polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpResult {
    Optimal { value: Rational, witness: AtomProbability },
    Infeasible,
    Unbounded,
}

/// Optimizes a linear objective over atom probabilities.
pub fn solve_lp(objective: &[Rational], p: &Polytope, sense: Sense) -> LpResult {
    match p.program(sense, objective.to_vec()).solve() {
        LpOutcome::Optimal { value, point } => LpResult::Optimal {
            value,
            witness: AtomProbability::new(point).expect("simplex point lies on the simplex"),
        },
        LpOutcome::Infeasible => LpResult::Infeasible,
        LpOutcome::Unbounded => LpResult::Unbounded,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InconsistencyReport {
    /// No distribution satisfies the constraints. `multipliers[j] ≥ 0` weight
    /// the constraints so that their combination is at most −1 on every atom.
    EmptyPolytope { multipliers: Vec<Rational> },
    /// Every distribution in the polytope gives this antecedent probability 0.
    ForcedEmptyAntecedent { index: usize, antecedent: Concept },
}

impl InconsistencyReport {
    /// Checks a Farkas certificate exactly; other reports are trivially valid.
    pub fn verify(&self, polytope: &Polytope) -> bool {
        match self {
            InconsistencyReport::EmptyPolytope { multipliers } => {
                multipliers.len() == polytope.constraints.len()
                    && multipliers.iter().all(|m| !m.is_negative())
                    && (0..polytope.dimension()).all(|i| {
                        let combined: Rational = polytope
                            .constraints
                            .iter()
                            .zip(multipliers)
                            .map(|(c, m)| &c.coefficients[i] * m)
                            .sum();
                        combined <= -Rational::one()
                    })
            }
            InconsistencyReport::ForcedEmptyAntecedent { .. } => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Consistency {
    /// `witness` gives every antecedent positive probability.
    Consistent { witness: AtomProbability },
    Inconsistent(InconsistencyReport),
}

impl Consistency {
    pub fn is_consistent(&self) -> bool {
        matches!(self, Consistency::Consistent { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Atoms(#[from] AtomError),
    #[error("knowledge base is inconsistent")]
    InconsistentKb(InconsistencyReport),
    #[error("antecedent `{antecedent}` has probability 0 in every model")]
    VacuousAntecedent { antecedent: Concept },
}

/// Tightest range of `P(consequent | antecedent)` with attaining witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntailedRange {
    pub antecedent: Concept,
    pub consequent: Concept,
    pub range: Interval,
    pub lo_witness: Option<AtomProbability>,
    pub hi_witness: Option<AtomProbability>,
}

impl EntailedRange {
    /// Each witness lies in the polytope, gives the antecedent positive
    /// probability, and attains its bound exactly.
    pub fn verify(&self, polytope: &Polytope) -> bool {
        let check = |w: &Option<AtomProbability>, bound: &Rational| match w {
            None => true,
            Some(w) => {
                if !polytope.contains(w) {
                    return false;
                }
                let both = Concept::and(self.antecedent.clone(), self.consequent.clone());
                match (w.probability_of(&self.antecedent, &polytope.space), w.probability_of(&both, &polytope.space)) {
                    (Ok(pa), Ok(pac)) => pa.is_positive() && pac / pa == *bound,
                    _ => false,
                }
            }
        };
        check(&self.lo_witness, self.range.lo()) && check(&self.hi_witness, self.range.hi())
    }
}

/// One ordered pair of tracked concepts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairRange {
    Entailed(EntailedRange),
    Vacuous { antecedent: Concept, consequent: Concept },
}

/// Exact reasoning over one knowledge base. The atom space and polytope are
/// built once; the consistency verdict is computed on first use.
#[derive(Debug)]
pub struct ExactOracle<'k> {
    kb: &'k KnowledgeBase,
    polytope: Polytope,
    consistency: OnceLock<Consistency>,
}

impl<'k> ExactOracle<'k> {
    pub fn new(kb: &'k KnowledgeBase) -> Result<Self, AtomError> {
        Self::with_atom_cap(kb, DEFAULT_ATOM_CAP)
    }

    pub fn with_atom_cap(kb: &'k KnowledgeBase, cap: usize) -> Result<Self, AtomError> {
        let space = enumerate_atoms_capped(kb.terminology(), cap)?;
        Ok(Self {
            kb,
            polytope: build_polytope(kb, space)?,
            consistency: OnceLock::new(),
        })
    }

    pub fn knowledge_base(&self) -> &'k KnowledgeBase {
        self.kb
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    pub fn space(&self) -> &AtomSpace {
        &self.polytope.space
    }

    pub fn consistency(&self) -> &Consistency {
        self.consistency.get_or_init(|| self.decide_consistency())
    }

    fn require_consistent(&self) -> Result<(), OracleError> {
        match self.consistency() {
            Consistency::Consistent { .. } => Ok(()),
            Consistency::Inconsistent(r) => Err(OracleError::InconsistentKb(r.clone())),
        }
    }

    fn decide_consistency(&self) -> Consistency {
        let p = &self.polytope;
        let mut maximizers: Vec<AtomProbability> = Vec::new();
        for (index, pc) in self.kb.conditionings().iter().enumerate() {
            let objective = p.indicator(&pc.antecedent).expect("conditionings were validated");
            match solve_lp(&objective, p, Sense::Max) {
                LpResult::Optimal { value, witness } => {
                    if value.is_zero() {
                        return Consistency::Inconsistent(InconsistencyReport::ForcedEmptyAntecedent {
                            index,
                            antecedent: pc.antecedent.clone(),
                        });
                    }
                    maximizers.push(witness);
                }
                LpResult::Infeasible => return Consistency::Inconsistent(self.farkas_certificate()),
                LpResult::Unbounded => unreachable!("probabilities are bounded"),
            }
        }
        if maximizers.is_empty() {
            match solve_lp(&vec![Rational::zero(); p.dimension()], p, Sense::Max) {
                LpResult::Optimal { witness, .. } => maximizers.push(witness),
                _ => return Consistency::Inconsistent(self.farkas_certificate()),
            }
        }
        // The average of the maximizers keeps every antecedent positive.
        let k = Rational::from_integer(maximizers.len().into());
        let weights = (0..p.dimension())
            .map(|i| maximizers.iter().map(|m| m.weight(i)).sum::<Rational>() / &k)
            .collect();
        let witness = AtomProbability::new(weights).expect("convex combination");
        debug_assert!(p.contains(&witness));
        Consistency::Consistent { witness }
    }

    /// Solves for multipliers `λ ≥ 0` with `Σ_j λ_j z_j ≤ −1` atomwise.
    fn farkas_certificate(&self) -> InconsistencyReport {
        let p = &self.polytope;
        let m = p.constraints.len();
        let mut lp = LinearProgram::new(m, Sense::Min, vec![Rational::zero(); m]);
        for i in 0..p.dimension() {
            let row = p.constraints.iter().map(|c| c.coefficients[i].clone()).collect();
            lp.add_row(row, Relation::Le, -Rational::one());
        }
        let multipliers = match lp.solve() {
            LpOutcome::Optimal { point, .. } => point,
            other => unreachable!("Farkas alternative must be feasible, got {other:?}"),
        };
        let report = InconsistencyReport::EmptyPolytope { multipliers };
        debug_assert!(report.verify(p));
        report
    }

    /// Largest probability of `c` over the polytope.
    pub fn max_probability(&self, c: &Concept) -> Result<Rational, OracleError> {
        let objective = self.polytope.indicator(c)?;
        match solve_lp(&objective, &self.polytope, Sense::Max) {
            LpResult::Optimal { value, .. } => Ok(value),
            LpResult::Infeasible => Err(OracleError::InconsistentKb(self.farkas_certificate())),
            LpResult::Unbounded => unreachable!("probabilities are bounded"),
        }
    }

    /// `[min, max]` of `P(consequent | antecedent)` over distributions in the
    /// polytope giving the antecedent positive probability.
    ///
    /// Scaling by `1/P(antecedent)` turns the ratio into a linear objective:
    /// variables `y = t·p` with `Σy = t` and `Σ_{antecedent} y = 1`.
    pub fn entail_range(&self, antecedent: &Concept, consequent: &Concept) -> Result<EntailedRange, OracleError> {
        self.require_consistent()?;
        let p = &self.polytope;
        let n = p.dimension();
        let ante = p.indicator(antecedent)?;
        let both = p.indicator(&Concept::and(antecedent.clone(), consequent.clone()))?;

        let program = |sense: Sense| {
            let mut objective = both.clone();
            objective.push(Rational::zero());
            let mut lp = LinearProgram::new(n + 1, sense, objective);
            for c in &p.constraints {
                let mut row = c.coefficients.clone();
                row.push(Rational::zero());
                lp.add_row(row, relation(c.relation), Rational::zero());
            }
            let mut total = vec![Rational::one(); n];
            total.push(-Rational::one());
            lp.add_row(total, Relation::Eq, Rational::zero());
            let mut norm = ante.clone();
            norm.push(Rational::zero());
            lp.add_row(norm, Relation::Eq, Rational::one());
            lp
        };
        let solve = |sense| match program(sense).solve() {
            LpOutcome::Optimal { value, point } => {
                let t = point[n].clone();
                let weights = point[..n].iter().map(|y| y / &t).collect();
                Ok((value, AtomProbability::new(weights).expect("scaled point lies on the simplex")))
            }
            LpOutcome::Infeasible => Err(OracleError::VacuousAntecedent {
                antecedent: antecedent.clone(),
            }),
            LpOutcome::Unbounded => unreachable!("ratio objective is bounded by 1"),
        };
        let (lo, lo_witness) = solve(Sense::Min)?;
        let (hi, hi_witness) = solve(Sense::Max)?;
        let result = EntailedRange {
            antecedent: antecedent.clone(),
            consequent: consequent.clone(),
            range: Interval::new(lo, hi).expect("conditional probabilities lie in [0, 1]"),
            lo_witness: Some(lo_witness),
            hi_witness: Some(hi_witness),
        };
        debug_assert!(result.verify(p), "oracle witness check failed for {antecedent} -> {consequent}");
        Ok(result)
    }

    /// Ranges for every ordered pair of `tracked`, row-major.
    pub fn minimal_ranges(&self, tracked: &[Concept]) -> Result<Vec<PairRange>, OracleError> {
        self.require_consistent()?;
        let mut out = Vec::with_capacity(tracked.len() * tracked.len());
        for a in tracked {
            let vacuous = self.max_probability(a)?.is_zero();
            for c in tracked {
                if vacuous {
                    out.push(PairRange::Vacuous {
                        antecedent: a.clone(),
                        consequent: c.clone(),
                    });
                } else {
                    out.push(PairRange::Entailed(self.entail_range(a, c)?));
                }
            }
        }
        Ok(out)
    }

    /// `c1 ⪯ c2` with respect to the knowledge base: `P(c1 ⊓ ¬c2) = 0`
    /// throughout the polytope.
    pub fn subsumes_probabilistic(&self, c2: &Concept, c1: &Concept) -> Result<bool, OracleError> {
        self.require_consistent()?;
        let witness = Concept::and(c1.clone(), Concept::not(c2.clone()));
        Ok(self.max_probability(&witness)?.is_zero())
    }
}

pub fn check_consistency_exact(kb: &KnowledgeBase) -> Result<Consistency, AtomError> {
    Ok(ExactOracle::new(kb)?.consistency().clone())
}

pub fn entail_range_exact(
    antecedent: &Concept,
    consequent: &Concept,
    kb: &KnowledgeBase,
) -> Result<EntailedRange, OracleError> {
    ExactOracle::new(kb)?.entail_range(antecedent, consequent)
}

pub fn minimal_ranges_exact(kb: &KnowledgeBase, tracked: &[Concept]) -> Result<Vec<PairRange>, OracleError> {
    ExactOracle::new(kb)?.minimal_ranges(tracked)
}

/// `c1 ⪯_{T,I} c2`.
pub fn subsumes_probabilistic(c2: &Concept, c1: &Concept, kb: &KnowledgeBase) -> Result<bool, OracleError> {
    ExactOracle::new(kb)?.subsumes_probabilistic(c2, c1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::PConditioning;
    use crate::rational::rat;
    use crate::terminology::{Axiom, Terminology};

    fn sym(s: &str) -> Concept {
        Concept::atom(s)
    }

    fn range(lo: Rational, hi: Rational) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    fn example2() -> KnowledgeBase {
        let t = Terminology::from_axioms(vec![
            Axiom::specialization("animal", Concept::Top),
            Axiom::specialization("flying", Concept::Top),
            Axiom::definition("flying_object", Concept::all("moves_by", sym("flying"))),
            Axiom::specialization("antarctic_animal", sym("animal")),
            Axiom::specialization("bird", sym("animal")),
            Axiom::definition("antarctic_bird", Concept::and(sym("antarctic_animal"), sym("bird"))),
            Axiom::specialization("penguin", sym("antarctic_bird")),
        ])
        .unwrap();
        KnowledgeBase::new(
            t,
            vec![
                PConditioning::new(sym("bird"), sym("flying_object"), range(rat(19, 20), rat(1, 1))),
                PConditioning::new(sym("bird"), sym("antarctic_bird"), Interval::point(rat(1, 5)).unwrap()),
                PConditioning::new(sym("penguin"), sym("flying_object"), Interval::zero()),
            ],
        )
        .unwrap()
    }

    fn ab(conditionings: Vec<PConditioning>) -> KnowledgeBase {
        let t = Terminology::validate(&["A".into(), "B".into()], &[], vec![]).unwrap();
        KnowledgeBase::new(t, conditionings).unwrap()
    }

    #[test]
    fn example_five_ranges() {
        let kb = example2();
        let oracle = ExactOracle::new(&kb).unwrap();
        assert!(oracle.consistency().is_consistent());
        let r = oracle.entail_range(&sym("antarctic_bird"), &sym("flying_object")).unwrap();
        assert_eq!(r.range, range(rat(3, 4), rat(1, 1)));
        let r = oracle.entail_range(&sym("bird"), &sym("penguin")).unwrap();
        assert_eq!(r.range, range(rat(0, 1), rat(1, 20)));
        assert!(r.verify(oracle.polytope()));
    }

    #[test]
    fn polytope_coefficients_follow_conditioning() {
        let kb = example2();
        let oracle = ExactOracle::new(&kb).unwrap();
        let p = oracle.polytope();
        assert_eq!(p.constraints.len(), 6);
        let bird = p.space.concept_mask(&sym("bird")).unwrap();
        let fo = p.space.concept_mask(&sym("flying_object")).unwrap();
        for i in 0..p.dimension() {
            let want = match (bird[i], fo[i]) {
                (false, _) => rat(0, 1),
                (true, true) => rat(1, 20),
                (true, false) => rat(-19, 20),
            };
            assert_eq!(p.constraints[0].coefficients[i], want);
        }
    }

    #[test]
    fn diagonal_is_certain() {
        let kb = example2();
        for s in ["bird", "penguin", "flying"] {
            let r = entail_range_exact(&sym(s), &sym(s), &kb).unwrap();
            assert_eq!(r.range, Interval::one());
        }
    }

    #[test]
    fn axiom_against_interval_is_inconsistent() {
        let t = Terminology::validate(&["B".into()], &[], vec![Axiom::specialization("A", sym("B"))]).unwrap();
        let kb = KnowledgeBase::new(
            t,
            vec![PConditioning::new(sym("A"), sym("B"), range(rat(0, 1), rat(1, 2)))],
        )
        .unwrap();
        match check_consistency_exact(&kb).unwrap() {
            Consistency::Inconsistent(InconsistencyReport::ForcedEmptyAntecedent { index: 0, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn contradictory_duplicates_are_inconsistent() {
        let kb = ab(vec![
            PConditioning::new(sym("A"), sym("B"), range(rat(1, 5), rat(3, 10))),
            PConditioning::new(sym("A"), sym("B"), range(rat(1, 2), rat(3, 5))),
        ]);
        assert!(!check_consistency_exact(&kb).unwrap().is_consistent());
    }

    #[test]
    fn empty_polytope_gets_checked_certificate() {
        let kb = ab(vec![
            PConditioning::new(Concept::Top, sym("A"), Interval::point(rat(1, 2)).unwrap()),
            PConditioning::new(Concept::Top, sym("A"), Interval::point(rat(1, 3)).unwrap()),
        ]);
        let oracle = ExactOracle::new(&kb).unwrap();
        match oracle.consistency() {
            Consistency::Inconsistent(r @ InconsistencyReport::EmptyPolytope { .. }) => {
                assert!(r.verify(oracle.polytope()))
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            oracle.entail_range(&sym("A"), &sym("B")),
            Err(OracleError::InconsistentKb(_))
        ));
    }

    #[test]
    fn complete_ignorance() {
        let kb = ab(vec![]);
        let rows = minimal_ranges_exact(&kb, &[sym("A"), sym("B")]).unwrap();
        let ranges: Vec<Interval> = rows
            .into_iter()
            .map(|r| match r {
                PairRange::Entailed(e) => e.range,
                PairRange::Vacuous { .. } => panic!(),
            })
            .collect();
        assert_eq!(ranges, vec![Interval::one(), Interval::unit(), Interval::unit(), Interval::one()]);
    }

    #[test]
    fn vacuous_antecedent_reported() {
        let kb = ab(vec![PConditioning::new(Concept::Top, sym("A"), Interval::zero())]);
        assert!(matches!(
            entail_range_exact(&sym("A"), &sym("B"), &kb),
            Err(OracleError::VacuousAntecedent { .. })
        ));
        let rows = minimal_ranges_exact(&kb, &[sym("A")]).unwrap();
        assert!(matches!(rows[0], PairRange::Vacuous { .. }));
    }

    #[test]
    fn probabilistic_subsumption() {
        let certain = ab(vec![PConditioning::new(sym("A"), sym("B"), Interval::one())]);
        assert!(subsumes_probabilistic(&sym("B"), &sym("A"), &certain).unwrap());
        let likely = ab(vec![PConditioning::new(sym("A"), sym("B"), range(rat(9, 10), rat(1, 1)))]);
        assert!(!subsumes_probabilistic(&sym("B"), &sym("A"), &likely).unwrap());
    }

    #[test]
    fn pinned_atoms_give_point_ratio() {
        // Atoms in order ¬A¬B, ¬AB, A¬B, AB weighted 1/2, 1/10, 3/10, 1/10.
        let kb = ab(vec![
            PConditioning::new(Concept::Top, sym("A"), Interval::point(rat(2, 5)).unwrap()),
            PConditioning::new(Concept::Top, sym("B"), Interval::point(rat(1, 5)).unwrap()),
            PConditioning::new(
                Concept::Top,
                Concept::and(sym("A"), sym("B")),
                Interval::point(rat(1, 10)).unwrap(),
            ),
        ]);
        let oracle = ExactOracle::new(&kb).unwrap();
        let objective: Vec<Rational> = oracle
            .polytope()
            .indicator(&Concept::and(sym("A"), sym("B")))
            .unwrap();
        match solve_lp(&objective, oracle.polytope(), Sense::Max) {
            LpResult::Optimal { value, witness } => {
                assert_eq!(value, rat(1, 10));
                assert_eq!(witness.weights(), &[rat(1, 2), rat(1, 10), rat(3, 10), rat(1, 10)]);
            }
            other => panic!("{other:?}"),
        }
        let r = oracle.entail_range(&sym("A"), &sym("B")).unwrap();
        assert_eq!(r.range, Interval::point(rat(1, 4)).unwrap());
    }
}
