//! Exact two-phase simplex over the rationals.
//!
//! Pivoting follows Bland's rule (lowest-index entering column, lowest-index
//! basic variable on ratio ties), which cannot cycle.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Min,
    Max,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub coefficients: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// Optimize `objective · x` subject to the rows and `x ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<Rational>,
    pub sense: Sense,
    pub rows: Vec<Row>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, point: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn new(num_vars: usize, sense: Sense, objective: Vec<Rational>) -> Self {
        assert_eq!(objective.len(), num_vars);
        Self {
            num_vars,
            objective,
            sense,
            rows: Vec::new(),
        }
    }

    pub fn add_row(&mut self, coefficients: Vec<Rational>, relation: Relation, rhs: Rational) {
        assert_eq!(coefficients.len(), self.num_vars);
        self.rows.push(Row {
            coefficients,
            relation,
            rhs,
        });
    }

    /// True when `x` is nonnegative and satisfies every row.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars
            && x.iter().all(|v| !v.is_negative())
            && self.rows.iter().all(|r| {
                let lhs = dot(&r.coefficients, x);
                match r.relation {
                    Relation::Le => lhs <= r.rhs,
                    Relation::Ge => lhs >= r.rhs,
                    Relation::Eq => lhs == r.rhs,
                }
            })
    }

    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        dot(&self.objective, x)
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::build(self).run(self)
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

struct Tableau {
    /// Each row holds the column coefficients followed by the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
    first_artificial: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let n = lp.num_vars;
        let slacks = lp.rows.iter().filter(|r| r.relation != Relation::Eq).count();
        let artificials = lp
            .rows
            .iter()
            .filter(|r| {
                let flipped = r.rhs.is_negative();
                match r.relation {
                    Relation::Eq => true,
                    Relation::Ge => !flipped,
                    Relation::Le => flipped,
                }
            })
            .count();
        let width = n + slacks + artificials;
        let first_artificial = n + slacks;
        let (mut next_slack, mut next_art) = (n, first_artificial);
        let mut rows = Vec::with_capacity(lp.rows.len());
        let mut basis = Vec::with_capacity(lp.rows.len());
        for r in &lp.rows {
            let flip = r.rhs.is_negative();
            let mut row = vec![Rational::zero(); width + 1];
            for (j, c) in r.coefficients.iter().enumerate() {
                row[j] = if flip { -c } else { c.clone() };
            }
            row[width] = if flip { -&r.rhs } else { r.rhs.clone() };
            let relation = match (r.relation, flip) {
                (Relation::Le, true) => Relation::Ge,
                (Relation::Ge, true) => Relation::Le,
                (rel, _) => rel,
            };
            match relation {
                Relation::Le => {
                    row[next_slack] = Rational::from_integer(1.into());
                    basis.push(next_slack);
                    next_slack += 1;
                }
                Relation::Ge => {
                    row[next_slack] = Rational::from_integer((-1).into());
                    next_slack += 1;
                    row[next_art] = Rational::from_integer(1.into());
                    basis.push(next_art);
                    next_art += 1;
                }
                Relation::Eq => {
                    row[next_art] = Rational::from_integer(1.into());
                    basis.push(next_art);
                    next_art += 1;
                }
            }
            rows.push(row);
        }
        Self {
            rows,
            basis,
            width,
            first_artificial,
        }
    }

    fn run(mut self, lp: &LinearProgram) -> LpOutcome {
        if self.first_artificial < self.width {
            let cost: Vec<Rational> = (0..self.width)
                .map(|j| {
                    if j >= self.first_artificial {
                        Rational::from_integer((-1).into())
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            // Phase one is bounded above by zero.
            let _ = self.optimize(&cost, self.width);
            let infeasibility: Rational = self
                .rows
                .iter()
                .zip(&self.basis)
                .filter(|(_, &b)| b >= self.first_artificial)
                .fold(Rational::zero(), |acc, (row, _)| acc + &row[self.width]);
            if !infeasibility.is_zero() {
                return LpOutcome::Infeasible;
            }
            self.drive_out_artificials();
        }

        let mut cost = vec![Rational::zero(); self.width];
        for (j, c) in lp.objective.iter().enumerate() {
            cost[j] = match lp.sense {
                Sense::Max => c.clone(),
                Sense::Min => -c,
            };
        }
        if !self.optimize(&cost, self.first_artificial) {
            return LpOutcome::Unbounded;
        }
        let mut point = vec![Rational::zero(); lp.num_vars];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < lp.num_vars {
                point[b] = row[self.width].clone();
            }
        }
        LpOutcome::Optimal {
            value: lp.evaluate(&point),
            point,
        }
    }

    /// Maximizes `cost` using columns below `eligible`. False if unbounded.
    fn optimize(&mut self, cost: &[Rational], eligible: usize) -> bool {
        loop {
            let entering = (0..eligible).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let reduced = self
                    .rows
                    .iter()
                    .zip(&self.basis)
                    .filter(|(row, &b)| !cost[b].is_zero() && !row[j].is_zero())
                    .fold(cost[j].clone(), |acc, (row, &b)| acc - &cost[b] * &row[j]);
                reduced.is_positive()
            });
            let Some(j) = entering else {
                return true;
            };
            let mut leaving: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[j].is_positive() {
                    continue;
                }
                let ratio = &row[self.width] / &row[j];
                let better = match &leaving {
                    None => true,
                    Some((k, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*k]),
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
            match leaving {
                Some((i, _)) => self.pivot(i, j),
                None => return false,
            }
        }
    }

    fn pivot(&mut self, i: usize, j: usize) {
        let p = self.rows[i][j].clone();
        for v in self.rows[i].iter_mut() {
            if !v.is_zero() {
                *v /= &p;
            }
        }
        let support: Vec<usize> = (0..=self.width).filter(|&k| !self.rows[i][k].is_zero()).collect();
        let pivot_row = self.rows[i].clone();
        for (r, row) in self.rows.iter_mut().enumerate() {
            if r == i || row[j].is_zero() {
                continue;
            }
            let f = row[j].clone();
            for &k in &support {
                row[k] -= &f * &pivot_row[k];
            }
        }
        self.basis[i] = j;
    }

    /// Pivots zero-level artificial variables out of the basis, dropping rows
    /// that turn out to be redundant.
    fn drive_out_artificials(&mut self) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] < self.first_artificial {
                i += 1;
                continue;
            }
            match (0..self.first_artificial).find(|&j| !self.rows[i][j].is_zero()) {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    self.rows.remove(i);
                    self.basis.remove(i);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn r(n: i64) -> Rational {
        rat(n, 1)
    }

    #[test]
    fn maximize_on_simplex() {
        let mut lp = LinearProgram::new(2, Sense::Max, vec![r(1), r(0)]);
        lp.add_row(vec![r(1), r(1)], Relation::Eq, r(1));
        assert_eq!(
            lp.solve(),
            LpOutcome::Optimal {
                value: r(1),
                point: vec![r(1), r(0)]
            }
        );
    }

    #[test]
    fn infeasible_system() {
        let mut lp = LinearProgram::new(2, Sense::Max, vec![r(1), r(0)]);
        lp.add_row(vec![r(1), r(0)], Relation::Ge, r(2));
        lp.add_row(vec![r(1), r(1)], Relation::Eq, r(1));
        assert_eq!(lp.solve(), LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded_ray() {
        let mut lp = LinearProgram::new(2, Sense::Max, vec![r(1), r(1)]);
        lp.add_row(vec![r(1), r(-1)], Relation::Le, r(1));
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn minimize_with_negative_rhs() {
        // min x + 2y s.t. -x - y <= -3/2, y >= 1/4
        let mut lp = LinearProgram::new(2, Sense::Min, vec![r(1), r(2)]);
        lp.add_row(vec![r(-1), r(-1)], Relation::Le, rat(-3, 2));
        lp.add_row(vec![r(0), r(1)], Relation::Ge, rat(1, 4));
        match lp.solve() {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, rat(7, 4));
                assert_eq!(point, vec![rat(5, 4), rat(1, 4)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(3, Sense::Max, vec![r(0), r(1), r(1)]);
        lp.add_row(vec![r(1), r(1), r(1)], Relation::Eq, r(1));
        lp.add_row(vec![r(2), r(2), r(2)], Relation::Eq, r(2));
        lp.add_row(vec![r(0), r(1), r(0)], Relation::Le, rat(1, 3));
        match lp.solve() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, r(1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's example, which cycles under the textbook largest-coefficient rule.
        let mut lp = LinearProgram::new(
            4,
            Sense::Max,
            vec![rat(3, 4), r(-150), rat(1, 50), r(-6)],
        );
        lp.add_row(vec![rat(1, 4), r(-60), rat(-1, 25), r(9)], Relation::Le, r(0));
        lp.add_row(vec![rat(1, 2), r(-90), rat(-1, 50), r(3)], Relation::Le, r(0));
        lp.add_row(vec![r(0), r(0), r(1), r(0)], Relation::Le, r(1));
        match lp.solve() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat(1, 20)),
            other => panic!("{other:?}"),
        }
    }

    fn brute_force_max(c: &[i64], rows: &[(Vec<i64>, i64)]) -> Option<Rational> {
        // Vertices of {x >= 0, a.x <= b} in two dimensions.
        let mut lines: Vec<(Rational, Rational, Rational)> = rows
            .iter()
            .map(|(a, b)| (r(a[0]), r(a[1]), r(*b)))
            .collect();
        lines.push((r(1), r(0), r(0)));
        lines.push((r(0), r(1), r(0)));
        let feasible = |x: &Rational, y: &Rational| {
            !x.is_negative()
                && !y.is_negative()
                && rows.iter().all(|(a, b)| r(a[0]) * x + r(a[1]) * y <= r(*b))
        };
        let mut best: Option<Rational> = None;
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                let (a1, b1, c1) = &lines[i];
                let (a2, b2, c2) = &lines[j];
                let det = a1 * b2 - a2 * b1;
                if det.is_zero() {
                    continue;
                }
                let x = (c1 * b2 - c2 * b1) / &det;
                let y = (a1 * c2 - a2 * c1) / &det;
                if feasible(&x, &y) {
                    let v = r(c[0]) * &x + r(c[1]) * &y;
                    if best.as_ref().is_none_or(|b| v > *b) {
                        best = Some(v);
                    }
                }
            }
        }
        best
    }

    proptest! {
        #[test]
        fn bounded_2d_programs_match_vertex_enumeration(
            c in prop::collection::vec(0i64..5, 2),
            rows in prop::collection::vec((prop::collection::vec(-3i64..5, 2), -2i64..8), 1..5),
        ) {
            let mut rows = rows;
            // A box keeps everything bounded.
            rows.push((vec![1, 1], 10));
            let mut lp = LinearProgram::new(2, Sense::Max, c.iter().map(|&v| r(v)).collect());
            for (a, b) in &rows {
                lp.add_row(a.iter().map(|&v| r(v)).collect(), Relation::Le, r(*b));
            }
            match (lp.solve(), brute_force_max(&c, &rows)) {
                (LpOutcome::Optimal { value, point }, Some(best)) => {
                    prop_assert!(lp.is_feasible(&point));
                    prop_assert_eq!(value, best);
                }
                (LpOutcome::Infeasible, None) => {}
                (got, want) => prop_assert!(false, "{:?} vs {:?}", got, want),
            }
        }
    }
}
