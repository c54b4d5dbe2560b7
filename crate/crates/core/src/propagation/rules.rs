//! Local refinement rules over a triple of concepts `A, B, C`.
//!
//! Slot names follow the usual labeling: `p = A→C`, `q = A→B`,
//! `q' = B→A`, `p' = C→A`, `r' = C→B`; every rule yields a candidate for
//! `B→C`. Candidates are raw bounds and may be empty or leave `[0, 1]`.

use num_traits::{One, Zero};

use crate::interval::{Bounds, Interval};
use crate::rational::{max, min, one, zero, Rational};

/// Triangular bounds for `B→C` from `p`, `q`, `q'`, `p'`.
///
/// Every case of the published analysis contributes whenever its side
/// condition holds, and the tightest bound wins.
pub fn rule_triangle(p: &Interval, q: &Interval, q_rev: &Interval, p_rev: &Interval) -> Bounds {
    let (pl, pu) = (p.lo(), p.hi());
    let ql = q.lo();
    let (rql, rqu) = (q_rev.lo(), q_rev.hi());
    let rpl = p_rev.lo();

    let mut lo = zero();
    if !ql.is_zero() {
        let overlap = max(&zero(), &(ql + pl - one()));
        lo = max(&lo, &(rql / ql * overlap));
    }
    if pl.is_one() {
        lo = max(&lo, rql);
    }

    let mut hi = one();
    if !ql.is_zero() {
        hi = min(&hi, &(one() - rql + pu * rql / ql));
        if !rpl.is_zero() {
            let via_c = pu / rpl * rqu / ql;
            hi = min(&hi, &(&via_c * (one() - rpl) + rqu));
            hi = min(&hi, &via_c);
            hi = min(&hi, &(pu / (rpl * (ql - pu) + pu)));
        }
    }
    if rpl.is_one() {
        hi = min(&hi, rqu);
    }
    if pu.is_zero() {
        hi = min(&hi, &(one() - rql));
    }
    Bounds::new(lo, hi)
}

/// Bayes refinement for `B→C` once `r' = C→B` is known as well. `None`
/// unless `p'_l ≠ 0` and `q_l ≠ 0`.
pub fn rule_bayes(
    p: &Interval,
    q: &Interval,
    q_rev: &Interval,
    p_rev: &Interval,
    r_rev: &Interval,
) -> Option<Bounds> {
    if p_rev.lo().is_zero() || q.lo().is_zero() {
        return None;
    }
    let lo: Rational = r_rev.lo() * p.lo() / p_rev.hi() * q_rev.lo() / q.hi();
    let hi: Rational = r_rev.hi() * p.hi() / p_rev.lo() * q_rev.hi() / q.lo();
    Some(Bounds::new(lo, hi))
}

/// Range of `A→¬B` given `A→B`.
pub fn rule_negation_duality(ab: &Interval) -> Bounds {
    ab.complement().into()
}

/// Candidate for `C→D` given `D→C`: once `D→C` is pinned to zero, so is
/// `C→D`. When `C→D` has a positive lower bound this candidate empties it,
/// which is the positivity conflict.
pub fn rule_zero_symmetry_and_positivity(dc: &Interval) -> Option<Bounds> {
    dc.is_zero().then(|| Interval::zero().into())
}
