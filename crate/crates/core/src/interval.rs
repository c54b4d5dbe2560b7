//! Closed probability intervals with exact endpoints.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::{self, format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("interval out of bounds: endpoints must lie in [0, 1]")]
    OutOfBounds,
    #[error("lo > hi")]
    Inverted,
    #[error("empty intersection of {0} and {1}")]
    EmptyIntersection(Interval, Interval),
}

/// `[lo, hi]` with `0 <= lo <= hi <= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, IntervalError> {
        if !rational::is_unit(&lo) || !rational::is_unit(&hi) {
            return Err(IntervalError::OutOfBounds);
        }
        if lo > hi {
            return Err(IntervalError::Inverted);
        }
        Ok(Self { lo, hi })
    }

    pub fn point(p: Rational) -> Result<Self, IntervalError> {
        Self::new(p.clone(), p)
    }

    /// The uninformative range `[0, 1]`.
    pub fn unit() -> Self {
        Self {
            lo: Rational::zero(),
            hi: Rational::one(),
        }
    }

    pub fn zero() -> Self {
        Self {
            lo: Rational::zero(),
            hi: Rational::zero(),
        }
    }

    pub fn one() -> Self {
        Self {
            lo: Rational::one(),
            hi: Rational::one(),
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_zero(&self) -> bool {
        self.hi.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.lo.is_one()
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// True when `other` is a sub-interval of `self`.
    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Result<Interval, IntervalError> {
        let lo = rational::max(&self.lo, &other.lo);
        let hi = rational::min(&self.hi, &other.hi);
        if lo > hi {
            return Err(IntervalError::EmptyIntersection(self.clone(), other.clone()));
        }
        Ok(Interval { lo, hi })
    }

    /// `[1 - hi, 1 - lo]`, the range of the complementary conditional.
    pub fn complement(&self) -> Interval {
        Interval {
            lo: Rational::one() - &self.hi,
            hi: Rational::one() - &self.lo,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", format_rational(&self.lo), format_rational(&self.hi))
    }
}

/// Raw bounds produced by a propagation rule. May be inverted or stray outside
/// `[0, 1]` when the premises are jointly unsatisfiable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounds {
    pub lo: Rational,
    pub hi: Rational,
}

impl Bounds {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        Self { lo, hi }
    }

    /// Bounds no probability satisfies.
    pub fn empty() -> Self {
        Self::new(Rational::one(), Rational::zero())
    }

    /// Clamps into `[0, 1]`. `None` means no probability satisfies the bounds.
    pub fn to_interval(&self) -> Option<Interval> {
        if self.lo > Rational::one() || self.hi < Rational::zero() {
            return None;
        }
        let lo = rational::max(&self.lo, &Rational::zero());
        let hi = rational::min(&self.hi, &Rational::one());
        Interval::new(lo, hi).ok()
    }
}

impl From<Interval> for Bounds {
    fn from(i: Interval) -> Self {
        Bounds { lo: i.lo, hi: i.hi }
    }
}
