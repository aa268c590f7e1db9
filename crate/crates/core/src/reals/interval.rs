use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::RealError;
use crate::rational::{ceil_to_grid, floor_to_grid, format_rational};

/// A closed interval `[lo, hi]` with exact rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self, RealError> {
        if lo > hi {
            return Err(RealError::InvertedInterval {
                lo: format_rational(&lo),
                hi: format_rational(&hi),
            });
        }
        Ok(RationalInterval { lo, hi })
    }

    pub fn point(q: BigRational) -> Self {
        RationalInterval { lo: q.clone(), hi: q }
    }

    /// Builds from two endpoints in either order.
    pub fn spanning(a: BigRational, b: BigRational) -> Self {
        if a <= b {
            RationalInterval { lo: a, hi: b }
        } else {
            RationalInterval { lo: b, hi: a }
        }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn is_subset_of(&self, other: &RationalInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn intersect(&self, other: &RationalInterval) -> Option<RationalInterval> {
        let lo = if self.lo >= other.lo { &self.lo } else { &other.lo };
        let hi = if self.hi <= other.hi { &self.hi } else { &other.hi };
        (lo <= hi).then(|| RationalInterval {
            lo: lo.clone(),
            hi: hi.clone(),
        })
    }

    /// Largest absolute value attained on the interval.
    pub fn magnitude(&self) -> BigRational {
        let (a, b) = (self.lo.abs(), self.hi.abs());
        if a >= b {
            a
        } else {
            b
        }
    }

    /// `true` when every point is strictly positive.
    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// `true` when the interval lies strictly inside `(-gap, gap)`.
    pub fn within_open_ball(&self, gap: &BigRational) -> bool {
        self.lo > -gap.clone() && &self.hi < gap
    }

    pub fn neg(&self) -> RationalInterval {
        RationalInterval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn add(&self, other: &RationalInterval) -> RationalInterval {
        RationalInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn mul(&self, other: &RationalInterval) -> RationalInterval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let mut lo = products[0].clone();
        let mut hi = products[0].clone();
        for p in &products[1..] {
            if p < &lo {
                lo = p.clone();
            }
            if p > &hi {
                hi = p.clone();
            }
        }
        RationalInterval { lo, hi }
    }

    /// Reciprocal of an interval that excludes zero.
    pub fn recip(&self) -> Option<RationalInterval> {
        if self.lo.is_positive() || self.hi.is_negative() {
            Some(RationalInterval {
                lo: self.hi.recip(),
                hi: self.lo.recip(),
            })
        } else {
            None
        }
    }

    /// Rounds outward onto the grid of multiples of `1/den`.
    pub fn round_out(&self, den: &BigInt) -> RationalInterval {
        RationalInterval {
            lo: floor_to_grid(&self.lo, den),
            hi: ceil_to_grid(&self.hi, den),
        }
    }

    pub fn is_point(&self) -> bool {
        self.width().is_zero()
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", format_rational(&self.lo), format_rational(&self.hi))
    }
}
