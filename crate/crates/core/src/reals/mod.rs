//! Exact real arithmetic over two representations: positional digit
//! streams, and oracles from precision requests to nested rational
//! intervals.
//!
//! Nothing in here touches floating point. Comparison of oracle reals is
//! only semi-decidable, so every operation that needs a sign takes a
//! [`SeparationWitness`].

mod arith;
mod cauchy;
mod digits;
mod dreal;
mod interval;

pub use arith::{add, compare_separated, mul, negate, reciprocal, sub, to_digits};
pub use cauchy::CauchyReal;
pub use digits::{from_rational, DigitStream, Sign};
pub use dreal::{parse_dreal, write_dreal};
pub use interval::RationalInterval;

use num_rational::BigRational;
use num_traits::Signed;
use thiserror::Error;

use crate::rational::format_rational;

pub const DEFAULT_BASE: u32 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealError {
    #[error("invalid base {0}: must be at least 2")]
    InvalidBase(u32),
    #[error("digit {digit} out of range for base {base}")]
    DigitOutOfRange { digit: u32, base: u32 },
    #[error("interval endpoints out of order: {lo} > {hi}")]
    InvertedInterval { lo: String, hi: String },
    #[error("separation gap must be positive, got {0}")]
    NonPositiveGap(String),
    #[error("approximation {approx} contradicts separation witness {gap}")]
    WitnessViolation { approx: String, gap: String },
    #[error("digit {position} did not commit within the refinement fuel")]
    Undetermined { position: usize },
    #[error("malformed DREAL input: {0}")]
    Dreal(String),
}

/// Caller-supplied lower bound on a magnitude, `|a| >= gap` or `|a - b| >= gap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationWitness {
    gap: BigRational,
}

impl SeparationWitness {
    pub fn new(gap: BigRational) -> Result<Self, RealError> {
        if gap.is_positive() {
            Ok(SeparationWitness { gap })
        } else {
            Err(RealError::NonPositiveGap(format_rational(&gap)))
        }
    }

    pub fn gap(&self) -> &BigRational {
        &self.gap
    }
}

pub(crate) fn check_base(base: u32) -> Result<(), RealError> {
    if base < 2 {
        Err(RealError::InvalidBase(base))
    } else {
        Ok(())
    }
}
