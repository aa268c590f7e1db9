use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use super::MonotoneError;
use crate::rational::{format_rational, ExtRational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    NonDecreasing,
    NonIncreasing,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::NonDecreasing => "non-decreasing",
            Direction::NonIncreasing => "non-increasing",
        }
    }

    /// Value of the empty supremum (or infimum).
    pub fn bottom(self) -> ExtRational {
        match self {
            Direction::NonDecreasing => ExtRational::NegInfinity,
            Direction::NonIncreasing => ExtRational::PosInfinity,
        }
    }

    /// `a` comes no later than `b` in this direction's value order.
    fn weakly_before(self, a: &ExtRational, b: &ExtRational) -> bool {
        match self {
            Direction::NonDecreasing => a <= b,
            Direction::NonIncreasing => a >= b,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "non-decreasing" | "nondecreasing" | "increasing" | "inc" => Ok(Direction::NonDecreasing),
            "non-increasing" | "nonincreasing" | "decreasing" | "dec" => Ok(Direction::NonIncreasing),
            other => Err(format!("unknown direction `{other}`")),
        }
    }
}

/// Finite code of a monotone function: samples at rational keys, samples
/// at discontinuities, and the value taken left of every key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneCode {
    direction: Direction,
    baseline: ExtRational,
    rational_samples: BTreeMap<BigRational, ExtRational>,
    discontinuity_samples: BTreeMap<BigRational, ExtRational>,
}

impl MonotoneCode {
    pub fn new(
        direction: Direction,
        rational_samples: BTreeMap<BigRational, ExtRational>,
        discontinuity_samples: BTreeMap<BigRational, ExtRational>,
    ) -> Result<Self, MonotoneError> {
        Self::with_baseline(direction, direction.bottom(), rational_samples, discontinuity_samples)
    }

    /// Like [`MonotoneCode::new`] but with an explicit value for keys left
    /// of every sample; it must not exceed (resp. undercut) any sample.
    pub fn with_baseline(
        direction: Direction,
        baseline: ExtRational,
        rational_samples: BTreeMap<BigRational, ExtRational>,
        discontinuity_samples: BTreeMap<BigRational, ExtRational>,
    ) -> Result<Self, MonotoneError> {
        if let Some(k) = rational_samples.keys().find(|k| discontinuity_samples.contains_key(*k)) {
            return Err(MonotoneError::DuplicateKey(format_rational(k)));
        }
        let mut merged: Vec<(&BigRational, &ExtRational)> =
            rational_samples.iter().chain(discontinuity_samples.iter()).collect();
        merged.sort_by(|a, b| a.0.cmp(b.0));
        for pair in merged.windows(2) {
            if !direction.weakly_before(pair[0].1, pair[1].1) {
                return Err(MonotoneError::Inconsistent {
                    left: format_rational(pair[0].0),
                    right: format_rational(pair[1].0),
                    direction: direction.name(),
                });
            }
        }
        if let Some((_, first)) = merged.first() {
            if !direction.weakly_before(&baseline, first) {
                return Err(MonotoneError::BadBaseline(baseline.to_string()));
            }
        }
        Ok(MonotoneCode {
            direction,
            baseline,
            rational_samples,
            discontinuity_samples,
        })
    }

    /// The constant function with value `value`.
    pub fn constant(value: BigRational) -> Self {
        MonotoneCode {
            direction: Direction::NonDecreasing,
            baseline: ExtRational::Finite(value),
            rational_samples: BTreeMap::new(),
            discontinuity_samples: BTreeMap::new(),
        }
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn baseline(&self) -> &ExtRational {
        &self.baseline
    }

    pub fn rational_samples(&self) -> &BTreeMap<BigRational, ExtRational> {
        &self.rational_samples
    }

    pub fn discontinuity_samples(&self) -> &BTreeMap<BigRational, ExtRational> {
        &self.discontinuity_samples
    }

    /// Every stored key with its value, rational and discontinuity samples alike.
    pub fn samples(&self) -> impl Iterator<Item = (&BigRational, &ExtRational)> {
        self.rational_samples.iter().chain(self.discontinuity_samples.iter())
    }

    pub fn is_constant_zero(&self) -> bool {
        self.rational_samples.is_empty()
            && self.discontinuity_samples.is_empty()
            && self.baseline == ExtRational::zero()
    }
}

/// Code whose rational samples are exactly `samples`.
pub fn encode_monotone(
    samples: &BTreeMap<BigRational, BigRational>,
    direction: Direction,
) -> Result<MonotoneCode, MonotoneError> {
    let rational_samples = samples
        .iter()
        .map(|(k, v)| (k.clone(), ExtRational::Finite(v.clone())))
        .collect();
    MonotoneCode::new(direction, rational_samples, BTreeMap::new())
}

/// `sup({f(d_n) : d_n <= x} ∪ {f(q_n) : q_n <= x})` for non-decreasing
/// codes and the infimum for non-increasing ones; the empty case yields
/// the baseline.
pub fn eval_code(code: &MonotoneCode, x: &BigRational) -> ExtRational {
    let left = code
        .rational_samples
        .range(..=x.clone())
        .chain(code.discontinuity_samples.range(..=x.clone()))
        .map(|(_, v)| v);
    let pick = match code.direction {
        Direction::NonDecreasing => Iterator::max,
        Direction::NonIncreasing => Iterator::min,
    };
    match pick(left.chain(std::iter::once(&code.baseline))) {
        Some(v) => v.clone(),
        None => code.baseline.clone(),
    }
}

/// The arithmetic membership formula
/// `∀ n, m ((q_n <= x ↔ f(q_n) <= y) ∨ (d_m >= x ↔ f(d_m) >= y))`,
/// with the value comparisons reversed for non-increasing codes.
///
/// A universally quantified disjunction over independent indices holds
/// iff one disjunct holds for every index, which is how it is evaluated.
/// With either sample set empty the quantifier is vacuous.
pub fn member_check(code: &MonotoneCode, x: &BigRational, y: &ExtRational) -> bool {
    if code.rational_samples.is_empty() || code.discontinuity_samples.is_empty() {
        return true;
    }
    type Cmp = fn(&ExtRational, &ExtRational) -> bool;
    let (below, above): (Cmp, Cmp) = match code.direction {
        Direction::NonDecreasing => (|v, y| v <= y, |v, y| v >= y),
        Direction::NonIncreasing => (|v, y| v >= y, |v, y| v <= y),
    };
    let rational_side = code.rational_samples.iter().all(|(q, v)| (q <= x) == below(v, y));
    let discontinuity_side = code.discontinuity_samples.iter().all(|(d, v)| (d >= x) == above(v, y));
    rational_side || discontinuity_side
}
