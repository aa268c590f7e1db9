//! Covers of finite functions by strictly monotone pieces.
//!
//! Strategies work on the value sequence of a function read in key order,
//! reduced to dense ranks, and return pieces as index sets into that
//! sequence. They are interchangeable behind [`CoverStrategy`] and
//! selected by name from a [`CoverRegistry`].

mod exact;
mod greedy;

pub use exact::{min_cover_size, ExactMinCover, DEFAULT_MAX_POINTS};
pub use greedy::{longest_chain, GreedyLongestChain};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use thiserror::Error;

use crate::rational::format_rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("not a function: key {0} appears more than once")]
    NotAFunction(String),
    #[error("{points} points exceed the exact search bound of {bound}")]
    TooLarge { points: usize, bound: usize },
    #[error("unknown cover strategy `{0}`")]
    UnknownStrategy(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
}

impl Monotonicity {
    pub fn name(self) -> &'static str {
        match self {
            Monotonicity::Increasing => "increasing",
            Monotonicity::Decreasing => "decreasing",
        }
    }

    /// `a` may precede `b` in a strictly monotone piece of this direction.
    pub fn admits<T: Ord>(self, a: &T, b: &T) -> bool {
        match self {
            Monotonicity::Increasing => a < b,
            Monotonicity::Decreasing => a > b,
        }
    }
}

impl fmt::Display for Monotonicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Indices (ascending) into a key-ordered sequence, with the direction the
/// values follow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub direction: Monotonicity,
    pub indices: Vec<usize>,
}

impl Piece {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Values at consecutive keys move strictly in `direction`.
pub fn is_strictly_monotone<T: Ord>(values: &[T], direction: Monotonicity) -> bool {
    values.windows(2).all(|w| direction.admits(&w[0], &w[1]))
}

/// Checks that `pieces` partition `0..seq.len()` and each is strictly
/// monotone in its direction.
pub fn verify_cover<T: Ord>(seq: &[T], pieces: &[Piece]) -> bool {
    let mut seen = vec![false; seq.len()];
    for piece in pieces {
        if piece.indices.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        for &i in &piece.indices {
            if i >= seq.len() || std::mem::replace(&mut seen[i], true) {
                return false;
            }
        }
        let values: Vec<&T> = piece.indices.iter().map(|&i| &seq[i]).collect();
        if !is_strictly_monotone(&values, piece.direction) {
            return false;
        }
    }
    seen.into_iter().all(|s| s)
}

/// Dense ranks of `values`, preserving order and ties.
pub fn ranks<T: Ord>(values: &[T]) -> Vec<u32> {
    let mut sorted: Vec<&T> = values.iter().collect();
    sorted.sort();
    sorted.dedup();
    values
        .iter()
        .map(|v| sorted.binary_search(&v).expect("value present") as u32)
        .collect()
}

pub trait CoverStrategy: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    /// Partitions `0..seq.len()` into strictly monotone pieces.
    fn cover(&self, seq: &[u32]) -> Result<Vec<Piece>, CoverError>;
}

/// Strategies by name.
pub struct CoverRegistry {
    strategies: BTreeMap<&'static str, Arc<dyn CoverStrategy>>,
}

impl CoverRegistry {
    pub fn empty() -> Self {
        CoverRegistry {
            strategies: BTreeMap::new(),
        }
    }

    /// `greedy` and `exact` (with the default size bound).
    pub fn with_builtins() -> Self {
        let mut registry = Self::empty();
        registry.register(GreedyLongestChain);
        registry.register(ExactMinCover::default());
        registry
    }

    pub fn register<S: CoverStrategy + 'static>(&mut self, strategy: S) {
        self.strategies.insert(strategy.name(), Arc::new(strategy));
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn CoverStrategy>, CoverError> {
        self.strategies
            .get(name)
            .cloned()
            .ok_or_else(|| CoverError::UnknownStrategy(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.strategies.keys().copied()
    }
}

impl Default for CoverRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

/// A finite function given by its graph, kept sorted by key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePointSet {
    points: Vec<(BigRational, BigRational)>,
}

impl FinitePointSet {
    pub fn new(mut points: Vec<(BigRational, BigRational)>) -> Result<Self, CoverError> {
        points.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = points.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(CoverError::NotAFunction(format_rational(&w[0].0)));
        }
        Ok(FinitePointSet { points })
    }

    pub fn points(&self) -> &[(BigRational, BigRational)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Dense ranks of the values in key order.
    pub fn value_ranks(&self) -> Vec<u32> {
        let values: Vec<&BigRational> = self.points.iter().map(|p| &p.1).collect();
        ranks(&values)
    }
}

/// A cover piece materialized as points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointPiece {
    pub direction: Monotonicity,
    pub points: Vec<(BigRational, BigRational)>,
}

impl PointPiece {
    pub fn is_strictly_monotone(&self) -> bool {
        let values: Vec<&BigRational> = self.points.iter().map(|p| &p.1).collect();
        self.points.windows(2).all(|w| w[0].0 < w[1].0) && is_strictly_monotone(&values, self.direction)
    }
}

fn materialize(pts: &FinitePointSet, pieces: Vec<Piece>) -> Vec<PointPiece> {
    pieces
        .into_iter()
        .map(|p| PointPiece {
            direction: p.direction,
            points: p.indices.iter().map(|&i| pts.points[i].clone()).collect(),
        })
        .collect()
}

/// Runs a named strategy on a point set.
pub fn cover_with(strategy: &dyn CoverStrategy, pts: &FinitePointSet) -> Result<Vec<PointPiece>, CoverError> {
    let pieces = strategy.cover(&pts.value_ranks())?;
    Ok(materialize(pts, pieces))
}

/// Repeatedly removes a longest strictly monotone subsequence.
pub fn greedy_monotone_cover(pts: &FinitePointSet) -> Vec<PointPiece> {
    materialize(pts, GreedyLongestChain.cover_sequence(&pts.value_ranks()))
}

/// Exact minimum number of strictly monotone pieces.
pub fn min_cover_oracle(pts: &FinitePointSet, max_points: usize) -> Result<usize, CoverError> {
    min_cover_size(&pts.value_ranks(), max_points)
}
