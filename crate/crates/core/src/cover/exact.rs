//! Exact minimum cover by strictly monotone pieces.
//!
//! Once it is fixed which points go to increasing pieces and which to
//! decreasing ones, each class is covered optimally by the online best-fit
//! rule (put a value on the increasing pile with the largest top below
//! it, or open a pile), which uses exactly as many piles as the class's
//! longest non-increasing run needs. So the search only branches on the
//! class of each point. The best-fit piles after a prefix are determined
//! by their tops, which makes `(position, tops)` a complete search state;
//! failed states are memoized under iterative deepening on the total.

use std::collections::HashSet;

use super::{CoverError, CoverStrategy, GreedyLongestChain, Monotonicity, Piece};

/// Largest input the exact search accepts unless configured otherwise.
pub const DEFAULT_MAX_POINTS: usize = 64;

#[derive(Debug, Clone, Copy)]
pub struct ExactMinCover {
    pub max_points: usize,
}

impl Default for ExactMinCover {
    fn default() -> Self {
        ExactMinCover {
            max_points: DEFAULT_MAX_POINTS,
        }
    }
}

#[derive(Clone, Copy)]
struct Pile {
    top: u32,
    id: usize,
}

struct Search<'a> {
    seq: &'a [u32],
    limit: usize,
    failed: HashSet<(usize, Vec<u32>, Vec<u32>)>,
    // (direction, pile id) per position
    assignment: Vec<(Monotonicity, usize)>,
}

fn tops(piles: &[Pile]) -> Vec<u32> {
    piles.iter().map(|p| p.top).collect()
}

impl Search<'_> {
    fn run(&mut self, i: usize, up: &mut Vec<Pile>, down: &mut Vec<Pile>) -> bool {
        if i == self.seq.len() {
            return true;
        }
        let key = (i, tops(up), tops(down));
        if self.failed.contains(&key) {
            return false;
        }
        let v = self.seq[i];
        let used = up.len() + down.len();

        // increasing class: piles sorted by top, best fit is the largest top < v
        let slot = up.partition_point(|p| p.top < v);
        if slot > 0 {
            let old = up[slot - 1];
            up[slot - 1].top = v;
            self.assignment[i] = (Monotonicity::Increasing, old.id);
            if self.run(i + 1, up, down) {
                return true;
            }
            up[slot - 1] = old;
        } else if used < self.limit {
            let id = used_id(up, down);
            up.insert(0, Pile { top: v, id });
            self.assignment[i] = (Monotonicity::Increasing, id);
            if self.run(i + 1, up, down) {
                return true;
            }
            up.remove(0);
        }

        // decreasing class: piles sorted by top, best fit is the smallest top > v
        let slot = down.partition_point(|p| p.top <= v);
        if slot < down.len() {
            let old = down[slot];
            down[slot].top = v;
            self.assignment[i] = (Monotonicity::Decreasing, old.id);
            if self.run(i + 1, up, down) {
                return true;
            }
            down[slot] = old;
        } else if used < self.limit {
            let id = used_id(up, down);
            down.push(Pile { top: v, id });
            self.assignment[i] = (Monotonicity::Decreasing, id);
            if self.run(i + 1, up, down) {
                return true;
            }
            down.pop();
        }

        self.failed.insert(key);
        false
    }
}

fn used_id(up: &[Pile], down: &[Pile]) -> usize {
    up.len() + down.len()
}

fn collect(assignment: &[(Monotonicity, usize)]) -> Vec<Piece> {
    let count = assignment.iter().map(|a| a.1 + 1).max().unwrap_or(0);
    let mut pieces: Vec<Piece> = (0..count)
        .map(|_| Piece {
            direction: Monotonicity::Increasing,
            indices: Vec::new(),
        })
        .collect();
    for (i, &(direction, id)) in assignment.iter().enumerate() {
        pieces[id].direction = direction;
        pieces[id].indices.push(i);
    }
    pieces
}

impl ExactMinCover {
    pub fn new(max_points: usize) -> Self {
        ExactMinCover { max_points }
    }

    pub fn solve(&self, seq: &[u32]) -> Result<Vec<Piece>, CoverError> {
        if seq.len() > self.max_points {
            return Err(CoverError::TooLarge {
                points: seq.len(),
                bound: self.max_points,
            });
        }
        if seq.is_empty() {
            return Ok(Vec::new());
        }
        let upper = GreedyLongestChain.cover_sequence(seq).len();
        for limit in 1..upper {
            let mut search = Search {
                seq,
                limit,
                failed: HashSet::new(),
                assignment: vec![(Monotonicity::Increasing, 0); seq.len()],
            };
            if search.run(0, &mut Vec::new(), &mut Vec::new()) {
                return Ok(collect(&search.assignment));
            }
        }
        Ok(GreedyLongestChain.cover_sequence(seq))
    }
}

impl CoverStrategy for ExactMinCover {
    fn name(&self) -> &'static str {
        "exact"
    }

    fn description(&self) -> &'static str {
        "minimum number of pieces by exhaustive search over increasing/decreasing classes"
    }

    fn cover(&self, seq: &[u32]) -> Result<Vec<Piece>, CoverError> {
        self.solve(seq)
    }
}

/// Minimum number of strictly monotone pieces covering `seq`.
pub fn min_cover_size(seq: &[u32], max_points: usize) -> Result<usize, CoverError> {
    ExactMinCover::new(max_points).solve(seq).map(|p| p.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{is_strictly_monotone, verify_cover};
    use proptest::prelude::*;

    /// Minimum over every set partition of the positions, built as
    /// restricted growth strings.
    fn partition_oracle(seq: &[u32]) -> usize {
        fn block_ok(seq: &[u32], block: &[usize]) -> bool {
            let vals: Vec<u32> = block.iter().map(|&i| seq[i]).collect();
            is_strictly_monotone(&vals, Monotonicity::Increasing)
                || is_strictly_monotone(&vals, Monotonicity::Decreasing)
        }
        fn go(seq: &[u32], i: usize, blocks: &mut Vec<Vec<usize>>, best: &mut usize) {
            if blocks.len() >= *best {
                return;
            }
            if i == seq.len() {
                *best = blocks.len();
                return;
            }
            for b in 0..blocks.len() {
                blocks[b].push(i);
                if block_ok(seq, &blocks[b]) {
                    go(seq, i + 1, blocks, best);
                }
                blocks[b].pop();
            }
            blocks.push(vec![i]);
            go(seq, i + 1, blocks, best);
            blocks.pop();
        }
        let mut best = seq.len() + 1;
        go(seq, 0, &mut Vec::new(), &mut best);
        best.min(seq.len())
    }

    #[test]
    fn spec_examples() {
        assert_eq!(min_cover_size(&[0, 2, 1, 3], 64).unwrap(), 2);
        assert_eq!(min_cover_size(&[1, 0, 3, 2, 5, 4], 64).unwrap(), 2);
        assert_eq!(min_cover_size(&[0, 1, 2, 3, 4], 64).unwrap(), 1);
        assert_eq!(partition_oracle(&[0, 2, 1, 3]), 2);
        assert_eq!(partition_oracle(&[1, 0, 3, 2, 5, 4]), 2);
    }

    #[test]
    fn size_bound_enforced() {
        let seq: Vec<u32> = (0..10).collect();
        assert_eq!(
            min_cover_size(&seq, 9).unwrap_err(),
            CoverError::TooLarge { points: 10, bound: 9 }
        );
    }

    #[test]
    fn all_permutations_of_six() {
        let mut perm: Vec<u32> = (0..6).collect();
        loop {
            let pieces = ExactMinCover::default().solve(&perm).unwrap();
            assert!(verify_cover(&perm, &pieces));
            assert_eq!(pieces.len(), partition_oracle(&perm), "{perm:?}");
            // next lexicographic permutation
            let Some(i) = (0..perm.len() - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
                break;
            };
            let j = (i + 1..perm.len()).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
    }

    proptest! {
        #[test]
        fn matches_partition_oracle(seq in prop::collection::vec(0u32..5, 0..9)) {
            let pieces = ExactMinCover::default().solve(&seq).unwrap();
            prop_assert!(verify_cover(&seq, &pieces));
            prop_assert_eq!(pieces.len(), partition_oracle(&seq));
        }
    }
}
