use super::{CoverError, CoverStrategy, Monotonicity, Piece};

/// Longest strictly monotone subsequence of `seq` restricted to the
/// positions in `alive`, as positions into `seq`. `O(n log n)`; among
/// equally long chains the one ending earliest is returned.
pub fn longest_chain<T: Ord>(seq: &[T], alive: &[usize], direction: Monotonicity) -> Vec<usize> {
    // tails[l] = position of the best end of a chain of length l + 1
    let mut tails: Vec<usize> = Vec::new();
    let mut prev: Vec<Option<usize>> = vec![None; alive.len()];
    for (j, &i) in alive.iter().enumerate() {
        let v = &seq[i];
        let slot = tails.partition_point(|&t| direction.admits(&seq[alive[t]], v));
        prev[j] = slot.checked_sub(1).map(|s| tails[s]);
        if slot == tails.len() {
            tails.push(j);
        } else {
            tails[slot] = j;
        }
    }
    let mut chain = Vec::with_capacity(tails.len());
    let mut cursor = tails.last().copied();
    while let Some(j) = cursor {
        chain.push(alive[j]);
        cursor = prev[j];
    }
    chain.reverse();
    chain
}

/// Extracts a longest increasing or decreasing subsequence (increasing on
/// ties) until nothing is left.
#[derive(Debug, Clone, Copy, Default)]
pub struct GreedyLongestChain;

impl GreedyLongestChain {
    pub fn cover_sequence<T: Ord>(&self, seq: &[T]) -> Vec<Piece> {
        let mut alive: Vec<usize> = (0..seq.len()).collect();
        let mut pieces = Vec::new();
        while !alive.is_empty() {
            let up = longest_chain(seq, &alive, Monotonicity::Increasing);
            let down = longest_chain(seq, &alive, Monotonicity::Decreasing);
            let (direction, chain) = if up.len() >= down.len() {
                (Monotonicity::Increasing, up)
            } else {
                (Monotonicity::Decreasing, down)
            };
            let mut taken = chain.iter().peekable();
            alive.retain(|i| {
                if taken.peek() == Some(&i) {
                    taken.next();
                    false
                } else {
                    true
                }
            });
            pieces.push(Piece {
                direction,
                indices: chain,
            });
        }
        pieces
    }
}

impl CoverStrategy for GreedyLongestChain {
    fn name(&self) -> &'static str {
        "greedy"
    }

    fn description(&self) -> &'static str {
        "repeatedly extract a longest strictly monotone subsequence"
    }

    fn cover(&self, seq: &[u32]) -> Result<Vec<Piece>, CoverError> {
        Ok(self.cover_sequence(seq))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::verify_cover;
    use proptest::prelude::*;

    fn brute_longest(seq: &[u32], direction: Monotonicity) -> usize {
        let n = seq.len();
        (0u32..1 << n)
            .filter(|mask| {
                let vals: Vec<u32> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| seq[i]).collect();
                vals.windows(2).all(|w| direction.admits(&w[0], &w[1]))
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn chain_examples() {
        let seq = [2u32, 1, 4, 3, 5];
        let all: Vec<usize> = (0..5).collect();
        assert_eq!(longest_chain(&seq, &all, Monotonicity::Increasing).len(), 3);
        assert_eq!(longest_chain(&seq, &all, Monotonicity::Decreasing).len(), 2);
        assert_eq!(
            longest_chain(&[1u32, 1, 1], &[0, 1, 2], Monotonicity::Increasing).len(),
            1
        );
    }

    #[test]
    fn tie_breaks_toward_increasing() {
        let pieces = GreedyLongestChain.cover_sequence(&[1u32, 0]);
        assert_eq!(pieces[0].direction, Monotonicity::Decreasing);
        let pieces = GreedyLongestChain.cover_sequence(&[0u32, 2, 1]);
        assert_eq!(pieces[0].direction, Monotonicity::Increasing);
        let single = GreedyLongestChain.cover_sequence(&[4u32]);
        assert_eq!(single[0].direction, Monotonicity::Increasing);
    }

    proptest! {
        #[test]
        fn chain_lengths_match_brute_force(seq in prop::collection::vec(0u32..6, 0..12)) {
            let all: Vec<usize> = (0..seq.len()).collect();
            for dir in [Monotonicity::Increasing, Monotonicity::Decreasing] {
                let chain = longest_chain(&seq, &all, dir);
                prop_assert_eq!(chain.len(), brute_longest(&seq, dir));
                let vals: Vec<u32> = chain.iter().map(|&i| seq[i]).collect();
                prop_assert!(vals.windows(2).all(|w| dir.admits(&w[0], &w[1])));
            }
        }

        #[test]
        fn greedy_cover_is_sound(seq in prop::collection::vec(0u32..50, 0..300)) {
            let pieces = GreedyLongestChain.cover_sequence(&seq);
            prop_assert!(verify_cover(&seq, &pieces));
            prop_assert!(pieces.len() <= seq.len());
        }
    }
}
