//! The pair-swapping permutation of binary strings and the combinatorial
//! obstructions that stop it from being covered by few monotone pieces.
//!
//! At depth `L` (even) a string is identified with its index in
//! `0..2^L`, most significant bit first, so lexicographic order on strings
//! is numeric order on indices and a cylinder `σ` is a contiguous range.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::bits::BitString;
use crate::cover::{is_strictly_monotone, GreedyLongestChain, Monotonicity, Piece};

/// Deepest view that is materialized as a table.
pub const MAX_DEPTH: usize = 30;

const EVEN_MASK: u64 = 0xAAAA_AAAA_AAAA_AAAA;
const ODD_MASK: u64 = 0x5555_5555_5555_5555;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BitSwapError {
    #[error("depth {0} is odd")]
    OddDepth(usize),
    #[error("depth {depth} exceeds the supported maximum {max}")]
    DepthTooLarge { depth: usize, max: usize },
    #[error("window prefix `{0}` has odd length")]
    OddPrefix(BitString),
    #[error("prefix of length {prefix} plus {needed} bits exceeds depth {depth}")]
    PrefixTooLong { prefix: usize, needed: usize, depth: usize },
    #[error("pair ({0}, {1}) is not on the graph")]
    NotOnGraph(u64, u64),
    #[error("pairs are not strictly {0}")]
    NotMonotone(Monotonicity),
}

/// Exchanges bits `2n` and `2n+1`; an unpaired final bit is kept.
pub fn bitswap(b: &BitString) -> BitString {
    let mut out = b.bits().to_vec();
    for pair in out.chunks_exact_mut(2) {
        pair.swap(0, 1);
    }
    BitString::new(out).expect("bits stay binary")
}

/// The swap on a `depth`-bit index (even depth).
pub fn swap_index(v: u64, depth: usize) -> u64 {
    let swapped = ((v & EVEN_MASK) >> 1) | ((v & ODD_MASK) << 1);
    if depth >= 64 {
        swapped
    } else {
        swapped & ((1u64 << depth) - 1)
    }
}

/// Independent construction: rewrite each base-4 digit by 0→0, 1→2, 2→1, 3→3.
pub fn base4_remap(v: u64, depth: usize) -> u64 {
    const REMAP: [u64; 4] = [0, 2, 1, 3];
    let mut out = 0;
    let mut rest = v;
    let mut scale = 1u64;
    for _ in 0..depth / 2 {
        out += REMAP[(rest % 4) as usize] * scale;
        rest /= 4;
        scale = scale.wrapping_mul(4);
    }
    out
}

fn check_depth(depth: usize) -> Result<(), BitSwapError> {
    if depth % 2 == 1 {
        return Err(BitSwapError::OddDepth(depth));
    }
    if depth > MAX_DEPTH {
        return Err(BitSwapError::DepthTooLarge { depth, max: MAX_DEPTH });
    }
    Ok(())
}

/// The swap as a permutation of depth-`L` strings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BitSwapView {
    depth: usize,
}

impl BitSwapView {
    pub fn new(depth: usize) -> Result<Self, BitSwapError> {
        check_depth(depth)?;
        Ok(BitSwapView { depth })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn size(&self) -> u64 {
        1u64 << self.depth
    }

    pub fn image(&self, v: u64) -> u64 {
        swap_index(v, self.depth)
    }

    /// Images of `0..2^L` in order; this is the graph read in key order.
    pub fn permutation(&self) -> Vec<u32> {
        (0..self.size()).map(|v| self.image(v) as u32).collect()
    }

    pub fn is_fixed(&self, v: u64) -> bool {
        self.image(v) == v
    }

    /// Strings whose every pair is `00` or `11`.
    pub fn fixed_points(&self) -> Vec<u64> {
        (0..self.size()).filter(|&v| self.is_fixed(v)).collect()
    }
}

/// All depth-`L` strings extending an even-length prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CylinderWindow {
    sigma: BitString,
    depth: usize,
}

impl CylinderWindow {
    pub fn new(sigma: BitString, depth: usize) -> Result<Self, BitSwapError> {
        check_depth(depth)?;
        if sigma.len() % 2 == 1 {
            return Err(BitSwapError::OddPrefix(sigma));
        }
        if sigma.len() > depth {
            return Err(BitSwapError::PrefixTooLong {
                prefix: sigma.len(),
                needed: 0,
                depth,
            });
        }
        Ok(CylinderWindow { sigma, depth })
    }

    pub fn sigma(&self) -> &BitString {
        &self.sigma
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Half-open index range of the window.
    pub fn range(&self) -> (u64, u64) {
        prefix_range(&self.sigma, self.depth)
    }

    pub fn size(&self) -> u64 {
        1u64 << (self.depth - self.sigma.len())
    }

    pub fn contains(&self, v: u64) -> bool {
        let (lo, hi) = self.range();
        lo <= v && v < hi
    }
}

/// Index range of strings extending `prefix`; empty when the prefix is
/// longer than `depth`.
fn prefix_range(prefix: &BitString, depth: usize) -> (u64, u64) {
    if prefix.len() > depth {
        return (0, 0);
    }
    let free = depth - prefix.len();
    let lo = prefix.to_index() << free;
    (lo, lo + (1u64 << free))
}

/// A strictly monotone subset of the graph, pairs sorted by input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonePiece {
    depth: usize,
    direction: Monotonicity,
    pairs: Vec<(u64, u64)>,
}

impl MonotonePiece {
    /// Checks that every pair lies on the graph and that the images move
    /// strictly in `direction`.
    pub fn new(view: &BitSwapView, direction: Monotonicity, mut pairs: Vec<(u64, u64)>) -> Result<Self, BitSwapError> {
        pairs.sort_unstable();
        pairs.dedup();
        if let Some(&(x, y)) = pairs.iter().find(|&&(x, y)| x >= view.size() || view.image(x) != y) {
            return Err(BitSwapError::NotOnGraph(x, y));
        }
        let images: Vec<u64> = pairs.iter().map(|p| p.1).collect();
        if !is_strictly_monotone(&images, direction) {
            return Err(BitSwapError::NotMonotone(direction));
        }
        Ok(MonotonePiece {
            depth: view.depth(),
            direction,
            pairs,
        })
    }

    /// Builds a piece without checking monotonicity, for probing the
    /// obstruction on arbitrary subsets of the graph.
    pub fn unchecked(view: &BitSwapView, direction: Monotonicity, domain: &[u64]) -> Self {
        let mut pairs: Vec<(u64, u64)> = domain.iter().map(|&x| (x, view.image(x))).collect();
        pairs.sort_unstable();
        pairs.dedup();
        MonotonePiece {
            depth: view.depth(),
            direction,
            pairs,
        }
    }

    /// Lifts a cover piece over the view's permutation.
    pub fn from_cover_piece(view: &BitSwapView, piece: &Piece) -> Result<Self, BitSwapError> {
        let pairs = piece
            .indices
            .iter()
            .map(|&i| (i as u64, view.image(i as u64)))
            .collect();
        MonotonePiece::new(view, piece.direction, pairs)
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn direction(&self) -> Monotonicity {
        self.direction
    }

    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_strictly_monotone(&self) -> bool {
        let images: Vec<u64> = self.pairs.iter().map(|p| p.1).collect();
        is_strictly_monotone(&images, self.direction)
    }

    /// Some input of the piece extends `prefix`.
    pub fn meets(&self, prefix: &BitString) -> bool {
        let (lo, hi) = prefix_range(prefix, self.depth);
        let start = self.pairs.partition_point(|p| p.0 < lo);
        self.pairs.get(start).is_some_and(|p| p.0 < hi)
    }
}

/// Image bounds of one of the four child cylinders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CylinderImages {
    pub suffix: [u8; 2],
    pub inputs: (u64, u64),
    pub image_min: u64,
    pub image_max: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadrupleReport {
    pub sigma: BitString,
    pub depth: usize,
    /// Children in input order `00, 01, 10, 11`.
    pub cylinders: [CylinderImages; 4],
    pub passed: bool,
    /// Adjacent pair of children (by expected image order) whose image
    /// ranges overlap or are reversed.
    pub violation: Option<([u8; 2], [u8; 2])>,
}

/// Every representative of `σ00, σ01, σ10, σ11` (in that input order) has
/// its image ordered as `σ00 < σ10 < σ01 < σ11`.
pub fn quadruple_order_check(sigma: &BitString, depth: usize) -> Result<QuadrupleReport, BitSwapError> {
    let view = BitSwapView::new(depth)?;
    if sigma.len() % 2 == 1 {
        return Err(BitSwapError::OddPrefix(sigma.clone()));
    }
    if sigma.len() + 2 > depth {
        return Err(BitSwapError::PrefixTooLong {
            prefix: sigma.len(),
            needed: 2,
            depth,
        });
    }
    let suffixes = [[0, 0], [0, 1], [1, 0], [1, 1]];
    let cylinders = suffixes.map(|suffix| {
        let (lo, hi) = prefix_range(&sigma.concat(&suffix), depth);
        let images = (lo..hi).map(|v| view.image(v));
        CylinderImages {
            suffix,
            inputs: (lo, hi),
            image_min: images.clone().min().expect("cylinder is nonempty"),
            image_max: images.max().expect("cylinder is nonempty"),
        }
    });
    let inputs_ordered = cylinders.windows(2).all(|w| w[0].inputs.1 <= w[1].inputs.0);
    // expected image order: 00, 10, 01, 11
    let order = [0usize, 2, 1, 3];
    let violation = order.windows(2).find_map(|w| {
        let (a, b) = (&cylinders[w[0]], &cylinders[w[1]]);
        (a.image_max >= b.image_min).then_some((a.suffix, b.suffix))
    });
    Ok(QuadrupleReport {
        sigma: sigma.clone(),
        depth,
        passed: inputs_ordered && violation.is_none(),
        cylinders,
        violation,
    })
}

/// An increasing piece misses `σ01` or `σ10`; a decreasing one misses `σ00`
/// or `σ11`.
pub fn obstruction_check(piece: &MonotonePiece, sigma: &BitString) -> bool {
    let (a, b) = match piece.direction {
        Monotonicity::Increasing => ([0, 1], [1, 0]),
        Monotonicity::Decreasing => ([0, 0], [1, 1]),
    };
    !(piece.meets(&sigma.concat(&a)) && piece.meets(&sigma.concat(&b)))
}

/// For each level `2k ≤ L`, the largest fraction of a window with `2k`
/// free bits (prefix length `L − 2k`) occupied by the piece's inputs.
pub fn density_profile(piece: &MonotonePiece, depth: usize) -> BTreeMap<usize, BigRational> {
    let mut profile = BTreeMap::new();
    for k in 0..=depth / 2 {
        let shift = 2 * k;
        let mut best = 0u64;
        let mut run = 0u64;
        let mut current = None;
        for &(x, _) in piece.pairs.iter().filter(|p| p.0 < (1u64 << depth)) {
            let window = x >> shift;
            if current == Some(window) {
                run += 1;
            } else {
                current = Some(window);
                run = 1;
            }
            best = best.max(run);
        }
        let fraction = BigRational::new(BigInt::from(best), BigInt::from(1u64) << shift);
        profile.insert(shift, fraction);
    }
    profile
}

/// `(3/4)^k`, the largest occupancy a monotone piece can reach at level `2k`.
pub fn density_bound(level: usize) -> BigRational {
    let k = level / 2;
    BigRational::new(BigInt::from(3u32).pow(k as u32), BigInt::from(4u32).pow(k as u32))
}

/// Even-length prefixes of length at most `max_len`, shortest first.
pub fn even_prefixes(max_len: usize) -> impl Iterator<Item = BitString> {
    (0..=max_len / 2).flat_map(|half| {
        let len = 2 * half;
        (0..1u64 << len).map(move |v| BitString::from_index(v, len))
    })
}

/// Greedy longest-chain cover of the depth-`L` graph, as checked pieces.
pub fn greedy_pieces(view: &BitSwapView) -> Vec<MonotonePiece> {
    GreedyLongestChain
        .cover_sequence(&view.permutation())
        .iter()
        .map(|p| MonotonePiece::from_cover_piece(view, p).expect("greedy pieces are monotone"))
        .collect()
}
