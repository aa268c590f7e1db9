//! Carry-free digit spreading.
//!
//! `spread` moves digit `i` (0-indexed) of a fraction in `[0, 1)` to
//! position `stride * i + offset` and zeroes everything else. Two spreads
//! with distinct offsets have disjoint digit supports, so their sum is a
//! digitwise merge and either input can be read back from it. On top of
//! that sit the pair encoding `z = -s`, `w = s + t` (so `z + w = t`), the
//! join `w`, and an eight-term representation of `y` whose terms all
//! carry the digits of `x`.

use thiserror::Error;

use crate::reals::{DigitStream, RealError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("offset {offset} outside 1..={stride}")]
    BadOffset { stride: u32, offset: u32 },
    #[error("stride must be positive")]
    ZeroStride,
    #[error("value outside [0, 1): spreading needs a non-negative fraction with no integer part")]
    Domain,
    #[error("base mismatch: stream in base {stream}, spread spec in base {spec}")]
    BaseMismatch { stream: u32, spec: u32 },
    #[error("spread specs collide: offsets {0} and {1} share a residue class")]
    OverlappingOffsets(u32, u32),
    #[error("digit supports overlap at position {0}")]
    Carry(usize),
    #[error(transparent)]
    Real(#[from] RealError),
}

/// Where a spread puts its digits: positions `stride * i + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpreadSpec {
    stride: u32,
    offset: u32,
    base: u32,
}

impl SpreadSpec {
    pub fn new(stride: u32, offset: u32, base: u32) -> Result<Self, CodecError> {
        if stride == 0 {
            return Err(CodecError::ZeroStride);
        }
        if !(1..=stride).contains(&offset) {
            return Err(CodecError::BadOffset { stride, offset });
        }
        if base < 2 {
            return Err(RealError::InvalidBase(base).into());
        }
        Ok(SpreadSpec { stride, offset, base })
    }

    /// Stride 4, offset 1: the carrier slot.
    pub fn carrier(base: u32) -> Result<Self, CodecError> {
        Self::new(4, 1, base)
    }

    /// Stride 4, offset 3: the payload slot.
    pub fn payload(base: u32) -> Result<Self, CodecError> {
        Self::new(4, 3, base)
    }

    pub fn stride(&self) -> u32 {
        self.stride
    }

    pub fn offset(&self) -> u32 {
        self.offset
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    /// 1-indexed output position of source digit `i` (0-indexed).
    pub fn position(&self, i: usize) -> usize {
        self.stride as usize * i + self.offset as usize
    }

    /// Number of output digits needed for `prefix_len` source digits.
    pub fn spread_len(&self, prefix_len: usize) -> usize {
        if prefix_len == 0 {
            0
        } else {
            self.position(prefix_len - 1)
        }
    }

    fn collides_with(&self, other: &SpreadSpec) -> bool {
        self.stride == other.stride && self.offset == other.offset
    }
}

fn check_input(x: &DigitStream, spec: &SpreadSpec) -> Result<(), CodecError> {
    if x.base() != spec.base {
        return Err(CodecError::BaseMismatch {
            stream: x.base(),
            spec: spec.base,
        });
    }
    if !x.is_unit_fraction() {
        return Err(CodecError::Domain);
    }
    Ok(())
}

/// Spreads the first `prefix_len` digits of `x` according to `spec`.
pub fn spread(x: &DigitStream, spec: &SpreadSpec, prefix_len: usize) -> Result<DigitStream, CodecError> {
    check_input(x, spec)?;
    let mut out = vec![0u32; spec.spread_len(prefix_len)];
    for (i, d) in x.digits(prefix_len).into_iter().enumerate() {
        out[spec.position(i) - 1] = d;
    }
    Ok(DigitStream::fraction(spec.base, out)?)
}

/// Reads `prefix_len` digits of `s` back from the positions of `spec`.
/// Sign and integer part are ignored, so negated spreads decode too.
pub fn unspread(s: &DigitStream, spec: &SpreadSpec, prefix_len: usize) -> Result<DigitStream, CodecError> {
    let digits = (0..prefix_len).map(|i| s.digit_at(spec.position(i))).collect();
    Ok(DigitStream::fraction(s.base(), digits)?)
}

/// Adds two non-negative finite fractions whose digit supports are
/// disjoint. Any position where both are nonzero is reported as a carry.
pub fn merge_disjoint(a: &DigitStream, b: &DigitStream) -> Result<DigitStream, CodecError> {
    if a.base() != b.base() {
        return Err(CodecError::BaseMismatch {
            stream: b.base(),
            spec: a.base(),
        });
    }
    if !a.is_unit_fraction() || !b.is_unit_fraction() {
        return Err(CodecError::Domain);
    }
    let len = match (a.known_prefix_len(), b.known_prefix_len()) {
        (Some(x), Some(y)) => x.max(y),
        _ => return Err(CodecError::Domain),
    };
    let (da, db) = (a.digits(len), b.digits(len));
    let mut out = Vec::with_capacity(len);
    for (k, (x, y)) in da.into_iter().zip(db).enumerate() {
        if x != 0 && y != 0 {
            return Err(CodecError::Carry(k + 1));
        }
        out.push(x + y);
    }
    Ok(DigitStream::fraction(a.base(), out)?)
}

/// `true` when no position among the first `len` holds a nonzero digit in
/// both streams.
pub fn supports_disjoint(a: &DigitStream, b: &DigitStream, len: usize) -> bool {
    a.digits(len)
        .into_iter()
        .zip(b.digits(len))
        .all(|(x, y)| x == 0 || y == 0)
}

/// The pair `(z, w)` with `z = -spread(x)` and `w = spread(x) + spread(y)`.
#[derive(Debug, Clone)]
pub struct CodecPair {
    pub z: DigitStream,
    pub w: DigitStream,
    pub spec_x: SpreadSpec,
    pub spec_y: SpreadSpec,
}

pub fn encode_pair(x: &DigitStream, y: &DigitStream, prefix_len: usize) -> Result<CodecPair, CodecError> {
    encode_pair_with(
        x,
        y,
        SpreadSpec::carrier(x.base())?,
        SpreadSpec::payload(x.base())?,
        prefix_len,
    )
}

pub fn encode_pair_with(
    x: &DigitStream,
    y: &DigitStream,
    spec_x: SpreadSpec,
    spec_y: SpreadSpec,
    prefix_len: usize,
) -> Result<CodecPair, CodecError> {
    if spec_x.collides_with(&spec_y) {
        return Err(CodecError::OverlappingOffsets(spec_x.offset, spec_y.offset));
    }
    if spec_x.stride != spec_y.stride {
        return Err(CodecError::OverlappingOffsets(spec_x.offset, spec_y.offset));
    }
    let s = spread(x, &spec_x, prefix_len)?;
    let t = spread(y, &spec_y, prefix_len)?;
    let w = merge_disjoint(&s, &t)?;
    Ok(CodecPair {
        z: s.negated(),
        w,
        spec_x,
        spec_y,
    })
}

/// `w = spread(x, offset 1) + spread(y, offset 3)`, from which both inputs
/// are read back by [`unspread`].
pub fn join_encode(x: &DigitStream, y: &DigitStream, prefix_len: usize) -> Result<DigitStream, CodecError> {
    Ok(encode_pair(x, y, prefix_len)?.w)
}

const SUM_STRIDE: u32 = 4;

/// Eight streams `z_1, w_1, ..., z_4, w_4` with `z_k + w_k = a_k`, where
/// `a_k` keeps the digits of `y` at positions `= k (mod 4)`.
#[derive(Debug, Clone)]
pub struct SumRepresentation {
    pub terms: Vec<DigitStream>,
    /// Where each pair carries the digits of `x`, indexed by `k - 1`.
    pub carrier_specs: Vec<SpreadSpec>,
    /// Where `a_k` keeps its digits of `y`, indexed by `k - 1`.
    pub component_specs: Vec<SpreadSpec>,
}

impl SumRepresentation {
    /// Spread spec that decodes `x` from term `index` (0-based over all 8).
    pub fn carrier_spec_for(&self, index: usize) -> SpreadSpec {
        self.carrier_specs[index / 2]
    }
}

/// Carrier slot of pair `k`: two places after the slot of `a_k`, wrapping
/// in `1..=4`.
pub fn carrier_offset(k: u32) -> u32 {
    (k + 1) % SUM_STRIDE + 1
}

pub fn sum_representation(
    x: &DigitStream,
    y: &DigitStream,
    prefix_len: usize,
) -> Result<SumRepresentation, CodecError> {
    let base = x.base();
    check_input(x, &SpreadSpec::carrier(base)?)?;
    check_input(y, &SpreadSpec::carrier(base)?)?;
    let y_digits = y.digits(prefix_len);
    let mut terms = Vec::with_capacity(8);
    let mut carrier_specs = Vec::with_capacity(4);
    let mut component_specs = Vec::with_capacity(4);
    for k in 1..=SUM_STRIDE {
        // digits of y at 1-indexed positions k, k+4, k+8, ...
        let compressed: Vec<u32> = y_digits
            .iter()
            .skip(k as usize - 1)
            .step_by(SUM_STRIDE as usize)
            .copied()
            .collect();
        let component = DigitStream::fraction(base, compressed)?;
        let carrier = SpreadSpec::new(SUM_STRIDE, carrier_offset(k), base)?;
        let slot = SpreadSpec::new(SUM_STRIDE, k, base)?;
        let s = spread(x, &carrier, prefix_len)?;
        let a_k = spread(&component, &slot, component.known_prefix_len().unwrap_or(0))?;
        let w = merge_disjoint(&s, &a_k)?;
        terms.push(s.negated());
        terms.push(w);
        carrier_specs.push(carrier);
        component_specs.push(slot);
    }
    Ok(SumRepresentation {
        terms,
        carrier_specs,
        component_specs,
    })
}
