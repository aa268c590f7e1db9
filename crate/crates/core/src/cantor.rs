//! The doubling map from bit strings onto the middle-thirds Cantor set:
//! bit `i` becomes ternary digit `i + 1` with value `2 * bit`. Digit
//! positions are copied one-to-one, so each side computes the other, and
//! the map is strictly order-preserving.

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use crate::bits::BitString;
use crate::reals::{DigitStream, RealError, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CantorError {
    #[error("ternary digit {digit} at position {position} is not 0 or 2")]
    NotInCantorSet { position: usize, digit: u32 },
    #[error("expected a base-3 stream, got base {0}")]
    WrongBase(u32),
    #[error("Cantor points lie in [0, 1]; stream has sign or integer part")]
    OutOfRange,
    #[error("stream does not terminate; give a prefix length")]
    Unbounded,
    #[error(transparent)]
    Real(#[from] RealError),
}

/// A base-3 stream whose digits are all 0 or 2.
#[derive(Debug, Clone, PartialEq)]
pub struct CantorPoint {
    stream: DigitStream,
}

impl CantorPoint {
    pub fn stream(&self) -> &DigitStream {
        &self.stream
    }

    pub fn into_stream(self) -> DigitStream {
        self.stream
    }
}

impl TryFrom<DigitStream> for CantorPoint {
    type Error = CantorError;

    fn try_from(stream: DigitStream) -> Result<Self, CantorError> {
        from_cantor(&stream, None)?;
        Ok(CantorPoint { stream })
    }
}

pub fn to_cantor(bits: &BitString) -> CantorPoint {
    let digits = bits.bits().iter().map(|&b| 2 * u32::from(b)).collect();
    CantorPoint {
        stream: DigitStream::fraction(3, digits).expect("digits 0 and 2 are ternary"),
    }
}

/// Cantor point of an infinite bit sequence given by `bit(i)`, `i >= 0`.
pub fn to_cantor_lazy<F>(bit: F) -> CantorPoint
where
    F: Fn(usize) -> u8 + Send + Sync + 'static,
{
    let stream = DigitStream::from_fn(3, Sign::Plus, BigUint::zero(), move |k| 2 * u32::from(bit(k - 1) & 1))
        .expect("base 3 is valid");
    CantorPoint { stream }
}

/// Reads the bit string back. `len` defaults to the stored prefix of a
/// finite stream.
pub fn from_cantor(stream: &DigitStream, len: Option<usize>) -> Result<BitString, CantorError> {
    if stream.base() != 3 {
        return Err(CantorError::WrongBase(stream.base()));
    }
    if !stream.is_unit_fraction() {
        return Err(CantorError::OutOfRange);
    }
    let len = len.or(stream.known_prefix_len()).ok_or(CantorError::Unbounded)?;
    let bits = stream
        .digits(len)
        .into_iter()
        .enumerate()
        .map(|(i, d)| match d {
            0 => Ok(0),
            2 => Ok(1),
            digit => Err(CantorError::NotInCantorSet { position: i + 1, digit }),
        })
        .collect::<Result<Vec<u8>, _>>()?;
    Ok(BitString::new(bits).expect("bits are 0 or 1"))
}
