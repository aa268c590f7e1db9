use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{check_base, RealError};
use crate::rational::{big_pow, is_power_free_of};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

type DigitFn = Arc<dyn Fn(usize) -> u32 + Send + Sync>;

#[derive(Clone)]
enum DigitSource {
    /// Explicit prefix; every later digit is zero.
    Finite(Vec<u32>),
    /// Fractional part `num / den` with `num < den`, expanded by long division.
    Ratio { num: BigUint, den: BigUint },
    /// Arbitrary total digit map (1-indexed).
    Lazy(DigitFn),
}

/// A signed base-`B` positional expansion
/// `sign * (int_part + sum_{k>=1} digit_k * B^-k)`.
///
/// Digits are addressed from 1, so `digit_at(1)` is the first digit after
/// the radix point.
#[derive(Clone)]
pub struct DigitStream {
    base: u32,
    sign: Sign,
    int_part: BigUint,
    source: DigitSource,
}

impl DigitStream {
    /// A finitely specified stream; digits past `digits.len()` are zero.
    pub fn new(base: u32, sign: Sign, int_part: BigUint, digits: Vec<u32>) -> Result<Self, RealError> {
        check_base(base)?;
        if let Some(&digit) = digits.iter().find(|&&d| d >= base) {
            return Err(RealError::DigitOutOfRange { digit, base });
        }
        let mut stream = DigitStream {
            base,
            sign,
            int_part,
            source: DigitSource::Finite(digits),
        };
        stream.normalize_zero();
        Ok(stream)
    }

    /// Fraction in `[0, 1)` given by its digits.
    pub fn fraction(base: u32, digits: Vec<u32>) -> Result<Self, RealError> {
        Self::new(base, Sign::Plus, BigUint::zero(), digits)
    }

    pub fn zero(base: u32) -> Result<Self, RealError> {
        Self::fraction(base, Vec::new())
    }

    /// A stream whose digits are produced on demand. `digit_fn(k)` must be
    /// deterministic and return a value below `base` for every `k >= 1`.
    pub fn from_fn<F>(base: u32, sign: Sign, int_part: BigUint, digit_fn: F) -> Result<Self, RealError>
    where
        F: Fn(usize) -> u32 + Send + Sync + 'static,
    {
        check_base(base)?;
        Ok(DigitStream {
            base,
            sign,
            int_part,
            source: DigitSource::Lazy(Arc::new(digit_fn)),
        })
    }

    fn normalize_zero(&mut self) {
        if let DigitSource::Finite(d) = &self.source {
            if self.int_part.is_zero() && d.iter().all(|&x| x == 0) {
                self.sign = Sign::Plus;
            }
        }
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn int_part(&self) -> &BigUint {
        &self.int_part
    }

    /// Number of explicitly stored digits, or `None` when the expansion
    /// does not terminate in zeros.
    pub fn known_prefix_len(&self) -> Option<usize> {
        match &self.source {
            DigitSource::Finite(d) => Some(d.len()),
            _ => None,
        }
    }

    /// Digit `k` after the radix point, `k >= 1`.
    pub fn digit_at(&self, k: usize) -> u32 {
        assert!(k >= 1, "digit positions start at 1");
        match &self.source {
            DigitSource::Finite(d) => d.get(k - 1).copied().unwrap_or(0),
            DigitSource::Ratio { num, den } => {
                let scaled = num * big_pow(self.base, k as u32) / den;
                (scaled % self.base).to_u32().unwrap_or(0)
            }
            DigitSource::Lazy(f) => {
                let d = f(k);
                assert!(d < self.base, "digit function returned {d} in base {}", self.base);
                d
            }
        }
    }

    /// The first `len` digits after the radix point.
    pub fn digits(&self, len: usize) -> Vec<u32> {
        match &self.source {
            DigitSource::Finite(d) => {
                let mut out: Vec<u32> = d.iter().take(len).copied().collect();
                out.resize(len, 0);
                out
            }
            DigitSource::Ratio { num, den } => {
                let base = BigUint::from(self.base);
                let mut rem = num.clone();
                let mut out = Vec::with_capacity(len);
                for _ in 0..len {
                    rem *= &base;
                    let (q, r) = rem.div_rem(den);
                    out.push(q.to_u32().unwrap_or(0));
                    rem = r;
                }
                out
            }
            DigitSource::Lazy(_) => (1..=len).map(|k| self.digit_at(k)).collect(),
        }
    }

    /// Exact value when the expansion is finite or came from a rational.
    pub fn exact_value(&self) -> Option<BigRational> {
        let frac = match &self.source {
            DigitSource::Finite(d) => digits_value(self.base, d),
            DigitSource::Ratio { num, den } => BigRational::new(
                BigInt::from_biguint(BigSign::Plus, num.clone()),
                BigInt::from_biguint(BigSign::Plus, den.clone()),
            ),
            DigitSource::Lazy(_) => return None,
        };
        Some(self.signed(frac))
    }

    /// Value of the expansion truncated after `len` digits.
    pub fn prefix_value(&self, len: usize) -> BigRational {
        self.signed(digits_value(self.base, &self.digits(len)))
    }

    fn signed(&self, frac: BigRational) -> BigRational {
        let magnitude = BigRational::from_integer(BigInt::from(self.int_part.clone())) + frac;
        match self.sign {
            Sign::Plus => magnitude,
            Sign::Minus => -magnitude,
        }
    }

    /// Same digits with the opposite sign.
    pub fn negated(&self) -> DigitStream {
        let mut out = self.clone();
        out.sign = self.sign.flip();
        out.normalize_zero();
        out
    }

    /// Truncates to a finite stream holding the first `len` digits.
    pub fn truncated(&self, len: usize) -> DigitStream {
        let mut out = DigitStream {
            base: self.base,
            sign: self.sign,
            int_part: self.int_part.clone(),
            source: DigitSource::Finite(self.digits(len)),
        };
        out.normalize_zero();
        out
    }

    /// `true` for values in `[0, 1)`: no integer part, non-negative.
    pub fn is_unit_fraction(&self) -> bool {
        self.int_part.is_zero() && (self.sign == Sign::Plus || self.exact_value().is_some_and(|v| v.is_zero()))
    }
}

/// `sum_k digits[k-1] * base^-k` computed exactly.
pub(crate) fn digits_value(base: u32, digits: &[u32]) -> BigRational {
    let b = BigUint::from(base);
    let mut num = BigUint::zero();
    for &d in digits {
        num = num * &b + BigUint::from(d);
    }
    BigRational::new(
        BigInt::from_biguint(BigSign::Plus, num),
        BigInt::from_biguint(BigSign::Plus, big_pow(base, digits.len() as u32)),
    )
}

impl fmt::Debug for DigitStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown = self.known_prefix_len().unwrap_or(12).min(24);
        write!(
            f,
            "DigitStream(base {}, {}{}.",
            self.base,
            self.sign.symbol(),
            self.int_part
        )?;
        for d in self.digits(shown) {
            if self.base <= 10 {
                write!(f, "{d}")?;
            } else {
                write!(f, "[{d}]")?;
            }
        }
        if self.known_prefix_len().is_none() {
            f.write_str("...")?;
        }
        f.write_str(")")
    }
}

impl PartialEq for DigitStream {
    /// Streams compare equal when they have the same base, sign, integer
    /// part and exact value. Lazily generated streams are never equal.
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base
            && match (self.exact_value(), other.exact_value()) {
                (Some(a), Some(b)) => a == b,
                _ => false,
            }
    }
}

/// Expands `p` in `base`. Rationals with a terminating expansion get the
/// terminating one; the others expand by long division on demand.
pub fn from_rational(p: &BigRational, base: u32) -> Result<DigitStream, RealError> {
    check_base(base)?;
    let sign = if p.is_negative() { Sign::Minus } else { Sign::Plus };
    let magnitude = p.abs();
    let int_part = magnitude.floor().to_integer();
    let frac = magnitude - BigRational::from_integer(int_part.clone());
    let int_part = int_part.magnitude().clone();
    let num = frac.numer().magnitude().clone();
    let den = frac.denom().magnitude().clone();
    if is_power_free_of(frac.denom(), base) {
        let b = BigUint::from(base);
        let mut rem = num;
        let mut digits = Vec::new();
        while !rem.is_zero() {
            rem *= &b;
            let (q, r) = rem.div_rem(&den);
            digits.push(q.to_u32().unwrap_or(0));
            rem = r;
        }
        return DigitStream::new(base, sign, int_part, digits);
    }
    debug_assert!(!den.is_one());
    Ok(DigitStream {
        base,
        sign,
        int_part,
        source: DigitSource::Ratio { num, den },
    })
}
