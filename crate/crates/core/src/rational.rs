//! Exact rational helpers shared by every module: parsing and printing in
//! `p/q` form, powers of the digit base, and the extended rationals used by
//! monotone codes.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed rational literal `{0}`")]
pub struct ParseRationalError(pub String);

/// Parses `p`, `p/q` or a finite decimal such as `-1.25`.
pub fn parse_rational(text: &str) -> Result<BigRational, ParseRationalError> {
    let err = || ParseRationalError(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(err());
    }
    if let Some((p, q)) = s.split_once('/') {
        let num = BigInt::from_str(p.trim()).map_err(|_| err())?;
        let den = BigInt::from_str(q.trim()).map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let (negative, int) = match int.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, int.strip_prefix('+').unwrap_or(int)),
        };
        let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
        if !all_digits(int) || !all_digits(frac) || (int.is_empty() && frac.is_empty()) {
            return Err(err());
        }
        let digits = format!("{int}{frac}");
        let num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| err())?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        let value = BigRational::new(num, den);
        return Ok(if negative { -value } else { value });
    }
    BigInt::from_str(s).map(BigRational::from_integer).map_err(|_| err())
}

/// Canonical `p/q` rendering; integers print without a denominator.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn big_pow(base: u32, exp: u32) -> BigUint {
    BigUint::from(base).pow(exp)
}

/// `base^-exp` as an exact rational.
pub fn inv_pow(base: u32, exp: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(big_pow(base, exp)))
}

/// Largest multiple of `1/den` not above `q`.
pub fn floor_to_grid(q: &BigRational, den: &BigInt) -> BigRational {
    let scaled = q * BigRational::from_integer(den.clone());
    BigRational::new(scaled.floor().to_integer(), den.clone())
}

/// Smallest multiple of `1/den` not below `q`.
pub fn ceil_to_grid(q: &BigRational, den: &BigInt) -> BigRational {
    let scaled = q * BigRational::from_integer(den.clone());
    BigRational::new(scaled.ceil().to_integer(), den.clone())
}

/// Smallest `n` with `base^-n <= target`. `target` must be positive.
pub fn precision_for(base: u32, target: &BigRational) -> u32 {
    debug_assert!(target.is_positive());
    // base^n >= 1/target  <=>  base^n * numer >= denom
    let numer = target.numer().magnitude().clone();
    let denom = target.denom().magnitude().clone();
    let mut n = 0u32;
    let mut power = BigUint::one();
    let b = BigUint::from(base);
    while &power * &numer < denom {
        power *= &b;
        n += 1;
    }
    n
}

/// Floor division of a rational by a unit cell of width `base^-k`, i.e.
/// `floor(q * base^k)`.
pub fn scaled_floor(q: &BigRational, base: u32, k: u32) -> BigInt {
    let scaled = q * BigRational::from_integer(BigInt::from(big_pow(base, k)));
    scaled.floor().to_integer()
}

pub fn abs_max(a: &BigRational, b: &BigRational) -> BigRational {
    let (a, b) = (a.abs(), b.abs());
    if a >= b {
        a
    } else {
        b
    }
}

pub fn is_power_free_of(den: &BigInt, base: u32) -> bool {
    // true iff every prime factor of `den` divides `base`
    let mut d = den.magnitude().clone();
    let b = BigUint::from(base);
    loop {
        let g = d.gcd(&b);
        if g.is_one() {
            return d.is_one();
        }
        while (&d % &g).is_zero() {
            d /= &g;
        }
    }
}

/// A rational extended with a bottom and a top element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtRational {
    NegInfinity,
    Finite(BigRational),
    PosInfinity,
}

impl ExtRational {
    pub fn finite(q: BigRational) -> Self {
        ExtRational::Finite(q)
    }

    pub fn zero() -> Self {
        ExtRational::Finite(BigRational::zero())
    }

    pub fn as_finite(&self) -> Option<&BigRational> {
        match self {
            ExtRational::Finite(q) => Some(q),
            _ => None,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            ExtRational::NegInfinity => 0,
            ExtRational::Finite(_) => 1,
            ExtRational::PosInfinity => 2,
        }
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<BigRational> for ExtRational {
    fn from(q: BigRational) -> Self {
        ExtRational::Finite(q)
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::NegInfinity => f.write_str("-inf"),
            ExtRational::Finite(q) => f.write_str(&format_rational(q)),
            ExtRational::PosInfinity => f.write_str("+inf"),
        }
    }
}

impl FromStr for ExtRational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "-inf" => Ok(ExtRational::NegInfinity),
            "+inf" | "inf" => Ok(ExtRational::PosInfinity),
            other => parse_rational(other).map(ExtRational::Finite),
        }
    }
}
