//! Field operations and digit extraction on [`CauchyReal`].
//!
//! Each composite oracle asks its operands for enough precision to land
//! within half the target width, then rounds outward onto a grid of
//! `1/(16 * base^n)` so endpoint sizes stay bounded.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{check_base, from_rational, CauchyReal, DigitStream, RealError, SeparationWitness, Sign};
use crate::rational::{big_pow, format_rational, inv_pow, precision_for, scaled_floor};

fn grid(base: u32, n: u32) -> BigInt {
    BigInt::from(big_pow(base, n)) * 16
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn add(x: &CauchyReal, y: &CauchyReal) -> CauchyReal {
    let base = x.base();
    let (x, y) = (x.clone(), y.clone());
    CauchyReal::build(
        base,
        None,
        Box::new(move |n| {
            let quarter = inv_pow(base, n) * ratio(1, 4);
            x.approx_within(&quarter)
                .add(&y.approx_within(&quarter))
                .round_out(&grid(base, n))
        }),
    )
}

pub fn negate(x: &CauchyReal) -> CauchyReal {
    let base = x.base();
    let exact = x.exact().map(|q| -q.clone());
    let x = x.clone();
    CauchyReal::build(base, exact, Box::new(move |n| x.approx_within(&inv_pow(base, n)).neg()))
}

pub fn sub(x: &CauchyReal, y: &CauchyReal) -> CauchyReal {
    add(x, &negate(y))
}

pub fn mul(x: &CauchyReal, y: &CauchyReal) -> CauchyReal {
    let base = x.base();
    // every later approximation is nested in the precision-0 one, so its
    // magnitude bounds the operand for the whole schedule
    let x_bound = x.approx(0).magnitude() + BigRational::one();
    let y_bound = y.approx(0).magnitude() + BigRational::one();
    let (x, y) = (x.clone(), y.clone());
    CauchyReal::build(
        base,
        None,
        Box::new(move |n| {
            let eps = inv_pow(base, n);
            let one = BigRational::one();
            let wx = (&eps / (&y_bound * ratio(4, 1))).min(one.clone());
            let wy = (&eps / (&x_bound * ratio(4, 1))).min(one);
            x.approx_within(&wx)
                .mul(&y.approx_within(&wy))
                .round_out(&grid(base, n))
        }),
    )
}

/// `1 / x`, given a witness that `|x| >= gap`.
///
/// The witness is checked against an approximation of width `gap / 2`.
/// Once that approximation is not inside `(-gap, gap)`, every later
/// approximation stays at least `gap / 2` away from zero, which fixes the
/// precision schedule.
pub fn reciprocal(x: &CauchyReal, witness: &SeparationWitness) -> Result<CauchyReal, RealError> {
    let base = x.base();
    let gap = witness.gap().clone();
    let half_gap = &gap / ratio(2, 1);
    let p0 = precision_for(x.base(), &half_gap);
    let first = x.approx(p0);
    if first.within_open_ball(&gap) {
        return Err(RealError::WitnessViolation {
            approx: first.to_string(),
            gap: format_rational(&gap),
        });
    }
    let exact = x.exact().map(|q| q.recip());
    let x = x.clone();
    let scale = &gap * &gap / ratio(8, 1);
    Ok(CauchyReal::build(
        base,
        exact,
        Box::new(move |n| {
            let eps = inv_pow(base, n);
            let p = precision_for(x.base(), &(&eps * &scale)).max(p0);
            x.approx(p)
                .recip()
                .expect("interval bounded away from zero")
                .round_out(&grid(base, n))
        }),
    ))
}

/// Orders two reals known to differ by at least `witness.gap()`.
pub fn compare_separated(x: &CauchyReal, y: &CauchyReal, witness: &SeparationWitness) -> Result<Ordering, RealError> {
    let third = witness.gap() / ratio(3, 1);
    let px = precision_for(x.base(), &third);
    let py = precision_for(y.base(), &third);
    for level in 0..=px.max(py) {
        let ix = x.approx(level.min(px));
        let iy = y.approx(level.min(py));
        if ix.hi() < iy.lo() {
            return Ok(Ordering::Less);
        }
        if iy.hi() < ix.lo() {
            return Ok(Ordering::Greater);
        }
    }
    let diff = x.approx(px).add(&y.approx(py).neg());
    Err(RealError::WitnessViolation {
        approx: diff.to_string(),
        gap: format_rational(witness.gap()),
    })
}

/// Commits `len` digits of `x` in `base`.
///
/// Rational-backed reals expand exactly. Otherwise digit `k` (with `k = 0`
/// standing for the sign and integer part) commits once an approximation
/// fits inside one cell `[m, m + 1) * base^-k`; each digit gets `fuel`
/// refinement steps past the first sufficient precision.
pub fn to_digits(x: &CauchyReal, base: u32, len: usize, fuel: u32) -> Result<DigitStream, RealError> {
    check_base(base)?;
    if let Some(q) = x.exact() {
        return from_rational(q, base);
    }
    let mut precision = 0u32;
    let mut cell = BigInt::zero();
    let mut negative = false;
    for k in 0..=len {
        let start = precision.max(precision_for(x.base(), &inv_pow(base, k as u32)));
        let committed = (start..start.saturating_add(fuel)).find_map(|p| {
            let iv = x.approx(p);
            let (lo, hi, neg) = if iv.lo().is_negative() && iv.hi().is_positive() {
                return None;
            } else if iv.hi().is_positive() || iv.lo().is_zero() {
                (iv.lo().clone(), iv.hi().clone(), false)
            } else {
                (-iv.hi().clone(), -iv.lo().clone(), true)
            };
            let a = scaled_floor(&lo, base, k as u32);
            let b = scaled_floor(&hi, base, k as u32);
            (a == b).then_some((p, a, neg))
        });
        match committed {
            Some((p, m, neg)) => {
                precision = p;
                cell = m;
                negative = neg;
            }
            None => return Err(RealError::Undetermined { position: k }),
        }
    }
    // `cell` is floor(|x| * base^len)
    let modulus = BigInt::from(big_pow(base, len as u32));
    let int_part = (&cell / &modulus).magnitude().clone();
    let mut rest = (&cell % &modulus).magnitude().clone();
    let b = BigUint::from(base);
    let mut digits = vec![0u32; len];
    for slot in digits.iter_mut().rev() {
        *slot = (&rest % &b).to_u32().unwrap_or(0);
        rest /= &b;
    }
    DigitStream::new(base, if negative { Sign::Minus } else { Sign::Plus }, int_part, digits)
}

impl Add for &CauchyReal {
    type Output = CauchyReal;
    fn add(self, rhs: &CauchyReal) -> CauchyReal {
        add(self, rhs)
    }
}

impl Sub for &CauchyReal {
    type Output = CauchyReal;
    fn sub(self, rhs: &CauchyReal) -> CauchyReal {
        sub(self, rhs)
    }
}

impl Mul for &CauchyReal {
    type Output = CauchyReal;
    fn mul(self, rhs: &CauchyReal) -> CauchyReal {
        mul(self, rhs)
    }
}

impl Neg for &CauchyReal {
    type Output = CauchyReal;
    fn neg(self) -> CauchyReal {
        negate(self)
    }
}
