//! Odd-degree root isolation over oracle reals.
//!
//! With a witness bounding the leading coefficient away from zero, its sign
//! is decidable and the Cauchy bound gives `M` with `p(-M)` and `p(M)` of
//! opposite signs. Bisection then only needs signs at interior points. A
//! sign at a single point may never resolve (the point could be a root),
//! so each step races `degree + 1` distinct points of the middle third and
//! keeps whichever resolves first; at most `degree` of them are roots.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::{format_rational, inv_pow, precision_for};
use crate::reals::{CauchyReal, RationalInterval, RealError, SeparationWitness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RcfError {
    #[error("polynomial has even degree {0}; only odd degrees are guaranteed a root")]
    EvenDegree(usize),
    #[error("polynomial has no coefficients")]
    Empty,
    #[error("tolerance must be positive, got {0}")]
    NonPositiveTolerance(String),
    #[error(transparent)]
    Real(#[from] RealError),
}

/// `sum_k coeffs[k] * x^k`, with a witness that the leading coefficient is
/// bounded away from zero.
#[derive(Debug, Clone)]
pub struct Polynomial {
    coeffs: Vec<CauchyReal>,
    lead_witness: SeparationWitness,
}

impl Polynomial {
    pub fn new(coeffs: Vec<CauchyReal>, lead_witness: SeparationWitness) -> Result<Self, RcfError> {
        if coeffs.is_empty() {
            return Err(RcfError::Empty);
        }
        Ok(Polynomial { coeffs, lead_witness })
    }

    /// Rational coefficients; the witness is `|leading coefficient|`.
    pub fn from_rationals(coeffs: &[BigRational]) -> Result<Self, RcfError> {
        let lead = coeffs.last().ok_or(RcfError::Empty)?;
        let witness = SeparationWitness::new(lead.abs())?;
        let reals = coeffs
            .iter()
            .map(|c| CauchyReal::from_rational(c.clone(), crate::reals::DEFAULT_BASE))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(reals, witness)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[CauchyReal] {
        &self.coeffs
    }

    pub fn lead_witness(&self) -> &SeparationWitness {
        &self.lead_witness
    }
}

/// Interval Horner evaluation with the coefficients and `x` taken at
/// precision `p`.
fn horner(coeffs: &[CauchyReal], x: &RationalInterval, p: u32) -> RationalInterval {
    let mut acc = coeffs[coeffs.len() - 1].approx(p);
    for c in coeffs[..coeffs.len() - 1].iter().rev() {
        acc = acc.mul(x).add(&c.approx(p));
    }
    acc
}

/// `p(x)` as an oracle real in the base of `x`.
///
/// Each request starts two digits past the target and raises the input
/// precision until the Horner interval is at most half the target width;
/// interval widths shrink to zero with the inputs, so the loop ends.
pub fn eval_poly(p: &Polynomial, x: &CauchyReal) -> CauchyReal {
    let base = x.base();
    let coeffs = p.coeffs.clone();
    let x = x.clone();
    let oracle = move |n: u32| {
        let half = inv_pow(base, n) / BigRational::from_integer(BigInt::from(2));
        let grid = BigInt::from(crate::rational::big_pow(base, n)) * 16;
        let mut q = n + 2;
        loop {
            let value = horner(&coeffs, &x.approx(q), q);
            if value.width() <= half {
                return value.round_out(&grid);
            }
            q += 2 + q / 4;
        }
    };
    CauchyReal::from_fn(base, oracle).expect("base of an existing real")
}

fn eval_at(p: &Polynomial, point: &BigRational) -> CauchyReal {
    let x = CauchyReal::from_rational(point.clone(), crate::reals::DEFAULT_BASE).expect("default base");
    eval_poly(p, &x)
}

/// Sign of a real known to be nonzero at precision `n`, if resolved.
fn sign_at(value: &CauchyReal, n: u32) -> Option<i8> {
    let iv = value.approx(n);
    if iv.is_positive() {
        Some(1)
    } else if iv.is_negative() {
        Some(-1)
    } else {
        None
    }
}

/// Sign of the leading coefficient and a certified lower bound on its
/// magnitude.
fn leading_sign(p: &Polynomial) -> Result<(i8, BigRational), RcfError> {
    let lead = &p.coeffs[p.degree()];
    let gap = p.lead_witness.gap();
    let half = gap / BigRational::from_integer(BigInt::from(2));
    let iv = lead.approx(precision_for(lead.base(), &half));
    if iv.within_open_ball(gap) {
        return Err(RealError::WitnessViolation {
            approx: iv.to_string(),
            gap: format_rational(gap),
        }
        .into());
    }
    // width <= gap/2 and some point has magnitude >= gap, so the whole
    // interval sits on one side of zero at distance >= gap/2
    let lower = iv.lo().abs().min(iv.hi().abs());
    Ok((if iv.is_positive() { 1 } else { -1 }, lower))
}

/// Cauchy bound `1 + max_{k<d} |c_k| / |c_d|` from coarse approximations.
pub fn root_bound(p: &Polynomial) -> Result<BigRational, RcfError> {
    let (_, lead_lower) = leading_sign(p)?;
    let coarse = p.coeffs[..p.degree()]
        .iter()
        .map(|c| c.approx(0).magnitude())
        .max()
        .unwrap_or_else(BigRational::zero);
    Ok(BigRational::one() + coarse / lead_lower)
}

/// Returns `[a, b]` with `b - a <= eps` whose endpoint values have
/// certified opposite signs, so it brackets a root of `p`.
pub fn isolate_odd_root(p: &Polynomial, eps: &BigRational) -> Result<RationalInterval, RcfError> {
    if !eps.is_positive() {
        return Err(RcfError::NonPositiveTolerance(format_rational(eps)));
    }
    let degree = p.degree();
    if degree.is_multiple_of(2) {
        return Err(RcfError::EvenDegree(degree));
    }
    let (lead_sign, _) = leading_sign(p)?;
    let bound = root_bound(p)?;
    let mut lo = -bound.clone();
    let mut hi = bound;
    // the sign at `lo`; the sign at `hi` is always its opposite
    let lo_sign = -lead_sign;

    let candidates = degree + 1;
    let step_den = BigRational::from_integer(BigInt::from(6 * candidates as i64));
    let offsets: Vec<BigRational> = (0..candidates as i64)
        .map(|j| {
            let k = (j + 1) / 2;
            let signed = if j % 2 == 1 { k } else { -k };
            BigRational::from_integer(BigInt::from(signed)) / &step_den
        })
        .collect();

    while &hi - &lo > *eps {
        let width = &hi - &lo;
        let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
        let points: Vec<BigRational> = offsets.iter().map(|t| &mid + &width * t).collect();
        let values: Vec<CauchyReal> = points.iter().map(|c| eval_at(p, c)).collect();
        let (point, sign) = (0u32..)
            .find_map(|level| {
                points
                    .iter()
                    .zip(&values)
                    .find_map(|(c, v)| sign_at(v, level).map(|s| (c.clone(), s)))
            })
            .expect("at most `degree` candidates are roots");
        if sign == lo_sign {
            lo = point;
        } else {
            hi = point;
        }
    }
    Ok(RationalInterval::new(lo, hi)?)
}
