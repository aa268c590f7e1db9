use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::digits::digits_value;
use super::{check_base, DigitStream, RationalInterval, RealError, Sign};
use crate::rational::{big_pow, precision_for};

type Oracle = Box<dyn Fn(u32) -> RationalInterval + Send + Sync>;

struct Node {
    base: u32,
    exact: Option<BigRational>,
    oracle: Oracle,
    // cache[n] is the answer to approx(n); every entry is nested in the previous one
    cache: Mutex<Vec<RationalInterval>>,
}

/// A real number presented as an oracle: precision `n` yields a rational
/// interval of width at most `base^-n` containing the value, nested in the
/// interval returned for `n - 1`.
///
/// Answers are memoized; clones share the cache.
#[derive(Clone)]
pub struct CauchyReal {
    node: Arc<Node>,
}

impl CauchyReal {
    /// Wraps an arbitrary oracle. `oracle(n)` must contain the value and
    /// have width at most `base^-n`; nestedness is enforced here by
    /// intersecting successive answers.
    pub fn from_fn<F>(base: u32, oracle: F) -> Result<Self, RealError>
    where
        F: Fn(u32) -> RationalInterval + Send + Sync + 'static,
    {
        check_base(base)?;
        Ok(Self::build(base, None, Box::new(oracle)))
    }

    pub(crate) fn build(base: u32, exact: Option<BigRational>, oracle: Oracle) -> Self {
        CauchyReal {
            node: Arc::new(Node {
                base,
                exact,
                oracle,
                cache: Mutex::new(Vec::new()),
            }),
        }
    }

    /// A rational-backed real. Every approximation is the point `[q, q]`.
    pub fn from_rational(q: BigRational, base: u32) -> Result<Self, RealError> {
        check_base(base)?;
        let point = q.clone();
        Ok(Self::build(
            base,
            Some(q),
            Box::new(move |_| RationalInterval::point(point.clone())),
        ))
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)), super::DEFAULT_BASE)
            .expect("default base is valid")
    }

    /// Oracle over a digit stream, in the stream's own base. Finite and
    /// rational streams keep their exact value.
    pub fn from_digits(stream: &DigitStream) -> Self {
        let base = stream.base();
        if let Some(q) = stream.exact_value() {
            return Self::from_rational(q, base).expect("stream base is valid");
        }
        let stream = stream.clone();
        Self::build(
            base,
            None,
            Box::new(move |n| {
                let int = BigRational::from_integer(BigInt::from(stream.int_part().clone()));
                let lo = int + digits_value(base, &stream.digits(n as usize));
                let hi = &lo + BigRational::new(1.into(), BigInt::from(big_pow(base, n)));
                let iv = RationalInterval::new(lo, hi).expect("ordered");
                match stream.sign() {
                    Sign::Plus => iv,
                    Sign::Minus => iv.neg(),
                }
            }),
        )
    }

    pub fn base(&self) -> u32 {
        self.node.base
    }

    /// The exact rational value, when this real was built from one.
    pub fn exact(&self) -> Option<&BigRational> {
        self.node.exact.as_ref()
    }

    /// The interval for precision `n`: contains the value, has width at
    /// most `base^-n`, and lies inside `approx(n - 1)`.
    pub fn approx(&self, n: u32) -> RationalInterval {
        let mut cache = self.node.cache.lock().unwrap_or_else(|e| e.into_inner());
        while cache.len() <= n as usize {
            let k = cache.len() as u32;
            let raw = (self.node.oracle)(k);
            let next = match cache.last() {
                None => raw,
                Some(prev) => raw
                    .intersect(prev)
                    .expect("oracle returned intervals that do not overlap"),
            };
            cache.push(next);
        }
        cache[n as usize].clone()
    }

    /// Approximation of width at most `target`, queried at the smallest
    /// sufficient precision.
    pub fn approx_within(&self, target: &BigRational) -> RationalInterval {
        self.approx(precision_for(self.base(), target))
    }
}

impl fmt::Debug for CauchyReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact() {
            Some(q) => write!(f, "CauchyReal(base {}, exact {q})", self.base()),
            None => write!(f, "CauchyReal(base {}, oracle)", self.base()),
        }
    }
}
