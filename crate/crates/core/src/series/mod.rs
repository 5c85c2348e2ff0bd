//! Exact rationals, Bernoulli numbers and truncated power series over an
//! exact commutative coefficient ring.

mod bernoulli;
mod truncated;

pub use bernoulli::{bernoulli, bernoulli_table};
pub use truncated::TruncatedSeries;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt::Debug;

/// Arbitrary-precision rational, always normalized (lowest terms, positive
/// denominator).
pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn big(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

/// Arithmetic shared by scalars and by series/classes built on top of them.
///
/// Constructors taking `&self` exist so that values carrying context (a
/// truncation order, a variable list) can produce matching identities.
pub trait RingOps: Clone + PartialEq + Debug {
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    /// Multiplication by a rational scalar (division when `r` is a reciprocal).
    fn scale(&self, r: &Rational) -> Self;
    fn is_zero_value(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
}

/// Exact commutative ring containing the rationals.
pub trait CoefficientRing: RingOps + Send + Sync {
    fn zero_value() -> Self;
    fn one_value() -> Self;
    fn from_rational(r: &Rational) -> Self;
    /// The value as a rational when it is a constant, `None` otherwise.
    fn as_rational(&self) -> Option<Rational>;

    fn from_int(v: i64) -> Self {
        Self::from_rational(&int(v))
    }
}

impl RingOps for Rational {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
}

impl CoefficientRing for Rational {
    fn zero_value() -> Self {
        Rational::zero()
    }
    fn one_value() -> Self {
        Rational::one()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

/// `n!` as a rational.
pub fn factorial(n: usize) -> Rational {
    big((1..=n as u64).fold(BigInt::one(), |acc, k| acc * k))
}

/// `binom(n, k)` for signed-free natural arguments; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// `(-1)^k` applied to `v`.
pub(crate) fn alternate<T: RingOps>(v: &T, k: usize) -> T {
    if k.is_multiple_of(2) {
        v.clone()
    } else {
        v.negate()
    }
}
