use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Commutative ring with identity, as used for matrix entries and energies.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Short tag used in matrix JSON (`int`, `rat`, `laurent`, `bipoly`).
    const TAG: &'static str;

    fn from_i64(v: i64) -> Self;
}

/// Rings where `a / b` can be computed whenever the quotient lies in the ring.
pub trait ExactDiv: Ring {
    /// Returns `None` if `divisor` is zero or does not divide `self`.
    fn div_exact(&self, divisor: &Self) -> Option<Self>;
}

/// Ordered rings whose elements convert to `f64`.
pub trait RealScalar: Ring {
    fn to_f64(&self) -> f64;
    fn signum_i8(&self) -> i8;
}

impl Ring for BigInt {
    const TAG: &'static str = "int";

    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

impl ExactDiv for BigInt {
    fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }
}

impl RealScalar for BigInt {
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn signum_i8(&self) -> i8 {
        match self.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }
}

impl Ring for BigRational {
    const TAG: &'static str = "rat";

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl ExactDiv for BigRational {
    fn div_exact(&self, divisor: &Self) -> Option<Self> {
        (!divisor.is_zero()).then(|| self / divisor)
    }
}

impl RealScalar for BigRational {
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn signum_i8(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_negative() {
            -1
        } else {
            1
        }
    }
}

/// Rational embedding of an integer.
pub fn rat(v: &BigInt) -> BigRational {
    BigRational::from_integer(v.clone())
}
