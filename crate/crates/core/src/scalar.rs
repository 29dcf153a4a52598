//! Coefficient scalars.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Coefficient type of a polynomial: a commutative ring with a total-ish
/// order (used only for sign display) and lossy conversions to and from
/// machine numbers.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + Debug
    + Display
    + Num
    + Neg<Output = Self>
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer is representable")
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn is_negative_value(&self) -> bool {
        *self < Self::zero()
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
impl Scalar for BigRational {}

/// A scalar whose field operations are exact.
///
/// Only exact fields may be used for division, gcd and resultant
/// computations; floating point types deliberately do not implement this.
pub trait ExactField: Scalar + Eq {
    /// The positive scalar `c` such that every `v / c` is an integer and the
    /// resulting integers are jointly coprime. Returns one for an empty or
    /// all-zero input.
    fn content<'a, I>(values: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
        Self: 'a;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl ExactField for BigRational {
    fn content<'a, I>(values: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
    {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for v in values {
            if v.is_zero() {
                continue;
            }
            num = num.gcd(v.numer());
            den = den.lcm(v.denom());
        }
        if num.is_zero() {
            return Self::one();
        }
        BigRational::new(num.abs(), den)
    }
}
