use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficient ring shared by the polynomial types.
///
/// Implemented for `f64` (numeric mode), `BigRational` (exact mode) and
/// `BigInt` (exact integer counting). Arithmetic goes through the standard
/// operator traits; the methods here cover conversions and sign queries the
/// generic code needs.
pub trait Coefficient:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_u64(n: u64) -> Self;
    fn to_f64(&self) -> f64;
    fn is_negative(&self) -> bool;
}

/// Coefficients forming a field, required wherever exact division shows up
/// (monic normalization, Hankel pivoting). Deliberately not implemented for
/// `BigInt`: integer division would silently truncate.
pub trait FieldCoefficient: Coefficient + Div<Output = Self> {}

impl Coefficient for f64 {
    fn from_u64(n: u64) -> Self {
        n as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_negative(&self) -> bool {
        *self < 0.0
    }
}

impl FieldCoefficient for f64 {}

impl Coefficient for BigRational {
    fn from_u64(n: u64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl FieldCoefficient for BigRational {}

impl Coefficient for BigInt {
    fn from_u64(n: u64) -> Self {
        BigInt::from(n)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}
