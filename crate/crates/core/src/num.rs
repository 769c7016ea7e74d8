//! Scalar abstractions shared by the numeric modules.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Float, FloatConst, FromPrimitive, Num, ToPrimitive};

/// Floating-point scalar used by fits, policies and loss formulas.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Default + Debug + Display + Sum + Send + Sync + 'static
{
    /// Lossless-enough conversion from an `f64` literal.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable")
    }

    fn from_count(v: u64) -> Self {
        Self::from_u64(v).expect("count representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// A scalar that can represent `1 / integer` (exactly, for the rational types).
pub trait ExactScalar: Num + Clone + PartialOrd + Debug {
    fn from_integer(v: u128) -> Self;

    fn to_f64_lossy(&self) -> f64;
}

impl ExactScalar for f32 {
    fn from_integer(v: u128) -> Self {
        v as f32
    }

    fn to_f64_lossy(&self) -> f64 {
        f64::from(*self)
    }
}

impl ExactScalar for f64 {
    fn from_integer(v: u128) -> Self {
        v as f64
    }

    fn to_f64_lossy(&self) -> f64 {
        *self
    }
}

impl ExactScalar for Ratio<u128> {
    fn from_integer(v: u128) -> Self {
        Ratio::from_integer(v)
    }

    fn to_f64_lossy(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

impl ExactScalar for BigRational {
    fn from_integer(v: u128) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}
