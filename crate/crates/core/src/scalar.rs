//! Scalar traits the rest of the crate is generic over.
//!
//! [`Scalar`] covers everything that only needs field arithmetic (products,
//! means, variances), so it is implemented for exact rationals as well as
//! floats. [`Real`] adds square roots and powers and is implemented for
//! `f32` and `f64`.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_rational::Ratio;
use num_traits::{Float, FromPrimitive, Num, ToPrimitive};

pub trait Scalar:
    Num
    + Neg<Output = Self>
    + Copy
    + PartialOrd
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// `false` for NaN and infinities. Exact types are always finite.
    fn is_finite_value(&self) -> bool;

    fn magnitude(self) -> Self {
        if self < Self::zero() {
            -self
        } else {
            self
        }
    }

    /// Lossless for integer counts that fit the type.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count not representable in scalar type")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl Scalar for f64 {
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl Scalar for Ratio<i64> {
    fn is_finite_value(&self) -> bool {
        true
    }
}

impl Scalar for Ratio<i128> {
    fn is_finite_value(&self) -> bool {
        true
    }
}

/// Floating-point scalars.
pub trait Real: Scalar + Float {
    /// Converts a nominal absolute tolerance into this type, never going below
    /// a small multiple of machine epsilon. For `f64` every tolerance used in
    /// this crate is far above the floor, so the nominal value is used as is.
    fn tolerance(nominal: f64) -> Self {
        let floor = Self::epsilon() * Self::from_count(64);
        let nominal = Self::from_f64(nominal).unwrap_or(floor);
        if nominal > floor {
            nominal
        } else {
            floor
        }
    }

    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("literal not representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}
