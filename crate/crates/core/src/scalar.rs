//! Scalar abstraction over the floating-point element type.
//!
//! Everything in this crate is generic over [`Scalar`], which is any float
//! type providing the `num-traits` surface we rely on (`f32` and `f64` in
//! practice). The crate root exposes `f64` aliases for the common case.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::str::FromStr;

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};

pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + NumAssign + Sum<Self> + FromStr + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` constant (tolerance, grid value) into `Self`.
    ///
    /// Panics if the value is not representable, which cannot happen for
    /// finite constants and the float types this crate targets.
    fn cast(v: f64) -> Self {
        Self::from_f64(v).expect("finite f64 constant")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().expect("float-to-f64 conversion")
    }
}

impl<T> Scalar for T where
    T: Float
        + FromPrimitive
        + ToPrimitive
        + NumAssign
        + Sum<Self>
        + FromStr
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Strictly positive and finite; false for NaN and infinities.
pub(crate) fn positive_finite<T: Scalar>(v: T) -> bool {
    v.is_finite() && v > T::zero()
}
