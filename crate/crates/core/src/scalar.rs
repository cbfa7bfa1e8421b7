use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point type the spectral and irregularity code is generic over.
///
/// Implemented for `f32` and `f64`. Tolerances that make sense in `f64`
/// (the defaults are tuned for it) may be out of reach for `f32`.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    fn of_usize(x: usize) -> Self {
        Self::from_usize(x).expect("usize representable")
    }
}

impl<T> Scalar for T where
    T: Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
}

/// `a / b` computed from integers, so exact quotients stay exact.
pub(crate) fn ratio<T: Scalar>(a: usize, b: usize) -> T {
    T::of_usize(a) / T::of_usize(b)
}

pub(crate) fn factorial(k: usize) -> usize {
    (1..=k).product()
}
