//! Numeric traits shared by every module.

use std::fmt::{Debug, Display, LowerExp};
use std::hash::Hash;
use std::iter::Sum;

use num_integer::{Integer, Roots};
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, Signed, ToPrimitive};

/// Floating-point scalar used for analytic quantities.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Conversion back to `f64` for reporting.
    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Rational integer type backing a Gaussian integer.
pub trait Int:
    Integer + Roots + Signed + Clone + Hash + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    #[inline]
    fn lit(x: i64) -> Self {
        Self::from_i64(x).expect("i64 literal representable")
    }
}

impl<T> Int for T where
    T: Integer
        + Roots
        + Signed
        + Clone
        + Hash
        + Debug
        + Display
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}
