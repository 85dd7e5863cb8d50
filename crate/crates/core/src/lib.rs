//! Exponential sums, Bessel-type transforms, Poisson summation and large
//! sieves over the Gaussian integers.
//!
//! Floating-point code is generic over [`Real`] (`f32`, `f64`); integer code
//! over [`Int`] (`i64`, `i128`, `num_bigint::BigInt`). The aliases below fix
//! the common choices.

pub mod aggregates;
pub mod char_sums;
pub mod error;
pub mod fourier;
pub mod jet;
pub mod ktransform;
pub mod quad;
pub mod scalar;
pub mod sieve;
pub mod special;
pub mod weights;
pub mod zi;

pub use error::{Error, Result};
pub use scalar::{Int, Real};
pub use zi::GaussianInt;

/// Gaussian integer with `i64` parts.
pub type Gi = GaussianInt<i64>;
/// Double-precision complex number.
pub type C64 = num_complex::Complex<f64>;
