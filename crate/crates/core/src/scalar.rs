//! Floating-point scalar abstraction for walk amplitudes.

use num_traits::{Float, FromPrimitive};

/// Real scalar type carrying walk amplitudes: `f32` or `f64`.
///
/// The walk operator is real orthogonal, so no complex arithmetic is ever
/// needed. All library math is generic over this trait; the crate root
/// provides `f64`-backed aliases, which is the precision every shipped
/// tolerance is calibrated for.
pub trait Scalar:
    Float + FromPrimitive + std::fmt::Debug + std::fmt::Display + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Float + FromPrimitive + std::fmt::Debug + std::fmt::Display + Send + Sync + 'static
{
}

/// Amplitude `sqrt(1/d)` placed on each outgoing arc of a degree-`d` vertex.
///
/// Computed as `sqrt(1/d)` everywhere (never `1/sqrt(d)`) so that closed-form
/// and step-by-step evolutions produce bit-identical amplitudes.
pub fn inv_sqrt_degree<S: Scalar>(degree: usize) -> S {
    let d = S::from_usize(degree).expect("degree fits in scalar");
    (S::one() / d).sqrt()
}
