//! Scalar abstractions.
//!
//! Moment and statistics code only needs field arithmetic, so it is written
//! against [`Scalar`] and can run on exact rationals as well as floats.
//! Anything that needs square roots or trigonometry asks for [`Real`].

use std::fmt::Debug;

use num_traits::{Float, FloatConst, FromPrimitive, Num, NumCast};

/// Field-like number: enough for sums, means and central moments.
pub trait Scalar: Num + FromPrimitive + Copy + PartialOrd + Debug {}

impl<T> Scalar for T where T: Num + FromPrimitive + Copy + PartialOrd + Debug {}

/// Floating point scalar (`f32` or `f64`).
pub trait Real: Scalar + Float + FloatConst + Send + Sync + 'static {
    /// Converts an `f64` literal, panicking only for non-representable values.
    fn lit(v: f64) -> Self {
        <Self as NumCast>::from(v).expect("literal representable in scalar type")
    }

    fn to_f64_lossy(self) -> f64 {
        <f64 as NumCast>::from(self).unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an integer count into any scalar.
pub(crate) fn from_i64<T: Scalar>(v: i64) -> T {
    T::from_i64(v).expect("integer representable in scalar type")
}

/// Wraps an angle in degrees into `[0, 360)`.
pub fn wrap_degrees<T: Real>(deg: T) -> T {
    let full = T::lit(360.0);
    let mut r = deg % full;
    if r < T::zero() {
        r = r + full;
    }
    // -1e-17 % 360 + 360 rounds to exactly 360
    if r >= full {
        r = r - full;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_handles_negative_and_overflow() {
        assert_eq!(wrap_degrees(-90.0_f64), 270.0);
        assert_eq!(wrap_degrees(720.0_f64), 0.0);
        assert_eq!(wrap_degrees(359.5_f32), 359.5);
        let tiny = wrap_degrees(-1e-17_f64);
        assert!((0.0..360.0).contains(&tiny));
    }
}
