use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar the numerical core is written against: `f32` or `f64`.
///
/// Constants enter through [`Real::lit`], which rounds an `f64` literal to the
/// target width. Tolerances quoted throughout the crate assume `f64`; at `f32`
/// the defaults in [`crate::Precision`] widen to what the type can hold.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in target float")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable in target float")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// sin(pi x) with exact zeros at integers and exact ±1 at half-integers.
pub(crate) fn sin_pi<T: Real>(x: T) -> T {
    let two = T::lit(2.0);
    let mut r = x % two;
    if r < T::zero() {
        r = r + two;
    }
    // r in [0, 2)
    if r == T::zero() || r == T::one() {
        return T::zero();
    }
    if r == T::lit(0.5) {
        return T::one();
    }
    if r == T::lit(1.5) {
        return -T::one();
    }
    (T::PI() * r).sin()
}

/// cos(pi x), exact at integers and half-integers.
pub(crate) fn cos_pi<T: Real>(x: T) -> T {
    sin_pi(x + T::lit(0.5))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sin_pi_exact_points() {
        assert_eq!(sin_pi(-2.0_f64), 0.0);
        assert_eq!(sin_pi(7.0_f64), 0.0);
        assert_eq!(sin_pi(-3.5_f64), 1.0);
        assert_eq!(sin_pi(2.5_f64), 1.0);
        assert_eq!(sin_pi(-0.5_f64), -1.0);
        assert!((sin_pi(0.25_f64) - std::f64::consts::FRAC_1_SQRT_2).abs() < 3e-16);
        assert!((sin_pi(-100.25_f64) + std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(cos_pi(0.5_f64), 0.0);
        assert_eq!(cos_pi(3.0_f64), -1.0);
    }
}
