//! The real scalar type the numerical core is generic over.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// A real floating-point type usable as the base field of [`crate::ComplexMatrix`].
///
/// Implemented for `f32` and `f64`. The acceptance tolerances in this crate are
/// stated for `f64`; `f32` is supported for the arithmetic but not held to them.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Sum + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
    /// Pivots smaller than this in magnitude are treated as exact zeros.
    const PIVOT_FLOOR: Self;
    /// Default ceiling on the 1-norm condition estimate accepted by `inverse`.
    const COND_CAP: Self;

    /// Converts an `f64` literal. Infallible for finite inputs.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const PIVOT_FLOOR: Self = 1e-300;
    const COND_CAP: Self = 1e14;
}

impl Real for f32 {
    const PIVOT_FLOOR: Self = 1e-37;
    const COND_CAP: Self = 1e6;
}

pub type C<T> = Complex<T>;

#[inline]
pub(crate) fn czero<T: Real>() -> C<T> {
    Complex::new(T::zero(), T::zero())
}

#[inline]
pub(crate) fn cone<T: Real>() -> C<T> {
    Complex::new(T::one(), T::zero())
}

#[inline]
pub(crate) fn creal<T: Real>(x: T) -> C<T> {
    Complex::new(x, T::zero())
}
