//! Scalar domains the library is generic over.
//!
//! Two families of scalars appear throughout:
//!
//! * floating-point reals (`f32`/`f64`) and their complexifications, used by
//!   the solvers and every square-root-bearing formula;
//! * exact rationals (`BigRational`) and Gaussian rationals
//!   (`Complex<BigRational>`), used to check polynomial identities with zero
//!   residual.
//!
//! [`RingScalar`] is the common ground (enough for determinants and
//! antisymmetry), [`ComplexScalar`] adds the imaginary unit and part access,
//! and [`RealScalar`] is the `f32`/`f64` bound used by numerical code.
//! Concrete aliases live at the crate root.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::Neg;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, Num, NumAssign, ToPrimitive, Zero};

/// Commutative ring with equality; the minimum needed by the tensor algebra.
///
/// `approx_abs` maps a value to an `f64` magnitude for reporting and
/// tolerance checks; it is exact for floats and a rounded view for rationals.
pub trait RingScalar: Clone + PartialEq + Num + Neg<Output = Self> + Debug {
    fn approx_abs(&self) -> f64;

    /// False only for non-finite floating values; exact domains are always finite.
    fn is_finite_scalar(&self) -> bool {
        true
    }
}

/// Floating-point real scalar: `f32` or `f64`.
pub trait RealScalar:
    RingScalar
    + Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum<Self>
    + Display
    + Send
    + Sync
    + 'static
{
}

impl RealScalar for f32 {}
impl RealScalar for f64 {}

/// Scalar with an imaginary unit and real/imaginary part access.
pub trait ComplexScalar: RingScalar {
    type Real: RingScalar;

    fn from_parts(re: Self::Real, im: Self::Real) -> Self;
    fn i() -> Self;
    fn real_part(&self) -> Self::Real;
    fn imag_part(&self) -> Self::Real;

    fn from_real(re: Self::Real) -> Self {
        Self::from_parts(re, Self::Real::zero())
    }

    fn conj(&self) -> Self {
        Self::from_parts(self.real_part(), -self.imag_part())
    }
}

impl RingScalar for f32 {
    fn approx_abs(&self) -> f64 {
        f64::from(self.abs())
    }
    fn is_finite_scalar(&self) -> bool {
        self.is_finite()
    }
}

impl RingScalar for f64 {
    fn approx_abs(&self) -> f64 {
        self.abs()
    }
    fn is_finite_scalar(&self) -> bool {
        self.is_finite()
    }
}

impl RingScalar for BigRational {
    fn approx_abs(&self) -> f64 {
        self.to_f64().map(f64::abs).unwrap_or(f64::INFINITY)
    }
}

impl<R> RingScalar for Complex<R>
where
    R: RingScalar + Num + Clone,
{
    fn approx_abs(&self) -> f64 {
        self.re.approx_abs().hypot(self.im.approx_abs())
    }
    fn is_finite_scalar(&self) -> bool {
        self.re.is_finite_scalar() && self.im.is_finite_scalar()
    }
}

impl<R> ComplexScalar for Complex<R>
where
    R: RingScalar + Num + Clone,
{
    type Real = R;

    fn from_parts(re: R, im: R) -> Self {
        Complex::new(re, im)
    }
    fn i() -> Self {
        Complex::new(R::zero(), R::one())
    }
    fn real_part(&self) -> R {
        self.re.clone()
    }
    fn imag_part(&self) -> R {
        self.im.clone()
    }
}

/// Shorthand for pulling `f64` literals into a generic real type.
#[inline]
pub(crate) fn r<R: RealScalar>(x: f64) -> R {
    R::from_f64(x).expect("f64 literal representable in real scalar")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn imaginary_unit_squares_to_minus_one() {
        let i = Complex::<f64>::i();
        assert_eq!(i * i, -Complex::<f64>::one());
        let iq = Complex::<BigRational>::i();
        assert_eq!(iq.clone() * iq, -Complex::<BigRational>::one());
    }

    #[test]
    fn finiteness_detects_nan() {
        assert!(2.0_f64.is_finite_scalar());
        assert!(!f64::NAN.is_finite_scalar());
        assert!(!Complex::new(1.0, f64::INFINITY).is_finite_scalar());
    }
}
