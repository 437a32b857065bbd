//! Generic 3-vectors and the complex field vector F = E + iB.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;

use crate::error::DomainError;
use crate::scalar::{ComplexScalar, RealScalar, RingScalar};

/// A 3-vector over any ring scalar.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T> Vec3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Vec3 { x, y, z }
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> Vec3<U> {
        Vec3::new(f(&self.x), f(&self.y), f(&self.z))
    }

    pub fn components(&self) -> [&T; 3] {
        [&self.x, &self.y, &self.z]
    }
}

impl<T: RingScalar> Vec3<T> {
    pub fn zero() -> Self {
        Vec3::new(T::zero(), T::zero(), T::zero())
    }

    /// Unconjugated dot product a·b.
    pub fn dot(&self, other: &Self) -> T {
        self.x.clone() * other.x.clone()
            + self.y.clone() * other.y.clone()
            + self.z.clone() * other.z.clone()
    }

    pub fn cross(&self, other: &Self) -> Self {
        Vec3::new(
            self.y.clone() * other.z.clone() - self.z.clone() * other.y.clone(),
            self.z.clone() * other.x.clone() - self.x.clone() * other.z.clone(),
            self.x.clone() * other.y.clone() - self.y.clone() * other.x.clone(),
        )
    }

    pub fn norm_sq(&self) -> T {
        self.dot(self)
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|c| c.clone() * s.clone())
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite_scalar() && self.y.is_finite_scalar() && self.z.is_finite_scalar()
    }

    pub fn check_finite(&self) -> Result<(), DomainError> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(DomainError::NonFinite)
        }
    }

    /// Largest component magnitude, as `f64`.
    pub fn max_abs(&self) -> f64 {
        self.x
            .approx_abs()
            .max(self.y.approx_abs())
            .max(self.z.approx_abs())
    }
}

impl<R: RealScalar> Vec3<R> {
    pub fn norm(&self) -> R {
        self.norm_sq().sqrt()
    }

    pub fn from_f64(x: f64, y: f64, z: f64) -> Self {
        Vec3::new(
            R::from_f64(x).unwrap(),
            R::from_f64(y).unwrap(),
            R::from_f64(z).unwrap(),
        )
    }
}

impl<T: RingScalar> Add for Vec3<T> {
    type Output = Vec3<T>;
    fn add(self, rhs: Self) -> Self {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl<T: RingScalar> Sub for Vec3<T> {
    type Output = Vec3<T>;
    fn sub(self, rhs: Self) -> Self {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl<T: RingScalar> Neg for Vec3<T> {
    type Output = Vec3<T>;
    fn neg(self) -> Self {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl<T: RingScalar> Mul<T> for Vec3<T> {
    type Output = Vec3<T>;
    fn mul(self, s: T) -> Self {
        self.scale(&s)
    }
}

/// The complex field vector F = E + iB.
pub fn rs_vector<R: RingScalar>(e: &Vec3<R>, b: &Vec3<R>) -> Vec3<Complex<R>> {
    Vec3::new(
        Complex::from_parts(e.x.clone(), b.x.clone()),
        Complex::from_parts(e.y.clone(), b.y.clone()),
        Complex::from_parts(e.z.clone(), b.z.clone()),
    )
}

/// Unconjugated square F·F; carries both field invariants:
/// Re = E²−B², Im = 2 E·B.
pub fn rs_square<T: ComplexScalar>(f: &Vec3<T>) -> T {
    f.dot(f)
}

/// Split a complex vector back into its real and imaginary parts (E, B).
pub fn split_rs<T: ComplexScalar>(f: &Vec3<T>) -> (Vec3<T::Real>, Vec3<T::Real>) {
    (f.map(|c| c.real_part()), f.map(|c| c.imag_part()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn rs_vector_matches_definition() {
        let e = Vec3::new(1.0, 0.0, 0.0);
        let b = Vec3::new(0.0, 1.0, 0.0);
        let f = rs_vector(&e, &b);
        assert_eq!(f.x, Complex64::new(1.0, 0.0));
        assert_eq!(f.y, Complex64::new(0.0, 1.0));
        assert_eq!(f.z, Complex64::new(0.0, 0.0));

        let e = Vec3::new(2.0, 0.0, 0.0);
        let b = Vec3::new(2.0, 0.0, 0.0);
        let f = rs_vector(&e, &b);
        assert_eq!(f.x, Complex64::new(2.0, 2.0));

        let zero = rs_vector(&Vec3::<f64>::zero(), &Vec3::zero());
        assert_eq!(zero, Vec3::zero());
    }

    #[test]
    fn rs_square_carries_both_invariants() {
        let e = Vec3::new(1.0_f64, 2.0, -0.5);
        let b = Vec3::new(0.25_f64, -1.0, 3.0);
        let f2 = rs_square(&rs_vector(&e, &b));
        let i1 = e.norm_sq() - b.norm_sq();
        let i2 = e.dot(&b);
        assert!((f2.re - i1).abs() < 1e-15);
        assert!((f2.im - 2.0 * i2).abs() < 1e-15);
    }

    #[test]
    fn cross_is_antisymmetric() {
        let u = Vec3::new(1.0, 2.0, 3.0);
        let v = Vec3::new(-0.5, 4.0, 0.25);
        let uv = u.cross(&v);
        let vu = v.cross(&u);
        assert_eq!(uv, -vu);
    }

    #[test]
    fn finiteness_check_rejects_nan() {
        let v = Vec3::new(1.0, f64::NAN, 0.0);
        assert!(v.check_finite().is_err());
    }
}
