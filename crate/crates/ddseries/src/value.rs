use num_complex::Complex;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Real;

/// A complex value with an absolute error bound.
///
/// Arithmetic propagates bounds conservatively: errors add under addition,
/// and `|a|·e_b + |b|·e_a + e_a·e_b` under multiplication, plus a rounding
/// term of a few ulps of the result.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValueWithError<T> {
    pub value: Complex<T>,
    pub abs_error: T,
}

impl<T: Real> ValueWithError<T> {
    pub fn new(value: Complex<T>, abs_error: T) -> Self {
        debug_assert!(abs_error >= T::zero() || abs_error.is_nan());
        ValueWithError { value, abs_error }
    }

    pub fn exact(value: Complex<T>) -> Self {
        Self::new(value, T::zero())
    }

    pub fn real(x: T, abs_error: T) -> Self {
        Self::new(Complex::new(x, T::zero()), abs_error)
    }

    pub fn zero() -> Self {
        Self::exact(Complex::new(T::zero(), T::zero()))
    }

    pub fn one() -> Self {
        Self::exact(Complex::new(T::one(), T::zero()))
    }

    pub fn re(&self) -> T {
        self.value.re
    }

    pub fn im(&self) -> T {
        self.value.im
    }

    pub fn norm(&self) -> T {
        self.value.norm()
    }

    /// Multiply by an exactly known complex factor.
    pub fn scale(self, c: Complex<T>) -> Self {
        let v = self.value * c;
        Self::new(v, self.abs_error * c.norm() + rounding(v))
    }

    pub fn with_extra_error(self, e: T) -> Self {
        Self::new(self.value, self.abs_error + e)
    }

    /// Whether `other` lies within the combined error bars.
    pub fn agrees_with(&self, other: &Self) -> bool {
        (self.value - other.value).norm() <= self.abs_error + other.abs_error
    }

    /// Quotient; the bound is infinite when the divisor's disc reaches zero.
    pub fn div(self, rhs: Self) -> Self {
        let v = self.value / rhs.value;
        let b = rhs.value.norm();
        let e = if rhs.abs_error >= b {
            T::infinity()
        } else {
            (self.abs_error + v.norm() * rhs.abs_error) / (b - rhs.abs_error)
        };
        Self::new(v, e + rounding(v))
    }
}

#[inline]
fn rounding<T: Real>(v: Complex<T>) -> T {
    T::lit(4.0) * T::epsilon() * v.norm()
}

impl<T: Real> Add for ValueWithError<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let v = self.value + rhs.value;
        Self::new(v, self.abs_error + rhs.abs_error + rounding(v))
    }
}

impl<T: Real> Sub for ValueWithError<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let v = self.value - rhs.value;
        Self::new(v, self.abs_error + rhs.abs_error + rounding(v))
    }
}

impl<T: Real> Mul for ValueWithError<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let v = self.value * rhs.value;
        let e = self.value.norm() * rhs.abs_error
            + rhs.value.norm() * self.abs_error
            + self.abs_error * rhs.abs_error;
        Self::new(v, e + rounding(v))
    }
}

impl<T: Real> Neg for ValueWithError<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.value, self.abs_error)
    }
}
