use core::fmt::{Debug, Display};
use core::ops::{Add, Div, Mul, Neg, Sub};

use super::Rational;

/// An exact commutative field.
///
/// Two instantiations exist: [`Rational`] and
/// [`RationalFunction`](super::RationalFunction). Every higher module is
/// generic over this trait. Division by zero panics, as it does for the
/// underlying big-rational type; callers check for zero first.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;

    fn from_rational(r: &Rational) -> Self;

    /// The value as a rational number, when it is one.
    fn to_rational(&self) -> Option<Rational>;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn inv(&self) -> Self {
        Self::one() / self
    }

    /// Integer power; negative exponents invert.
    fn powi(&self, e: i64) -> Self {
        let mut base = if e < 0 { self.inv() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }
}
