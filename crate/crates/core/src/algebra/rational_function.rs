use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use super::{Polynomial, Rational, Scalar};
use crate::{Error, Result};

/// Element of Q(t): a reduced quotient of polynomials in the auxiliary
/// variable `t`, with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial<Rational>,
    den: Polynomial<Rational>,
}

impl RationalFunction {
    /// Reduces `num / den` to canonical form. Panics if `den` is zero.
    pub fn new(num: Polynomial<Rational>, den: Polynomial<Rational>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::from_poly(Polynomial::zero());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (
            num.exact_div(&g).expect("gcd divides"),
            den.exact_div(&g).expect("gcd divides"),
        );
        let lc = den.leading().cloned().expect("non-zero");
        if !lc.is_one() {
            let inv = lc.inv();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RationalFunction { num, den }
    }

    pub fn from_poly(p: Polynomial<Rational>) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::from_poly(Polynomial::x())
    }

    pub fn numer(&self) -> &Polynomial<Rational> {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial<Rational> {
        &self.den
    }

    /// Value at `t = 0` after cancellation.
    pub fn limit_at_zero(&self) -> Result<Rational> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::PoleAtZero);
        }
        Ok(self.num.coeff(0) / d0)
    }
}

/// Limit of `f(t)` as `t -> 0`, which for a reduced quotient is `num(0)/den(0)`.
pub fn rf_limit_at_zero(f: &RationalFunction) -> Result<Rational> {
    f.limit_at_zero()
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one_poly() {
            return self.num.fmt_in(f, "t");
        }
        write!(f, "[")?;
        self.num.fmt_in(f, "t")?;
        write!(f, "] / [")?;
        self.den.fmt_in(f, "t")?;
        write!(f, "]")
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Polynomial<Rational> {
    fn is_one_poly(&self) -> bool {
        self.len() == 1 && self.coeff(0).is_one()
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::new(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.num.is_zero() || rhs.num.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<'a> Div<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.num.is_zero(), "division by zero rational function");
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

macro_rules! owned_binops {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &'a RationalFunction) -> RationalFunction {
                (&self).$m(rhs)
            }
        }
    };
}

owned_binops!(Add, add);
owned_binops!(Sub, sub);
owned_binops!(Mul, mul);
owned_binops!(Div, div);

impl Scalar for RationalFunction {
    fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn from_rational(r: &Rational) -> Self {
        Self::from_poly(Polynomial::constant(r.clone()))
    }

    fn to_rational(&self) -> Option<Rational> {
        (self.den.is_one_poly() && self.num.is_constant()).then(|| self.num.coeff(0))
    }
}
