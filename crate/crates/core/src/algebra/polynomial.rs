use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::Scalar;

/// Dense univariate polynomial, `coeffs[i]` being the coefficient of `x^i`.
///
/// The coefficient vector is either empty (the zero polynomial) or ends in a
/// non-zero entry.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Polynomial<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![S::zero(), S::one()])
    }

    /// `c0 + c1 x`.
    pub fn linear(c0: S, c1: S) -> Self {
        Self::new(vec![c0, c1])
    }

    pub fn monomial(c: S, n: usize) -> Self {
        let mut coeffs = vec![S::zero(); n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[S]) -> Self {
        roots.iter().fold(Self::one(), |acc, r| {
            acc * Self::linear(-r.clone(), S::one())
        })
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Number of stored coefficients; `deg + 1`, or 0 for the zero polynomial.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.inv()),
            None => Self::zero(),
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc * self)
    }

    /// `self(g(x))` by Horner's scheme.
    pub fn compose(&self, g: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc * g + Self::constant(c.clone()))
    }

    /// Euclidean division over the field: `self = q * rhs + r`, `deg r < deg rhs`.
    ///
    /// Panics if `rhs` is zero.
    pub fn div_rem(&self, rhs: &Self) -> (Self, Self) {
        let d = rhs.degree().expect("division by the zero polynomial");
        let lc_inv = rhs.coeffs[d].inv();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![S::zero(); rem.len() - d];
        for i in (0..quot.len()).rev() {
            let c = rem[i + d].clone() * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - &(c.clone() * b);
            }
            quot[i] = c;
        }
        rem.truncate(d);
        (Self::new(quot), Self::new(rem))
    }

    /// Quotient when `rhs` divides `self` exactly.
    pub fn exact_div(&self, rhs: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(rhs);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub(crate) fn fmt_in(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*{var}")?,
                _ => write!(f, "({c})*{var}^{i}")?,
            }
        }
        Ok(())
    }
}

/// `p(s x + t)`.
pub fn affine_substitute<S: Scalar>(p: &Polynomial<S>, s: &S, t: &S) -> Polynomial<S> {
    p.compose(&Polynomial::linear(t.clone(), s.clone()))
}

impl<S: Scalar> fmt::Display for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_in(f, "x")
    }
}

impl<S: Scalar> fmt::Debug for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl<S: Scalar> Default for Polynomial<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> Add<&Polynomial<S>> for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn add(self, rhs: &Polynomial<S>) -> Polynomial<S> {
        let (long, short) = if self.len() >= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a = a.clone() + b;
        }
        Polynomial::new(coeffs)
    }
}

impl<S: Scalar> Sub<&Polynomial<S>> for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn sub(self, rhs: &Polynomial<S>) -> Polynomial<S> {
        let n = self.len().max(rhs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Polynomial::new(coeffs)
    }
}

impl<S: Scalar> Mul<&Polynomial<S>> for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn mul(self, rhs: &Polynomial<S>) -> Polynomial<S> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![S::zero(); self.len() + rhs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + &(a.clone() * b);
            }
        }
        Polynomial::new(coeffs)
    }
}

impl<S: Scalar> Neg for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn neg(self) -> Polynomial<S> {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<S: Scalar> Neg for Polynomial<S> {
    type Output = Polynomial<S>;
    fn neg(self) -> Polynomial<S> {
        -&self
    }
}

macro_rules! owned_binops {
    ($tr:ident, $m:ident) => {
        impl<S: Scalar> $tr for Polynomial<S> {
            type Output = Polynomial<S>;
            fn $m(self, rhs: Polynomial<S>) -> Polynomial<S> {
                (&self).$m(&rhs)
            }
        }
        impl<S: Scalar> $tr<&Polynomial<S>> for Polynomial<S> {
            type Output = Polynomial<S>;
            fn $m(self, rhs: &Polynomial<S>) -> Polynomial<S> {
                (&self).$m(rhs)
            }
        }
        impl<S: Scalar> $tr<Polynomial<S>> for &Polynomial<S> {
            type Output = Polynomial<S>;
            fn $m(self, rhs: Polynomial<S>) -> Polynomial<S> {
                self.$m(&rhs)
            }
        }
    };
}

owned_binops!(Add, add);
owned_binops!(Sub, sub);
owned_binops!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;
    use proptest::prelude::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn poly(c: &[i64]) -> Polynomial<Rational> {
        Polynomial::new(c.iter().map(|&v| r(v)).collect())
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(poly(&[1, 1]) * poly(&[-1, 1]), poly(&[-1, 0, 1]));
    }

    #[test]
    fn add_zero_is_identity() {
        let p = poly(&[3, 0, -2, 5]);
        assert_eq!(&p + &Polynomial::zero(), p);
    }

    #[test]
    fn monomial_product() {
        assert_eq!(poly(&[0, 2]) * poly(&[0, 0, 3]), poly(&[0, 0, 0, 6]));
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = poly(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(poly(&[0, 0]).is_zero());
        assert_eq!(poly(&[0]).degree(), None);
    }

    #[test]
    fn affine_substitution_expands() {
        let p = poly(&[0, 0, 1]);
        assert_eq!(affine_substitute(&p, &r(2), &r(1)), poly(&[1, 4, 4]));
        let q = poly(&[7, -3, 0, 2]);
        assert_eq!(affine_substitute(&q, &r(1), &r(0)), q);
        // s = 0 collapses to the constant p(t)
        assert_eq!(affine_substitute(&q, &r(0), &r(2)), poly(&[17]));
    }

    #[test]
    fn rescaling_by_c_round_trips() {
        // c * (x / c) = x
        let c = Rational::new(-5, 3);
        let p = affine_substitute(&Polynomial::<Rational>::x(), &c.inv(), &Rational::zero());
        assert_eq!(p.scale(&c), Polynomial::x());
    }

    #[test]
    fn division_and_gcd() {
        let a = poly(&[-1, 0, 1]);
        let b = poly(&[1, 1]);
        let (q, rem) = a.div_rem(&b);
        assert_eq!(q, poly(&[-1, 1]));
        assert!(rem.is_zero());
        let g = (poly(&[2, 1]) * poly(&[-3, 1])).gcd(&(poly(&[2, 1]) * poly(&[5, 1])));
        assert_eq!(g, poly(&[2, 1]));
        assert_eq!(poly(&[1, 1]).exact_div(&poly(&[0, 1])), None);
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-20i64..=20, 1i64..=9).prop_map(|(n, d)| Rational::new(n, d))
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial<Rational>> {
        prop::collection::vec(arb_rational(), 0..6).prop_map(Polynomial::new)
    }

    proptest! {
        #[test]
        fn affine_substitution_inverts(p in arb_poly(), s in arb_rational(), t in arb_rational()) {
            prop_assume!(!s.is_zero());
            let forward = affine_substitute(&p, &s, &t);
            prop_assert_eq!(forward.degree(), p.degree());
            let back = affine_substitute(&forward, &s.inv(), &(-t.clone() / &s));
            prop_assert_eq!(back, p);
        }

        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if let (Some(da), Some(db)) = (a.degree(), b.degree()) {
                prop_assert_eq!((&a * &b).degree(), Some(da + db));
            }
        }

        #[test]
        fn division_reconstructs(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let (q, rem) = a.div_rem(&b);
            prop_assert_eq!(&(&q * &b) + &rem, a);
            prop_assert!(rem.degree() < b.degree() || rem.is_zero());
        }
    }
}
