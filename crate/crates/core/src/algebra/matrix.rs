//! Determinants of small matrices over an exact integral domain.

use alloc::vec::Vec;

use super::{Polynomial, Rational, RationalFunction, Scalar};

/// A commutative ring without zero divisors in which exact quotients can be
/// computed. Fields and polynomial rings over fields qualify.
pub trait Domain: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / rhs`, assuming `rhs` divides `self`.
    fn exact_div(&self, rhs: &Self) -> Self;
}

macro_rules! field_domain {
    ($t:ty) => {
        impl Domain for $t {
            fn zero() -> Self {
                <$t as Scalar>::zero()
            }
            fn one() -> Self {
                <$t as Scalar>::one()
            }
            fn is_zero(&self) -> bool {
                <$t as Scalar>::is_zero(self)
            }
            fn add(&self, rhs: &Self) -> Self {
                self.clone() + rhs
            }
            fn sub(&self, rhs: &Self) -> Self {
                self.clone() - rhs
            }
            fn mul(&self, rhs: &Self) -> Self {
                self.clone() * rhs
            }
            fn neg(&self) -> Self {
                -self.clone()
            }
            fn exact_div(&self, rhs: &Self) -> Self {
                self.clone() / rhs
            }
        }
    };
}

field_domain!(Rational);
field_domain!(RationalFunction);

impl<S: Scalar> Domain for Polynomial<S> {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn one() -> Self {
        Polynomial::one()
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        Polynomial::exact_div(self, rhs).expect("fraction-free step must divide exactly")
    }
}

/// Fraction-free (Bareiss) elimination with row pivoting.
///
/// Panics if the matrix is not square.
pub fn det_fraction_free<T: Domain>(matrix: &[Vec<T>]) -> T {
    let n = matrix.len();
    assert!(matrix.iter().all(|row| row.len() == n), "matrix must be square");
    if n == 0 {
        return T::one();
    }
    let mut a: Vec<Vec<T>> = matrix.to_vec();
    let mut prev = T::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.exact_div(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// Laplace expansion along the first row. Exponential cost; intended as an
/// independent cross-check for small orders.
pub fn det_cofactor<T: Domain>(matrix: &[Vec<T>]) -> T {
    let n = matrix.len();
    assert!(matrix.iter().all(|row| row.len() == n), "matrix must be square");
    match n {
        0 => T::one(),
        1 => matrix[0][0].clone(),
        _ => {
            let mut acc = T::zero();
            for col in 0..n {
                if matrix[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<T>> = matrix[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != col)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = matrix[0][col].mul(&det_cofactor(&minor));
                acc = if col % 2 == 0 {
                    acc.add(&term)
                } else {
                    acc.sub(&term)
                };
            }
            acc
        }
    }
}
