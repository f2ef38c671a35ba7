//! Exact scalar fields and dense univariate polynomials over them.

mod matrix;
mod polynomial;
mod rational;
mod rational_function;
mod scalar;

pub use matrix::{det_cofactor, det_fraction_free, Domain};
pub use polynomial::{affine_substitute, Polynomial};
pub use rational::Rational;
pub use rational_function::{rf_limit_at_zero, RationalFunction};
pub use scalar::Scalar;
