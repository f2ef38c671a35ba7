//! Exact-arithmetic toolkit for the Hahn (q,w)-difference calculus.
//!
//! The crate covers:
//!
//! - [`algebra`]: rationals, rational functions in one auxiliary variable,
//!   dense polynomials and polynomial-matrix determinants;
//! - [`qcalc`]: q-brackets, the Hahn operator `D_{q,w}`, the shift `L_{q,w}`
//!   and normalized discrete derivatives;
//! - [`functionals`]: truncated moment functionals and the induced operators;
//! - [`families`]: three-term recurrences, the master L- and J-families,
//!   the q-classical families and their reduction identities;
//! - [`coherence`]: the polynomial systems attached to a coherent pair and
//!   moment-exact checks of the functional equations they imply;
//! - [`classify`]: the Pearson-to-recurrence formulas and the classification
//!   of self-coherent sequences with `deg pi <= 2`.
//!
//! Everything is exact. There is no floating point anywhere in the crate, and
//! the crate is `no_std` (it only needs `alloc`).
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod classify;
pub mod coherence;
mod error;
pub mod families;
pub mod functionals;
pub mod qcalc;

pub use error::{Error, Result};

pub use algebra::{Polynomial, Rational, RationalFunction, Scalar};
pub use qcalc::QParams;
