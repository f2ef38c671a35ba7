//! Three-term recurrences, the two master families and their classical
//! specialisations.

mod reduction;
mod spec;
mod structure;

pub use reduction::{reduction_check, ReductionIdentity, ReductionParams, ReductionReport};
pub use spec::{classical, family_polynomials, family_ttrr, ClassicalLabel, FamilyKind, FamilySpec};
pub use structure::{structure_coeffs, structure_coeffs_from, StructureTable};

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{Polynomial, Scalar};
use crate::functionals::MomentFunctional;
use crate::{Error, Result};

/// Recurrence data `x P_n = P_{n+1} + beta_n P_n + gamma_n P_{n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TTRRCoeffs<S> {
    beta: Vec<S>,
    /// `gamma[i]` holds `gamma_{i+1}`.
    gamma: Vec<S>,
}

impl<S: Scalar> TTRRCoeffs<S> {
    /// `gamma` lists `gamma_1, gamma_2, ...`; every entry must be non-zero.
    pub fn new(beta: Vec<S>, gamma: Vec<S>) -> Result<Self> {
        if let Some(i) = gamma.iter().position(Scalar::is_zero) {
            return Err(Error::RegularityViolation {
                condition: "gamma_n != 0".into(),
                index: i + 1,
            });
        }
        Ok(TTRRCoeffs { beta, gamma })
    }

    pub fn betas(&self) -> &[S] {
        &self.beta
    }

    /// `gamma_1, gamma_2, ...`
    pub fn gammas(&self) -> &[S] {
        &self.gamma
    }

    pub fn beta(&self, n: usize) -> Result<&S> {
        self.beta
            .get(n)
            .ok_or_else(|| Error::MissingCoefficient(format!("beta_{n}")))
    }

    /// `gamma_n` for `n >= 1`.
    pub fn gamma(&self, n: usize) -> Result<&S> {
        n.checked_sub(1)
            .and_then(|i| self.gamma.get(i))
            .ok_or_else(|| Error::MissingCoefficient(format!("gamma_{n}")))
    }

    /// Recurrence of `s^n F_n((x - t) / s)`.
    pub fn affine(&self, scale: &S, offset: &S) -> Self {
        let s2 = scale.clone() * scale;
        TTRRCoeffs {
            beta: self
                .beta
                .iter()
                .map(|b| b.clone() * scale + offset)
                .collect(),
            gamma: self.gamma.iter().map(|g| g.clone() * &s2).collect(),
        }
    }

    /// `gamma_1 ... gamma_n`, i.e. `<u, P_n^2>` for `m_0 = 1`.
    pub fn norm(&self, n: usize) -> Result<S> {
        (1..=n).try_fold(S::one(), |acc, i| Ok(acc * self.gamma(i)?))
    }
}

/// `P_0 .. P_{n_max}` from the recurrence.
pub fn ttrr_generate<S: Scalar>(coeffs: &TTRRCoeffs<S>, n_max: usize) -> Result<Vec<Polynomial<S>>> {
    let mut out = vec![Polynomial::one()];
    for n in 0..n_max {
        let lin = Polynomial::linear(-coeffs.beta(n)?.clone(), S::one());
        let mut next = &lin * &out[n];
        if n >= 1 {
            next = &next - &out[n - 1].scale(coeffs.gamma(n)?);
        }
        out.push(next);
    }
    Ok(out)
}

fn check_regular(holds: bool, condition: &str, index: usize) -> Result<()> {
    if holds {
        Ok(())
    } else {
        Err(Error::RegularityViolation {
            condition: condition.into(),
            index,
        })
    }
}

fn check_denominator<S: Scalar>(d: &S, condition: &str, index: usize) -> Result<()> {
    if d.is_zero() {
        Err(Error::DenominatorZero {
            condition: condition.into(),
            index,
        })
    } else {
        Ok(())
    }
}

/// Recurrence of `L_n(x; a, b, c | q)` up to `beta_{n_max}`, `gamma_{n_max}`.
pub fn l_coeffs<S: Scalar>(a: &S, b: &S, c: &S, q: &S, n_max: usize) -> Result<TTRRCoeffs<S>> {
    for n in 1..=n_max {
        let cq = c.clone() * &q.powi(n as i64);
        check_regular(*a != cq, "a != c q^n", n)?;
        check_regular(*b != cq, "b != c q^n", n)?;
    }
    let one = S::one();
    let beta = (0..=n_max)
        .map(|n| {
            let qn = q.powi(n as i64);
            let qn1 = qn.clone() * q;
            (a.clone() + b - &(c.clone() * &(qn1 + &qn - &one))) * &qn
        })
        .collect();
    let gamma = (0..n_max)
        .map(|n| {
            let qn = q.powi(n as i64);
            let qn1 = qn.clone() * q;
            let cq = c.clone() * &qn1;
            -((a.clone() - &cq) * &(b.clone() - &cq) * &(one.clone() - &qn1) * &qn)
        })
        .collect();
    TTRRCoeffs::new(beta, gamma)
}

/// Recurrence of `J_n(x; a, b, c, d | q)` up to `beta_{n_max}`, `gamma_{n_max}`.
pub fn j_coeffs<S: Scalar>(
    a: &S,
    b: &S,
    c: &S,
    d: &S,
    q: &S,
    n_max: usize,
) -> Result<TTRRCoeffs<S>> {
    let one = S::one();
    for n in 1..=n_max {
        let qn = q.powi(n as i64);
        check_regular(!(b.clone() * &qn).is_one(), "b != q^-n", n)?;
        check_regular(!(d.clone() * &qn).is_one(), "d != q^-n", n)?;
        check_regular(*a != c.clone() * &qn, "a != c q^n", n)?;
        check_regular(*b != d.clone() * &qn, "b != d q^n", n)?;
        check_regular(*c != a.clone() * d * &qn, "c != a d q^n", n)?;
    }
    // 1 - d q^e
    let dq = |e: usize| one.clone() - &(d.clone() * &q.powi(e as i64));
    let mut beta = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let qn = q.powi(n as i64);
        let den = dq(2 * n) * &dq(2 * n + 2);
        check_denominator(&den, "(1 - d q^2n)(1 - d q^(2n+2)) != 0", n)?;
        let first = (a.clone() * &(b.clone() + d) + &(c.clone() * &(b.clone() + &one)))
            * &(one.clone() + &(d.clone() * &q.powi(2 * n as i64 + 1)));
        let second = (c.clone() * &(b.clone() + d) + &(a.clone() * d * &(b.clone() + &one)))
            * &(one.clone() + q)
            * &qn;
        beta.push(qn * &(first - &second) / &den);
    }
    let mut gamma = Vec::with_capacity(n_max);
    for n in 0..n_max {
        let qn = q.powi(n as i64);
        let qn1 = qn.clone() * q;
        let den = dq(2 * n + 1) * &dq(2 * n + 2) * &dq(2 * n + 2) * &dq(2 * n + 3);
        check_denominator(&den, "(1 - d q^(2n+1))(1 - d q^(2n+2))^2(1 - d q^(2n+3)) != 0", n)?;
        let num = qn.clone()
            * &(one.clone() - &qn1)
            * &(one.clone() - &(b.clone() * &qn1))
            * &(one.clone() - &(d.clone() * &qn1))
            * &(a.clone() - &(c.clone() * &qn1))
            * &(b.clone() - &(d.clone() * &qn1))
            * &(c.clone() - &(a.clone() * d * &qn1));
        gamma.push(-(num / &den));
    }
    TTRRCoeffs::new(beta, gamma)
}

/// Moments `m_0 .. m_order` (with `m_0 = 1`) of the functional the recurrence
/// is orthogonal for. Uses the expansion `x^n = sum_j a_{n,j} P_j`, whose
/// constant coordinate is `m_n`; only `beta_j`, `gamma_j` with `j <= order/2`
/// are read.
pub fn moments_from_ttrr<S: Scalar>(coeffs: &TTRRCoeffs<S>, order: usize) -> Result<MomentFunctional<S>> {
    let mut row = vec![S::one()];
    let mut moments = vec![S::one()];
    for n in 0..order {
        // a_{n+1,i} = a_{n,i-1} + beta_i a_{n,i} + gamma_{i+1} a_{n,i+1},
        // kept only for i <= order - n - 1
        let width = (n + 2).min(order - n);
        let mut next = Vec::with_capacity(width);
        for i in 0..width {
            let mut v = if i >= 1 { row[i - 1].clone() } else { S::zero() };
            if let Some(a) = row.get(i) {
                v = v + &(coeffs.beta(i)?.clone() * a);
            }
            if let Some(a) = row.get(i + 1) {
                v = v + &(coeffs.gamma(i + 1)?.clone() * a);
            }
            next.push(v);
        }
        moments.push(next[0].clone());
        row = next;
    }
    Ok(MomentFunctional::new(moments))
}

/// Coordinates of `f` in a simple set, by descending elimination.
pub fn expand_in_basis<S: Scalar>(f: &Polynomial<S>, basis: &[Polynomial<S>]) -> Result<Vec<S>> {
    let Some(deg) = f.degree() else {
        return Ok(Vec::new());
    };
    if basis.len() <= deg {
        return Err(Error::NotSimpleSet(basis.len()));
    }
    if let Some(j) = (0..=deg).find(|&j| basis[j].degree() != Some(j)) {
        return Err(Error::NotSimpleSet(j));
    }
    let mut rest = f.clone();
    let mut out = vec![S::zero(); deg + 1];
    for j in (0..=deg).rev() {
        let c = rest.coeff(j) / &basis[j].coeffs()[j];
        if !c.is_zero() {
            rest = &rest - &basis[j].scale(&c);
            out[j] = c;
        }
    }
    if !rest.is_zero() {
        return Err(Error::InternalInconsistency(
            "non-zero remainder after triangular elimination".into(),
        ));
    }
    Ok(out)
}
