//! q-symbols and the Hahn difference calculus on polynomials.
//!
//! For a pair `(q, w)` the Hahn operator is
//! `D f(x) = (f(qx + w) - f(x)) / ((q - 1)x + w)` and the shift is
//! `L f(x) = f(qx + w)`. Both act on [`Polynomial`]s and return polynomials;
//! the division in `D` is exact because the numerator vanishes at the fixed
//! point `w0 = w / (1 - q)`.

use alloc::format;
use alloc::vec::Vec;

use crate::algebra::{affine_substitute, Polynomial, Scalar};
use crate::{Error, Result};

/// The lattice parameters `(q, w)` together with the fixed point
/// `w0 = w / (1 - q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QParams<S> {
    q: S,
    omega: S,
    omega0: S,
}

impl<S: Scalar> QParams<S> {
    /// Rejects `q` in `{0, 1, -1}`. For rational `q` this is exactly the
    /// condition that no power `q^n` with `n >= 1` equals one.
    pub fn new(q: S, omega: S) -> Result<Self> {
        if q.is_zero() || q.is_one() || (-q.clone()).is_one() {
            return Err(Error::InvalidParams(format!("q = {q} must avoid 0, 1 and -1")));
        }
        let omega0 = omega.clone() / (S::one() - &q);
        Ok(QParams { q, omega, omega0 })
    }

    pub fn q(&self) -> &S {
        &self.q
    }

    pub fn omega(&self) -> &S {
        &self.omega
    }

    pub fn omega0(&self) -> &S {
        &self.omega0
    }

    /// `(1/q, -w/q)`: the parameters of the inverse shift. The fixed point
    /// is unchanged.
    pub fn inverse(&self) -> Self {
        let qi = self.q.inv();
        QParams {
            omega: -(self.omega.clone() * &qi),
            q: qi,
            omega0: self.omega0.clone(),
        }
    }

    /// Denominator `(q - 1)x + w` of the Hahn quotient.
    fn lattice_step(&self) -> Polynomial<S> {
        Polynomial::linear(self.omega.clone(), self.q.clone() - S::one())
    }
}

/// Tables of `[n]`, `[n]!` for a fixed base, `0 <= n <= n_max`.
#[derive(Clone, Debug)]
pub struct QSymbolCache<S> {
    base: S,
    brackets: Vec<S>,
    factorials: Vec<S>,
}

impl<S: Scalar> QSymbolCache<S> {
    pub fn new(base: S, n_max: usize) -> Self {
        let mut brackets = Vec::with_capacity(n_max + 1);
        let mut factorials = Vec::with_capacity(n_max + 1);
        // [n] = 1 + base + ... + base^(n-1)
        let mut bracket = S::zero();
        let mut power = S::one();
        let mut fact = S::one();
        brackets.push(S::zero());
        factorials.push(S::one());
        for _ in 1..=n_max {
            bracket = bracket + &power;
            power = power * &base;
            fact = fact * &bracket;
            brackets.push(bracket.clone());
            factorials.push(fact.clone());
        }
        QSymbolCache {
            base,
            brackets,
            factorials,
        }
    }

    pub fn base(&self) -> &S {
        &self.base
    }

    pub fn n_max(&self) -> usize {
        self.brackets.len() - 1
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.n_max() {
            return Err(Error::IndexOutOfRange(format!(
                "q-symbol index {n} beyond table size {}",
                self.n_max()
            )));
        }
        Ok(())
    }

    pub fn bracket(&self, n: usize) -> Result<&S> {
        self.check(n)?;
        Ok(&self.brackets[n])
    }

    pub fn factorial(&self, n: usize) -> Result<&S> {
        self.check(n)?;
        Ok(&self.factorials[n])
    }

    /// `[n]! / [m]!` for `m <= n`.
    pub fn factorial_ratio(&self, n: usize, m: usize) -> Result<S> {
        Ok(self.factorial(n)?.clone() / self.factorial(m)?)
    }

    /// Gaussian binomial `[n choose k]`; `DomainError` unless `0 <= k <= n`.
    pub fn binomial(&self, n: i64, k: i64) -> Result<S> {
        if n < 0 || k < 0 || k > n {
            return Err(Error::DomainError(format!("q-binomial ({n} choose {k})")));
        }
        let (n, k) = (n as usize, k as usize);
        Ok(self.factorial(n)?.clone() / &(self.factorial(k)?.clone() * self.factorial(n - k)?))
    }
}

/// `([n], [n]!, [n choose k])` for the given base.
pub fn q_symbols<S: Scalar>(n: i64, k: i64, base: &S) -> Result<(S, S, S)> {
    if base.is_zero() || base.is_one() {
        return Err(Error::DomainError(format!("q-symbol base {base}")));
    }
    if n < 0 {
        return Err(Error::DomainError(format!("negative q-bracket index {n}")));
    }
    let cache = QSymbolCache::new(base.clone(), n as usize);
    let binom = cache.binomial(n, k)?;
    Ok((
        cache.bracket(n as usize)?.clone(),
        cache.factorial(n as usize)?.clone(),
        binom,
    ))
}

/// `L f(x) = f(qx + w)`.
pub fn shift<S: Scalar>(f: &Polynomial<S>, qp: &QParams<S>) -> Polynomial<S> {
    affine_substitute(f, &qp.q, &qp.omega)
}

/// `times`-fold shift.
pub fn shift_power<S: Scalar>(f: &Polynomial<S>, times: usize, qp: &QParams<S>) -> Polynomial<S> {
    if times == 0 {
        return f.clone();
    }
    // L^j f(x) = f(q^j x + w [j]_q)
    let scale = qp.q.powi(times as i64);
    let offset = qp.omega.clone() * &((scale.clone() - S::one()) / (qp.q.clone() - S::one()));
    affine_substitute(f, &scale, &offset)
}

/// The Hahn difference quotient. The division is checked to be exact.
pub fn hahn_diff<S: Scalar>(f: &Polynomial<S>, qp: &QParams<S>) -> Result<Polynomial<S>> {
    if f.is_constant() {
        return Ok(Polynomial::zero());
    }
    let numerator = &shift(f, qp) - f;
    let (quot, rem) = numerator.div_rem(&qp.lattice_step());
    if !rem.is_zero() {
        return Err(Error::InternalInconsistency(format!(
            "Hahn quotient of {f} leaves remainder {rem}"
        )));
    }
    Ok(quot)
}

/// `m`-fold Hahn derivative; `m = 0` is the identity.
pub fn hahn_power<S: Scalar>(f: &Polynomial<S>, m: usize, qp: &QParams<S>) -> Result<Polynomial<S>> {
    let mut out = f.clone();
    for _ in 0..m {
        if out.is_zero() {
            break;
        }
        out = hahn_diff(&out, qp)?;
    }
    Ok(out)
}

/// `([n]! / [n+m]!) D^m P` for `deg P = n + m`; monic input gives monic output.
pub fn normalized_derivative<S: Scalar>(
    p: &Polynomial<S>,
    n: usize,
    m: usize,
    qp: &QParams<S>,
) -> Result<Polynomial<S>> {
    let found = p.degree().unwrap_or(0);
    if p.is_zero() || found != n + m {
        return Err(Error::DegreeMismatch {
            expected: n + m,
            found,
        });
    }
    if m == 0 {
        return Ok(p.clone());
    }
    let cache = QSymbolCache::new(qp.q.clone(), n + m);
    let factor = cache.factorial_ratio(n, 0)? / cache.factorial(n + m)?;
    Ok(hahn_power(p, m, qp)?.scale(&factor))
}

/// `q^{-1} [phi(x) + ((q-1)x + w) psi(x)]`: the companion of `phi` for which
/// the Pearson equation in direction `(q, w)` becomes one in direction
/// `(1/q, -w/q)`.
pub fn phi_hat<S: Scalar>(
    phi: &Polynomial<S>,
    psi: &Polynomial<S>,
    qp: &QParams<S>,
) -> Polynomial<S> {
    (phi + &(&qp.lattice_step() * psi)).scale(&qp.q.inv())
}
