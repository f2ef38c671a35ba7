//! Truncated moment functionals and the operators induced on them.
//!
//! A [`MomentFunctional`] of order `K` stores `<u, x^i>` for `0 <= i <= K`.
//! Every operation returns the exact order up to which its result is still
//! determined; nothing is silently truncated or extended.

use alloc::format;
use alloc::vec::Vec;

use crate::algebra::{det_fraction_free, Domain, Polynomial, Scalar};
use crate::qcalc::{hahn_diff, hahn_power, shift_power, QParams, QSymbolCache};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct MomentFunctional<S> {
    moments: Vec<S>,
}

/// Outcome of a componentwise comparison of two functionals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Agreement {
    /// Equal on `x^0 .. x^order`.
    HoldsToOrder(usize),
    /// First index where the moments differ.
    FailsAt(usize),
}

impl Agreement {
    pub fn holds(&self) -> bool {
        matches!(self, Agreement::HoldsToOrder(_))
    }
}

impl<S: Scalar> MomentFunctional<S> {
    /// Panics on an empty moment vector (order would be undefined).
    pub fn new(moments: Vec<S>) -> Self {
        assert!(!moments.is_empty(), "a functional needs at least m_0");
        MomentFunctional { moments }
    }

    /// The zero functional, known to the given order.
    pub fn zero(order: usize) -> Self {
        MomentFunctional {
            moments: alloc::vec![S::zero(); order + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.moments.len() - 1
    }

    pub fn moments(&self) -> &[S] {
        &self.moments
    }

    pub fn moment(&self, i: usize) -> Result<&S> {
        self.moments.get(i).ok_or(Error::OrderExceeded {
            needed: i,
            available: self.order(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.moments.iter().all(Scalar::is_zero)
    }

    /// Restriction to a lower order.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::OrderExceeded {
                needed: order,
                available: self.order(),
            });
        }
        Ok(MomentFunctional {
            moments: self.moments[..=order].to_vec(),
        })
    }

    /// `<u, f>`.
    pub fn act(&self, f: &Polynomial<S>) -> Result<S> {
        if let Some(d) = f.degree() {
            if d > self.order() {
                return Err(Error::OrderExceeded {
                    needed: d,
                    available: self.order(),
                });
            }
        }
        Ok(f
            .coeffs()
            .iter()
            .zip(&self.moments)
            .fold(S::zero(), |acc, (c, m)| acc + &(c.clone() * m)))
    }

    /// `f u`, defined by `<f u, g> = <u, f g>`; the order drops by `deg f`.
    pub fn left_mult(&self, f: &Polynomial<S>) -> Result<Self> {
        let d = f.degree().unwrap_or(0);
        if d > self.order() {
            return Err(Error::OrderExceeded {
                needed: d,
                available: self.order(),
            });
        }
        let moments = (0..=self.order() - d)
            .map(|n| {
                f.coeffs()
                    .iter()
                    .enumerate()
                    .fold(S::zero(), |acc, (i, c)| acc + &(c.clone() * &self.moments[n + i]))
            })
            .collect();
        Ok(MomentFunctional { moments })
    }

    /// Induced Hahn operator: `<D u, f> = -q^{-1} <u, D_{1/q,-w/q} f>`.
    /// The order grows by one.
    pub fn diff(&self, qp: &QParams<S>) -> Result<Self> {
        let inner = qp.inverse();
        let factor = -qp.q().inv();
        let k = self.order();
        let mut moments = Vec::with_capacity(k + 2);
        for n in 0..=k + 1 {
            let dx = hahn_diff(&Polynomial::monomial(S::one(), n), &inner)?;
            moments.push(self.act(&dx)? * &factor);
        }
        Ok(MomentFunctional { moments })
    }

    /// `n`-fold induced Hahn operator.
    pub fn diff_power(&self, n: usize, qp: &QParams<S>) -> Result<Self> {
        let mut out = self.clone();
        for _ in 0..n {
            out = out.diff(qp)?;
        }
        Ok(out)
    }

    /// Induced shift: `<L u, x^n> = <u, ((x - w) / q)^n>`.
    pub fn shift(&self, qp: &QParams<S>) -> Result<Self> {
        let qi = qp.q().inv();
        let lin = Polynomial::linear(-(qp.omega().clone() * &qi), qi);
        let mut power = Polynomial::one();
        let mut moments = Vec::with_capacity(self.moments.len());
        for _ in 0..=self.order() {
            moments.push(self.act(&power)?);
            power = &power * &lin;
        }
        Ok(MomentFunctional { moments })
    }

    pub fn scale(&self, c: &S) -> Self {
        MomentFunctional {
            moments: self.moments.iter().map(|m| m.clone() * c).collect(),
        }
    }

    /// Sum, known to the smaller of the two orders.
    pub fn add(&self, other: &Self) -> Self {
        MomentFunctional {
            moments: self
                .moments
                .iter()
                .zip(&other.moments)
                .map(|(a, b)| a.clone() + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    /// Componentwise comparison on the jointly valid moments.
    pub fn agree(&self, other: &Self) -> Agreement {
        let order = self.order().min(other.order());
        match (0..=order).find(|&i| self.moments[i] != other.moments[i]) {
            Some(i) => Agreement::FailsAt(i),
            None => Agreement::HoldsToOrder(order),
        }
    }

    /// Leading principal Hankel determinants `det [m_{i+j}]_{i,j<k}` for
    /// `k = 1 .. floor(K/2) + 1`.
    pub fn hankel_determinants(&self) -> Vec<S>
    where
        S: Domain,
    {
        (1..=self.order() / 2 + 1)
            .map(|k| {
                let h: Vec<Vec<S>> = (0..k)
                    .map(|i| (0..k).map(|j| self.moments[i + j].clone()).collect())
                    .collect();
                det_fraction_free(&h)
            })
            .collect()
    }

    /// Finite regularity certificate: all available Hankel determinants are
    /// non-zero.
    pub fn is_regular(&self) -> bool
    where
        S: Domain,
    {
        self.hankel_determinants().iter().all(|d| !Scalar::is_zero(d))
    }
}

/// `D^n (f u)` evaluated directly, cross-checked against both Leibniz
/// expansions
/// `sum_j [n, j] L^{n-j}(D^j f) D^{n-j} u` and
/// `sum_j [n, j] L^j(D^{n-j} f) D^j u`.
pub fn functional_diff_power<S: Scalar>(
    f: &Polynomial<S>,
    u: &MomentFunctional<S>,
    n: usize,
    qp: &QParams<S>,
) -> Result<MomentFunctional<S>> {
    let direct = u.left_mult(f)?.diff_power(n, qp)?;
    let (first, second) = leibniz_expansions(f, u, n, qp)?;
    for (name, expansion) in [("first", first), ("second", second)] {
        if let Agreement::FailsAt(i) = direct.agree(&expansion) {
            return Err(Error::InternalInconsistency(format!(
                "{name} Leibniz expansion of D^{n}(f u) differs at moment {i}"
            )));
        }
    }
    Ok(direct)
}

/// The two Leibniz sums for `D^n (f u)`.
pub fn leibniz_expansions<S: Scalar>(
    f: &Polynomial<S>,
    u: &MomentFunctional<S>,
    n: usize,
    qp: &QParams<S>,
) -> Result<(MomentFunctional<S>, MomentFunctional<S>)> {
    let binom = QSymbolCache::new(qp.q().clone(), n);
    let derivs: Vec<MomentFunctional<S>> = (0..=n)
        .scan(u.clone(), |acc, i| {
            let cur = acc.clone();
            if i < n {
                *acc = match acc.diff(qp) {
                    Ok(next) => next,
                    Err(e) => return Some(Err(e)),
                };
            }
            Some(Ok(cur))
        })
        .collect::<Result<_>>()?;
    let mut first: Option<MomentFunctional<S>> = None;
    let mut second: Option<MomentFunctional<S>> = None;
    for j in 0..=n {
        let c = binom.binomial(n as i64, j as i64)?;
        let t1 = shift_power(&hahn_power(f, j, qp)?, n - j, qp).scale(&c);
        let t1 = derivs[n - j].left_mult(&t1)?;
        let t2 = shift_power(&hahn_power(f, n - j, qp)?, j, qp).scale(&c);
        let t2 = derivs[j].left_mult(&t2)?;
        first = Some(match first {
            Some(acc) => acc.add(&t1),
            None => t1,
        });
        second = Some(match second {
            Some(acc) => acc.add(&t2),
            None => t2,
        });
    }
    Ok((first.expect("n >= 0"), second.expect("n >= 0")))
}

/// Direction in which a Pearson pair is stated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `D_{q,w}(phi u) = psi u`.
    Forward,
    /// `D_{1/q,-w/q}(phi u) = psi u`.
    Backward,
}

/// A Pearson pair `(phi, psi)` witnessing that a functional is semiclassical.
#[derive(Clone, Debug, PartialEq)]
pub struct SemiclassicalWitness<S: Scalar> {
    phi: Polynomial<S>,
    psi: Polynomial<S>,
    direction: Direction,
}

impl<S: Scalar> SemiclassicalWitness<S> {
    /// Requires `deg psi >= 1`.
    pub fn new(phi: Polynomial<S>, psi: Polynomial<S>, direction: Direction) -> Result<Self> {
        if psi.degree().unwrap_or(0) < 1 {
            return Err(Error::InvalidParams(
                "Pearson witness needs deg psi >= 1".into(),
            ));
        }
        Ok(SemiclassicalWitness {
            phi,
            psi,
            direction,
        })
    }

    pub fn phi(&self) -> &Polynomial<S> {
        &self.phi
    }

    pub fn psi(&self) -> &Polynomial<S> {
        &self.psi
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// `max(deg phi - 2, deg psi - 1, 0)`: an upper bound for the class.
    pub fn class_bound(&self) -> usize {
        let dphi = self.phi.degree().unwrap_or(0) as i64 - 2;
        let dpsi = self.psi.degree().unwrap_or(0) as i64 - 1;
        dphi.max(dpsi).max(0) as usize
    }
}

/// Compares `D(phi u)` with `psi u` on every jointly valid moment.
pub fn pearson_check<S: Scalar>(
    w: &SemiclassicalWitness<S>,
    u: &MomentFunctional<S>,
    qp: &QParams<S>,
) -> Result<Agreement> {
    let dir = match w.direction {
        Direction::Forward => qp.clone(),
        Direction::Backward => qp.inverse(),
    };
    let lhs = u.left_mult(&w.phi)?.diff(&dir)?;
    let rhs = u.left_mult(&w.psi)?;
    Ok(lhs.agree(&rhs))
}

/// The functional `e_n` of order `order` with `<e_n, basis[j]> = delta_{n,j}`
/// for `j <= order`; `basis[j]` must have degree exactly `j`.
pub fn dual_basis_functional<S: Scalar>(
    basis: &[Polynomial<S>],
    n: usize,
    order: usize,
) -> Result<MomentFunctional<S>> {
    if basis.len() <= order {
        return Err(Error::MissingData(format!(
            "dual basis of order {order} needs {} basis polynomials, got {}",
            order + 1,
            basis.len()
        )));
    }
    if n > order {
        return Err(Error::IndexOutOfRange(format!(
            "dual functional e_{n} beyond order {order}"
        )));
    }
    let mut moments: Vec<S> = Vec::with_capacity(order + 1);
    for (j, b) in basis.iter().take(order + 1).enumerate() {
        if b.degree() != Some(j) {
            return Err(Error::NotSimpleSet(j));
        }
        let known = b.coeffs()[..j]
            .iter()
            .zip(&moments)
            .fold(S::zero(), |acc, (c, m)| acc + &(c.clone() * m));
        let rhs = if j == n { S::one() } else { S::zero() };
        moments.push((rhs - known) / &b.coeffs()[j]);
    }
    Ok(MomentFunctional { moments })
}
