use alloc::format;
use alloc::vec::Vec;

use super::{expand_in_basis, family_polynomials, FamilySpec};
use crate::algebra::{Polynomial, Scalar};
use crate::coherence::CoherenceConfig;
use crate::qcalc::{normalized_derivative, QParams};
use crate::{Error, Result};

/// Coefficients `c_{n,j}` of `pi_N P_n^{[m]}` in the basis `Q_j^{[k]}`.
///
/// Every row is the full expansion, `j = 0 .. n + N`; entries below the band
/// are kept as data.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureTable<S: Scalar> {
    config: CoherenceConfig<S>,
    rows: Vec<Vec<S>>,
}

impl<S: Scalar> StructureTable<S> {
    pub fn config(&self) -> &CoherenceConfig<S> {
        &self.config
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, n: usize) -> Result<&[S]> {
        self.rows
            .get(n)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::MissingData(format!("structure row {n} beyond n_max {}", self.n_max())))
    }

    /// `c_{n,j}`, zero for `j < 0` or `j > n + N`.
    pub fn c(&self, n: usize, j: i64) -> Result<S> {
        let row = self.row(n)?;
        Ok(usize::try_from(j)
            .ok()
            .and_then(|j| row.get(j).cloned())
            .unwrap_or_else(S::zero))
    }

    /// Copy with `c_{n,j}` replaced by `value`.
    pub fn with_entry(&self, n: usize, j: usize, value: S) -> Result<Self> {
        let mut out = self.clone();
        let slot = out
            .rows
            .get_mut(n)
            .and_then(|r| r.get_mut(j))
            .ok_or_else(|| Error::IndexOutOfRange(format!("c_{{{n},{j}}} outside the table")))?;
        *slot = value;
        Ok(out)
    }

    /// Lowest index `n - M` of the band.
    fn band_low(&self, n: usize) -> usize {
        n.saturating_sub(self.config.index())
    }

    pub fn below_band_zero(&self, n: usize) -> bool {
        self.rows[n][..self.band_low(n)].iter().all(Scalar::is_zero)
    }

    pub fn top_is_one(&self, n: usize) -> bool {
        self.rows[n]
            .get(n + self.config.n())
            .is_some_and(Scalar::is_one)
    }

    /// `c_{n,n-M} != 0`; vacuous for `n < M`.
    pub fn lower_nonzero(&self, n: usize) -> bool {
        n < self.config.index() || !self.rows[n][n - self.config.index()].is_zero()
    }

    /// First row violating the band shape, if any.
    pub fn first_violation(&self) -> Option<usize> {
        (0..self.rows.len()).find(|&n| {
            !(self.below_band_zero(n) && self.top_is_one(n) && self.lower_nonzero(n))
        })
    }

    pub fn is_coherent(&self) -> bool {
        self.first_violation().is_none()
    }
}

/// Structure table from explicit sequences: `p` needs degrees up to
/// `n_max + m`, `q_seq` up to `n_max + N + k`.
pub fn structure_coeffs_from<S: Scalar>(
    p: &[Polynomial<S>],
    q_seq: &[Polynomial<S>],
    config: &CoherenceConfig<S>,
    n_max: usize,
    qp: &QParams<S>,
) -> Result<StructureTable<S>> {
    let (m, k, big_n) = (config.m(), config.k(), config.n());
    if p.len() <= n_max + m || q_seq.len() <= n_max + big_n + k {
        return Err(Error::MissingData(format!(
            "structure table to n = {n_max} needs P up to degree {} and Q up to degree {}",
            n_max + m,
            n_max + big_n + k
        )));
    }
    let qk: Vec<Polynomial<S>> = (0..=n_max + big_n)
        .map(|j| normalized_derivative(&q_seq[j + k], j, k, qp))
        .collect::<Result<_>>()?;
    let rows = (0..=n_max)
        .map(|n| {
            let lhs = config.pi() * &normalized_derivative(&p[n + m], n, m, qp)?;
            expand_in_basis(&lhs, &qk)
        })
        .collect::<Result<_>>()?;
    Ok(StructureTable {
        config: config.clone(),
        rows,
    })
}

/// Structure table of two families.
pub fn structure_coeffs<S: Scalar>(
    p_spec: &FamilySpec<S>,
    q_spec: &FamilySpec<S>,
    config: &CoherenceConfig<S>,
    n_max: usize,
    qp: &QParams<S>,
) -> Result<StructureTable<S>> {
    let p = family_polynomials(p_spec, n_max + config.m())?;
    let q_seq = family_polynomials(q_spec, n_max + config.n() + config.k())?;
    structure_coeffs_from(&p, &q_seq, config, n_max, qp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;
    use crate::families::FamilyKind;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn ri(v: i64) -> Rational {
        Rational::from_integer(v)
    }

    #[test]
    fn appell_case_single_term() {
        let q = r(1, 2);
        let qp = QParams::new(q.clone(), r(3, 4)).unwrap();
        let spec = FamilySpec::plain(FamilyKind::L { a: ri(2), b: ri(3), c: ri(0) }, q)
            .unwrap()
            .translated(qp.omega0());
        let cfg = CoherenceConfig::new(0, 1, 0, Polynomial::one()).unwrap();
        let t = structure_coeffs(&spec, &spec, &cfg, 8, &qp).unwrap();
        for n in 0..=8 {
            let row = t.row(n).unwrap();
            assert!(row[n].is_one());
            assert!(row[..n].iter().all(Scalar::is_zero));
        }
        assert!(t.is_coherent());
    }

    #[test]
    fn linear_pi_first_coefficient() {
        let q = r(2, 3);
        let qp = QParams::new(q.clone(), r(-1, 2)).unwrap();
        let w0 = qp.omega0().clone();
        let (a, b, c) = (r(1, 5), ri(2), r(3, 7));
        let spec = FamilySpec::plain(FamilyKind::L { a, b, c: c.clone() }, q)
            .unwrap()
            .translated(&w0);
        let beta0 = crate::families::family_ttrr(&spec, 1).unwrap().beta(0).unwrap().clone();
        let pi = Polynomial::linear(c.clone() - &w0, ri(1));
        let cfg = CoherenceConfig::new(0, 1, 0, pi).unwrap();
        let t = structure_coeffs(&spec, &spec, &cfg, 6, &qp).unwrap();
        assert_eq!(t.c(0, 0).unwrap(), c.clone() + &beta0 - &w0);
        // self-coherence with pi = x - w0 + c' needs c' = -ab / (q c)
        let cc = -(r(1, 5) * &ri(2)) / &(qp.q().clone() * &c);
        let cfg = CoherenceConfig::new(0, 1, 0, Polynomial::linear(cc - &w0, ri(1))).unwrap();
        let t = structure_coeffs(&spec, &spec, &cfg, 6, &qp).unwrap();
        assert!(t.is_coherent());
    }

    #[test]
    fn unrelated_families_flagged() {
        let qp = QParams::new(r(1, 2), ri(0)).unwrap();
        let p = FamilySpec::plain(FamilyKind::L { a: ri(2), b: ri(3), c: ri(0) }, r(1, 2)).unwrap();
        let q = FamilySpec::plain(FamilyKind::J { a: ri(1), b: ri(5), c: ri(3), d: r(1, 7) }, r(1, 2)).unwrap();
        let cfg = CoherenceConfig::new(0, 1, 0, Polynomial::one()).unwrap();
        let t = structure_coeffs(&p, &q, &cfg, 5, &qp).unwrap();
        assert!(!t.is_coherent());
        let bad = t.first_violation().unwrap();
        assert!(!t.below_band_zero(bad));
    }
}
