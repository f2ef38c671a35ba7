//! Coherent pairs: the polynomial constructions attached to a structure
//! relation and the functional equations they satisfy.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{det_fraction_free, Domain, Polynomial, Scalar};
use crate::families::{
    family_ttrr, moments_from_ttrr, structure_coeffs_from, ttrr_generate, FamilySpec, StructureTable,
};
use crate::functionals::{Agreement, Direction, MomentFunctional, SemiclassicalWitness};
use crate::qcalc::{hahn_diff, hahn_power, shift, shift_power, QParams, QSymbolCache};

use crate::{Error, Result};

/// Shape of the structure relation
/// `pi_N P_n^{[m]} = sum_{j=n-M}^{n+N} c_{n,j} Q_j^{[k]}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoherenceConfig<S: Scalar> {
    index: usize,
    m: usize,
    k: usize,
    pi: Polynomial<S>,
}

impl<S: Scalar> CoherenceConfig<S> {
    /// `index` is `M`; `N` is read off `deg pi`, which must be monic.
    pub fn new(index: usize, m: usize, k: usize, pi: Polynomial<S>) -> Result<Self> {
        if !pi.is_monic() {
            return Err(Error::InvalidParams(format!("pi_N = {pi} must be monic")));
        }
        Ok(CoherenceConfig { index, m, k, pi })
    }

    /// `M`
    pub fn index(&self) -> usize {
        self.index
    }

    /// `N = deg pi`
    pub fn n(&self) -> usize {
        self.pi.degree().unwrap_or(0)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn pi(&self) -> &Polynomial<S> {
        &self.pi
    }
}

/// Two OPS with their functionals, norms and structure table, truncated to
/// what the constructions below need.
#[derive(Clone, Debug)]
pub struct CoherentPair<S: Scalar> {
    pub config: CoherenceConfig<S>,
    pub qp: QParams<S>,
    pub p: Vec<Polynomial<S>>,
    pub q: Vec<Polynomial<S>>,
    pub u: MomentFunctional<S>,
    pub v: MomentFunctional<S>,
    /// `<u, P_j^2>`
    pub u_norms: Vec<S>,
    /// `<v, Q_j^2>`
    pub v_norms: Vec<S>,
    pub table: StructureTable<S>,
}

impl<S: Scalar> CoherentPair<S> {
    /// Builds everything needed for rows `n = 0 .. rows`; `u` and `v` carry
    /// moments up to `order`.
    pub fn from_families(
        p_spec: &FamilySpec<S>,
        q_spec: &FamilySpec<S>,
        config: CoherenceConfig<S>,
        rows: usize,
        order: usize,
        qp: QParams<S>,
    ) -> Result<Self> {
        let (big_m, big_n) = (config.index(), config.n());
        let top = rows + big_m + big_n + config.m() + config.k();
        let coeff_depth = top.max(order / 2 + 1);
        let pt = family_ttrr(p_spec, coeff_depth)?;
        let qt = family_ttrr(q_spec, coeff_depth)?;
        let p = ttrr_generate(&pt, top)?;
        let q = ttrr_generate(&qt, top)?;
        let u = moments_from_ttrr(&pt, order)?;
        let v = moments_from_ttrr(&qt, order)?;
        let u_norms = (0..=top).map(|i| pt.norm(i)).collect::<Result<_>>()?;
        let v_norms = (0..=top).map(|i| qt.norm(i)).collect::<Result<_>>()?;
        let table = structure_coeffs_from(&p, &q, &config, rows + big_m, &qp)?;
        Ok(CoherentPair {
            config,
            qp,
            p,
            q,
            u,
            v,
            u_norms,
            v_norms,
            table,
        })
    }

    /// Pair from explicit data. Norms are obtained by acting with `u` and
    /// `v`, as far as their moments reach.
    pub fn from_parts(
        p: Vec<Polynomial<S>>,
        q: Vec<Polynomial<S>>,
        u: MomentFunctional<S>,
        v: MomentFunctional<S>,
        config: CoherenceConfig<S>,
        rows: usize,
        qp: QParams<S>,
    ) -> Result<Self> {
        let norms = |seq: &[Polynomial<S>], w: &MomentFunctional<S>| -> Result<Vec<S>> {
            seq.iter()
                .take_while(|f| 2 * f.degree().unwrap_or(0) <= w.order())
                .map(|f| w.act(&(f * f)))
                .collect()
        };
        let u_norms = norms(&p, &u)?;
        let v_norms = norms(&q, &v)?;
        let table = structure_coeffs_from(&p, &q, &config, rows + config.index(), &qp)?;
        Ok(CoherentPair {
            config,
            qp,
            p,
            q,
            u,
            v,
            u_norms,
            v_norms,
            table,
        })
    }
}

fn norm_at<S: Scalar>(norms: &[S], i: usize, what: &str) -> Result<S> {
    let v = norms
        .get(i)
        .ok_or_else(|| Error::MissingData(format!("{what} norm {i} not available")))?;
    if v.is_zero() {
        return Err(Error::MissingData(format!("{what} norm {i} vanishes")));
    }
    Ok(v.clone())
}

fn poly_at<'a, S: Scalar>(seq: &'a [Polynomial<S>], i: usize, what: &str) -> Result<&'a Polynomial<S>> {
    seq.get(i)
        .ok_or_else(|| Error::MissingData(format!("{what}_{i} not generated")))
}

/// `(-q)^m [j+m]_q! / [j]_q!`
fn derivative_factor<S: Scalar>(q: &S, j: usize, m: usize) -> Result<S> {
    let cache = QSymbolCache::new(q.clone(), j + m);
    Ok((-q.clone()).powi(m as i64) * &cache.factorial_ratio(j + m, j)?)
}

/// `psi(x; n) = sum_{j=n-N}^{n+M} (-q)^m [j+m]!/[j]! c_{j,n} / <u, P_{m+j}^2> P_{m+j}(x)`.
pub fn build_psi<S: Scalar>(
    config: &CoherenceConfig<S>,
    table: &StructureTable<S>,
    u_norms: &[S],
    p: &[Polynomial<S>],
    qp: &QParams<S>,
    n: usize,
) -> Result<Polynomial<S>> {
    let m = config.m();
    let lo = n.saturating_sub(config.n());
    let hi = n + config.index();
    let mut out = Polynomial::zero();
    for j in lo..=hi {
        let c = table.c(j, n as i64)?;
        if c.is_zero() {
            continue;
        }
        let f = derivative_factor(qp.q(), j, m)? * &c / &norm_at(u_norms, m + j, "u")?;
        out = &out + &poly_at(p, m + j, "P")?.scale(&f);
    }
    Ok(out)
}

/// `phi(x; n, j)` with `q^{-1}`-binomials `[k+N, l] [N-l, N-j-l]` and
/// factors `L^{k+N-l}(D^l pi) L^j(D^{N-j-l} Q_{n+k})`, all operators taken
/// with parameters `(1/q, -w/q)`.
pub fn build_phi<S: Scalar>(
    config: &CoherenceConfig<S>,
    q_seq: &[Polynomial<S>],
    v_norms: &[S],
    qp: &QParams<S>,
    n: usize,
    j: usize,
) -> Result<Polynomial<S>> {
    build_phi_reading(config, q_seq, v_norms, qp, n, j, PhiBinomialTop::KPlusBigN)
}

/// Top index of the first binomial in `phi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiBinomialTop {
    /// `[k+N, l]`, the coefficient produced by expanding `D^{k+N}(pi b)`.
    KPlusBigN,
    /// `[k+n, l]`
    KPlusN,
}

/// [`build_phi`] with an explicit choice of the first binomial's top index.
pub fn build_phi_reading<S: Scalar>(
    config: &CoherenceConfig<S>,
    q_seq: &[Polynomial<S>],
    v_norms: &[S],
    qp: &QParams<S>,
    n: usize,
    j: usize,
    top: PhiBinomialTop,
) -> Result<Polynomial<S>> {
    let (k, big_n) = (config.k(), config.n());
    if j > big_n {
        return Err(Error::IndexOutOfRange(format!("phi(x; n, {j}) needs j <= N = {big_n}")));
    }
    let inv = qp.inverse();
    let qi = inv.q().clone();
    let first_top = match top {
        PhiBinomialTop::KPlusBigN => k + big_n,
        PhiBinomialTop::KPlusN => k + n,
    };
    let cache = QSymbolCache::new(qi, first_top.max(big_n));
    let qnk = poly_at(q_seq, n + k, "Q")?;
    let mut sum = Polynomial::zero();
    for l in 0..=big_n - j {
        let b1 = if l <= first_top {
            cache.binomial(first_top as i64, l as i64)?
        } else {
            S::zero()
        };
        let b2 = cache.binomial((big_n - l) as i64, (big_n - j - l) as i64)?;
        let coef = b1 * &b2;
        if coef.is_zero() {
            continue;
        }
        let left = shift_power(&hahn_power(config.pi(), l, &inv)?, k + big_n - l, &inv);
        let right = shift_power(&hahn_power(qnk, big_n - j - l, &inv)?, j, &inv);
        sum = &sum + &(&left * &right).scale(&coef);
    }
    let f = derivative_factor(qp.q(), n, k)? / &norm_at(v_norms, n + k, "v")?;
    Ok(sum.scale(&f))
}

/// `varphi(x; n, i) = sum_{j+l=i} [m-k-N, j] L^j(D^{m-k-N-j} phi(x; n, l))`
/// over `0 <= j <= m-k-N`, `0 <= l <= N`.
pub fn build_varphi<S: Scalar>(
    config: &CoherenceConfig<S>,
    phi_row: &[Polynomial<S>],
    qp: &QParams<S>,
    i: usize,
) -> Result<Polynomial<S>> {
    let (m, k, big_n) = (config.m(), config.k(), config.n());
    let span = m
        .checked_sub(k + big_n)
        .ok_or_else(|| Error::InvalidParams("varphi needs m >= k + N".into()))?;
    let inv = qp.inverse();
    let cache = QSymbolCache::new(inv.q().clone(), span);
    let mut out = Polynomial::zero();
    for j in 0..=span.min(i) {
        let l = i - j;
        if l > big_n {
            continue;
        }
        let phi = phi_row
            .get(l)
            .ok_or_else(|| Error::MissingData(format!("phi(x; n, {l})")))?;
        let term = shift_power(&hahn_power(phi, span - j, &inv)?, j, &inv);
        out = &out + &term.scale(&cache.binomial(span as i64, j as i64)?);
    }
    Ok(out)
}

/// `xi(x; n, j) = [k+N-m, j] L^j(D^{k+N-m-j} psi(x; n))`.
pub fn build_xi<S: Scalar>(
    config: &CoherenceConfig<S>,
    psi_n: &Polynomial<S>,
    qp: &QParams<S>,
    j: usize,
) -> Result<Polynomial<S>> {
    let span = (config.k() + config.n())
        .checked_sub(config.m())
        .filter(|s| *s > 0)
        .ok_or_else(|| Error::InvalidParams("xi needs m < k + N".into()))?;
    if j > span {
        return Err(Error::IndexOutOfRange(format!("xi(x; n, {j}) needs j <= {span}")));
    }
    let inv = qp.inverse();
    let cache = QSymbolCache::new(inv.q().clone(), span);
    Ok(shift_power(&hahn_power(psi_n, span - j, &inv)?, j, &inv)
        .scale(&cache.binomial(span as i64, j as i64)?))
}

fn determinant<S>(rows: &[Vec<Polynomial<S>>]) -> Polynomial<S>
where
    S: Scalar,
    Polynomial<S>: Domain,
{
    det_fraction_free(rows)
}

fn replace_column<S: Scalar>(
    matrix: &[Vec<Polynomial<S>>],
    col: usize,
    with: &[Polynomial<S>],
) -> Vec<Vec<Polynomial<S>>> {
    matrix
        .iter()
        .zip(with)
        .map(|(row, w)| {
            let mut r = row.clone();
            r[col] = w.clone();
            r
        })
        .collect()
}

/// `A`, `A_1`, `A_2` of the case `m >= k + N`.
#[derive(Clone, Debug, PartialEq)]
pub struct ADeterminants<S: Scalar> {
    pub matrix: Vec<Vec<Polynomial<S>>>,
    pub a: Polynomial<S>,
    pub a1: Polynomial<S>,
    pub a2: Polynomial<S>,
}

/// `B`, `B_1`, `B_2`, `B_{N+2}` of the case `m < k + N`.
#[derive(Clone, Debug, PartialEq)]
pub struct BDeterminants<S: Scalar> {
    pub matrix: Vec<Vec<Polynomial<S>>>,
    pub b: Polynomial<S>,
    pub b1: Polynomial<S>,
    pub b2: Polynomial<S>,
    pub b_n2: Polynomial<S>,
    /// `N`; with `N = 0` column 2 already belongs to `D u`.
    pub big_n: usize,
}

/// All polynomial constructions attached to a coherent pair.
#[derive(Clone, Debug)]
pub struct CoherenceSystem<S: Scalar> {
    /// `psi(x; n)` for `n = 0 .. rows`
    pub psi: Vec<Polynomial<S>>,
    /// `phi(x; n, j)`, `j = 0 .. N`
    pub phi: Vec<Vec<Polynomial<S>>>,
    /// `varphi(x; n, i)`, `i = 0 .. m-k`; empty unless `m >= k + N`
    pub varphi: Vec<Vec<Polynomial<S>>>,
    /// `xi(x; n, j)`, `j = 0 .. k+N-m`; empty unless `m < k + N`
    pub xi: Vec<Vec<Polynomial<S>>>,
    /// `Phi(x; j)`, `j = 0 .. m`; empty unless `k = 0` and `m >= 1`
    pub big_phi: Vec<Polynomial<S>>,
}

impl<S: Scalar> CoherenceSystem<S> {
    /// Constructs every table for `n = 0 .. rows`.
    pub fn build(pair: &CoherentPair<S>, rows: usize) -> Result<Self> {
        let cfg = &pair.config;
        let psi: Vec<_> = (0..=rows)
            .map(|n| build_psi(cfg, &pair.table, &pair.u_norms, &pair.p, &pair.qp, n))
            .collect::<Result<_>>()?;
        let phi: Vec<Vec<_>> = (0..=rows)
            .map(|n| {
                (0..=cfg.n())
                    .map(|j| build_phi(cfg, &pair.q, &pair.v_norms, &pair.qp, n, j))
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        let (m, k, big_n) = (cfg.m(), cfg.k(), cfg.n());
        let varphi = if m >= k + big_n {
            phi.iter()
                .map(|row| (0..=m - k).map(|i| build_varphi(cfg, row, &pair.qp, i)).collect())
                .collect::<Result<_>>()?
        } else {
            Vec::new()
        };
        let xi = if m < k + big_n {
            psi.iter()
                .map(|p| (0..=k + big_n - m).map(|j| build_xi(cfg, p, &pair.qp, j)).collect())
                .collect::<Result<_>>()?
        } else {
            Vec::new()
        };
        let big_phi = if k == 0 && m >= 1 {
            build_phi_chain(cfg, &pair.q, &pair.v_norms, &psi, &pair.qp)?
        } else {
            Vec::new()
        };
        Ok(CoherenceSystem {
            psi,
            phi,
            varphi,
            xi,
            big_phi,
        })
    }

    /// `deg psi(.; n) = m + n + M` and `deg phi(.; n, j) = k + n + j` on every
    /// constructed cell.
    pub fn check_degree_claims(&self, config: &CoherenceConfig<S>) -> Result<()> {
        let (m, k, big_m) = (config.m(), config.k(), config.index());
        for (n, p) in self.psi.iter().enumerate() {
            if p.degree() != Some(m + n + big_m) {
                return Err(Error::DegreeClaimViolated(format!(
                    "deg psi(.; {n}) = {:?}, expected {}",
                    p.degree(),
                    m + n + big_m
                )));
            }
        }
        for (n, row) in self.phi.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                if p.degree() != Some(k + n + j) {
                    return Err(Error::DegreeClaimViolated(format!(
                        "deg phi(.; {n}, {j}) = {:?}, expected {}",
                        p.degree(),
                        k + n + j
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The determinants of the case `m >= k + N`; `DegenerateSystem` when
/// `A` vanishes identically.
pub fn build_varphi_and_a<S>(config: &CoherenceConfig<S>, system: &CoherenceSystem<S>) -> Result<ADeterminants<S>>
where
    S: Scalar,
    Polynomial<S>: Domain,
{
    let (m, k, big_n) = (config.m(), config.k(), config.n());
    if m < k + big_n || (big_n == 0 && m == k) {
        return Err(Error::InvalidParams("A needs m >= k + N, and m > k when N = 0".into()));
    }
    let size = m - k + 1;
    if system.varphi.len() < size || system.psi.len() < size {
        return Err(Error::MissingData(format!("A needs {size} rows of varphi and psi")));
    }
    let matrix: Vec<Vec<Polynomial<S>>> = system.varphi[..size]
        .iter()
        .map(|row| row[..size].to_vec())
        .collect();
    let col = &system.psi[..size];
    let a = determinant(&matrix);
    if a.is_zero() {
        return Err(Error::DegenerateSystem("A vanishes identically".into()));
    }
    let a1 = determinant(&replace_column(&matrix, 0, col));
    let a2 = determinant(&replace_column(&matrix, 1, col));
    Ok(ADeterminants { matrix, a, a1, a2 })
}

/// The determinants of the case `m < k + N`; `DegenerateSystem` when `B`
/// vanishes identically.
pub fn build_xi_and_b<S>(config: &CoherenceConfig<S>, system: &CoherenceSystem<S>) -> Result<BDeterminants<S>>
where
    S: Scalar,
    Polynomial<S>: Domain,
{
    let (m, k, big_n) = (config.m(), config.k(), config.n());
    if m >= k + big_n {
        return Err(Error::InvalidParams("B needs m < k + N".into()));
    }
    let size = k + 2 * big_n - m + 1;
    if system.xi.len() < size || system.phi.len() < size {
        return Err(Error::MissingData(format!("B needs {size} rows of phi and xi")));
    }
    let matrix: Vec<Vec<Polynomial<S>>> = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    if j <= big_n {
                        system.phi[i][j].clone()
                    } else {
                        -system.xi[i][j - big_n].clone()
                    }
                })
                .collect()
        })
        .collect();
    let col: Vec<Polynomial<S>> = (0..size).map(|i| system.xi[i][0].clone()).collect();
    let b = determinant(&matrix);
    if b.is_zero() {
        return Err(Error::DegenerateSystem("B vanishes identically".into()));
    }
    let b1 = determinant(&replace_column(&matrix, 0, &col));
    let b2 = determinant(&replace_column(&matrix, 1, &col));
    let b_n2 = determinant(&replace_column(&matrix, big_n + 1, &col));
    Ok(BDeterminants {
        matrix,
        b,
        b1,
        b2,
        b_n2,
        big_n,
    })
}

/// `Phi(x; j)` for `j = 0 .. m` (case `k = 0`), with the degree claims
/// `deg Phi(.; 0) = M + m` and `deg Phi(.; j) <= M + m + j` enforced.
pub fn build_phi_chain<S: Scalar>(
    config: &CoherenceConfig<S>,
    q_seq: &[Polynomial<S>],
    v_norms: &[S],
    psi: &[Polynomial<S>],
    qp: &QParams<S>,
) -> Result<Vec<Polynomial<S>>> {
    let (m, big_m) = (config.m(), config.index());
    if config.k() != 0 {
        return Err(Error::InvalidParams("the Phi chain needs k = 0".into()));
    }
    if config.n() == 0 && m == 0 {
        return Err(Error::InvalidParams("the Phi chain needs m >= 1 when N = 0".into()));
    }
    let inv = qp.inverse();
    let cache = QSymbolCache::new(inv.q().clone(), m);
    let mut chain: Vec<Polynomial<S>> = Vec::with_capacity(m + 1);
    for j in 0..=m {
        let psi_j = psi
            .get(j)
            .ok_or_else(|| Error::MissingData(format!("psi(x; {j})")))?;
        let mut num = psi_j.scale(&norm_at(v_norms, j, "v")?);
        let qj = poly_at(q_seq, j, "Q")?;
        for (l, phi_l) in chain.iter().enumerate() {
            let t = shift_power(&hahn_power(qj, l, &inv)?, m - l, &inv);
            num = &num - &(&t * phi_l).scale(&cache.binomial(m as i64, l as i64)?);
        }
        let den = cache.factorial(j)?.clone() * &cache.binomial(m as i64, j as i64)?;
        let phi_j = num.scale(&den.inv());
        let deg = phi_j.degree();
        let ok = if j == 0 {
            deg == Some(big_m + m)
        } else {
            deg.is_none_or(|d| d <= big_m + m + j)
        };
        if !ok {
            return Err(Error::DegreeClaimViolated(format!(
                "deg Phi(.; {j}) = {deg:?} with M + m = {}",
                big_m + m
            )));
        }
        chain.push(phi_j);
    }
    Ok(chain)
}

// ---------------------------------------------------------------------------
// Verification on moments.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Holds,
    Fails,
    /// The identity is vacuous or its hypotheses fail (zero functional,
    /// vanishing determinant).
    Degenerate,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Degenerate => "degenerate",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub identity: String,
    pub status: Status,
    /// Highest moment index compared.
    pub order_checked: usize,
    /// First moment index where the two sides differ.
    pub first_failure: Option<usize>,
}

impl VerificationReport {
    pub fn compare<S: Scalar>(identity: impl Into<String>, lhs: &MomentFunctional<S>, rhs: &MomentFunctional<S>) -> Self {
        let order = lhs.order().min(rhs.order());
        let (status, first_failure) = match lhs.agree(rhs) {
            Agreement::HoldsToOrder(_) => (Status::Holds, None),
            Agreement::FailsAt(i) => (Status::Fails, Some(i)),
        };
        VerificationReport {
            identity: identity.into(),
            status,
            order_checked: order,
            first_failure,
        }
    }

    pub fn degenerate(identity: impl Into<String>, order_checked: usize) -> Self {
        VerificationReport {
            identity: identity.into(),
            status: Status::Degenerate,
            order_checked,
            first_failure: None,
        }
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }
}

fn d_inv_power<S: Scalar>(w: &MomentFunctional<S>, n: usize, qp: &QParams<S>) -> Result<MomentFunctional<S>> {
    w.diff_power(n, &qp.inverse())
}

/// `sum_j phi(.; n, j) D^j v`, all with parameters `(1/q, -w/q)`.
fn phi_combination<S: Scalar>(
    phi_row: &[Polynomial<S>],
    v: &MomentFunctional<S>,
    qp: &QParams<S>,
) -> Result<MomentFunctional<S>> {
    let mut acc: Option<MomentFunctional<S>> = None;
    let mut dv = v.clone();
    for (j, phi) in phi_row.iter().enumerate() {
        if j > 0 {
            dv = dv.diff(&qp.inverse())?;
        }
        let term = dv.left_mult(phi)?;
        acc = Some(match acc {
            Some(a) => a.add(&term),
            None => term,
        });
    }
    acc.ok_or_else(|| Error::MissingData("empty phi row".into()))
}

/// The functional equation linking `psi(.; n) u` and `phi(.; n, j) D^j v`:
/// `psi u = D^{m-k-N}(sum phi D^j v)` when `m >= k + N`, otherwise
/// `D^{k+N-m}(psi u) = sum phi D^j v`.
pub fn verify_lemma21<S: Scalar>(
    pair: &CoherentPair<S>,
    system: &CoherenceSystem<S>,
    n_range: core::ops::RangeInclusive<usize>,
) -> Result<Vec<VerificationReport>> {
    let cfg = &pair.config;
    let (m, k, big_n) = (cfg.m(), cfg.k(), cfg.n());
    let mut out = Vec::new();
    for n in n_range {
        let psi = system
            .psi
            .get(n)
            .ok_or_else(|| Error::MissingData(format!("psi(x; {n})")))?;
        let phi_row = system
            .phi
            .get(n)
            .ok_or_else(|| Error::MissingData(format!("phi(x; {n}, .)")))?;
        let sum = phi_combination(phi_row, &pair.v, &pair.qp)?;
        let psi_u = pair.u.left_mult(psi)?;
        let report = if m >= k + big_n {
            let rhs = d_inv_power(&sum, m - k - big_n, &pair.qp)?;
            VerificationReport::compare(format!("psi-u n={n}"), &psi_u, &rhs)
        } else {
            let lhs = d_inv_power(&psi_u, k + big_n - m, &pair.qp)?;
            VerificationReport::compare(format!("psi-phi n={n}"), &lhs, &sum)
        };
        out.push(report);
    }
    Ok(out)
}

/// `A v = A_1 u`, `A D v = A_2 u`, and the two Pearson-type equations derived
/// from them.
pub fn verify_thm22<S: Scalar>(
    u: &MomentFunctional<S>,
    v: &MomentFunctional<S>,
    dets: &ADeterminants<S>,
    qp: &QParams<S>,
) -> Result<Vec<VerificationReport>> {
    let inv = qp.inverse();
    let (a, a1, a2) = (&dets.a, &dets.a1, &dets.a2);
    let dv = v.diff(&inv)?;
    let mut out = alloc::vec![
        VerificationReport::compare("A v = A1 u", &v.left_mult(a)?, &u.left_mult(a1)?),
        VerificationReport::compare("A Dv = A2 u", &dv.left_mult(a)?, &u.left_mult(a2)?),
    ];
    // D(A1 L(A) u) = (q A1 D_q A + A1 D A + A2 L_{1/q} A) u
    let lhs = u.left_mult(&(a1 * &shift(a, qp)))?.diff(&inv)?;
    let coeff = &(&(a1 * &hahn_diff(a, qp)?).scale(qp.q()) + &(a1 * &hahn_diff(a, &inv)?))
        + &(a2 * &shift(a, &inv));
    out.push(VerificationReport::compare("D(A1 L(A) u) = (...) u", &lhs, &u.left_mult(&coeff)?));
    // D(L(A A1) v) = (q D_q(A A1) + A A2) v
    let aa1 = a * a1;
    let lhs = v.left_mult(&shift(&aa1, qp))?.diff(&inv)?;
    let coeff = &hahn_diff(&aa1, qp)?.scale(qp.q()) + &(a * a2);
    out.push(VerificationReport::compare("D(L(A A1) v) = (...) v", &lhs, &v.left_mult(&coeff)?));
    Ok(out)
}

/// `B v = B_1 u`, `B D v = B_2 u`, `B D u = B_{N+2} u` and the two derived
/// Pearson-type equations.
pub fn verify_thm23<S: Scalar>(
    u: &MomentFunctional<S>,
    v: &MomentFunctional<S>,
    dets: &BDeterminants<S>,
    qp: &QParams<S>,
) -> Result<Vec<VerificationReport>> {
    let names = [
        "B v = B1 u",
        "B Dv = B2 u",
        "B Du = B_{N+2} u",
        "D(L(B B1) v) = (...) v",
        "D(L(B) u) = (...) u",
    ];
    if u.is_zero() || v.is_zero() {
        let order = u.order().min(v.order());
        return Ok(names.iter().map(|n| VerificationReport::degenerate(*n, order)).collect());
    }
    let inv = qp.inverse();
    let (b, b1, b2, bn2) = (&dets.b, &dets.b1, &dets.b2, &dets.b_n2);
    let du = u.diff(&inv)?;
    let mut out = alloc::vec![VerificationReport::compare(names[0], &v.left_mult(b)?, &u.left_mult(b1)?)];
    let order = u.order().min(v.order());
    if dets.big_n == 0 {
        out.push(VerificationReport::degenerate(names[1], order));
    } else {
        let dv = v.diff(&inv)?;
        out.push(VerificationReport::compare(names[1], &dv.left_mult(b)?, &u.left_mult(b2)?));
    }
    out.push(VerificationReport::compare(names[2], &du.left_mult(b)?, &u.left_mult(bn2)?));
    if dets.big_n == 0 {
        out.push(VerificationReport::degenerate(names[3], order));
    } else {
        let bb1 = b * b1;
        let lhs = v.left_mult(&shift(&bb1, qp))?.diff(&inv)?;
        let coeff = &hahn_diff(&bb1, qp)?.scale(qp.q()) + &(b * b2);
        out.push(VerificationReport::compare(names[3], &lhs, &v.left_mult(&coeff)?));
    }
    let lhs = u.left_mult(&shift(b, qp))?.diff(&inv)?;
    let coeff = &hahn_diff(b, qp)?.scale(qp.q()) + bn2;
    out.push(VerificationReport::compare(names[4], &lhs, &u.left_mult(&coeff)?));
    Ok(out)
}

/// Outcome of the case `k = 0`: the three functional equations and the
/// Pearson witnesses they provide for `u` and `v`.
#[derive(Clone, Debug)]
pub struct Thm24Report<S: Scalar> {
    pub reports: Vec<VerificationReport>,
    /// `D(Phi(.;1) u) = Phi(.;0) u`
    pub u_witness: Option<SemiclassicalWitness<S>>,
    /// `D(L(Phi(.;m)) pi v) = (q D_q Phi(.;m) + Phi(.;m-1)) pi v`
    pub v_witness: Option<SemiclassicalWitness<S>>,
    /// `M + m - 1`
    pub u_class_limit: usize,
    /// `N + M + 2(m - 1)`
    pub v_class_limit: usize,
}

impl<S: Scalar> Thm24Report<S> {
    /// Class bounds of the constructed witnesses respect the limits.
    pub fn class_bounds_hold(&self) -> bool {
        let ok = |w: &Option<SemiclassicalWitness<S>>, lim| w.as_ref().is_none_or(|w| w.class_bound() <= lim);
        ok(&self.u_witness, self.u_class_limit) && ok(&self.v_witness, self.v_class_limit)
    }
}

pub fn verify_thm24<S: Scalar>(
    u: &MomentFunctional<S>,
    v: &MomentFunctional<S>,
    config: &CoherenceConfig<S>,
    big_phi: &[Polynomial<S>],
    qp: &QParams<S>,
) -> Result<Thm24Report<S>> {
    let m = config.m();
    if big_phi.len() != m + 1 || m == 0 {
        return Err(Error::MissingData(format!("Phi chain of length {} for m = {m}", big_phi.len())));
    }
    let inv = qp.inverse();
    let pi = config.pi();
    let pi_v = v.left_mult(pi)?;
    let (phi0, phi1, phi_m, phi_m1) = (&big_phi[0], &big_phi[1], &big_phi[m], &big_phi[m - 1]);
    let mut reports = alloc::vec![VerificationReport::compare(
        "D(Phi1 u) = Phi0 u",
        &u.left_mult(phi1)?.diff(&inv)?,
        &u.left_mult(phi0)?,
    )];
    reports.push(VerificationReport::compare("pi v = Phi_m u", &pi_v, &u.left_mult(phi_m)?));
    let l_phi = shift(phi_m, qp);
    let coeff = &hahn_diff(phi_m, qp)?.scale(qp.q()) + phi_m1;
    reports.push(VerificationReport::compare(
        "D(L(Phi_m) pi v) = (q D_q Phi_m + Phi_{m-1}) pi v",
        &pi_v.left_mult(&l_phi)?.diff(&inv)?,
        &pi_v.left_mult(&coeff)?,
    ));
    let u_witness = SemiclassicalWitness::new(phi1.clone(), phi0.clone(), Direction::Backward).ok();
    let v_witness =
        SemiclassicalWitness::new(&l_phi * pi, &coeff * pi, Direction::Backward).ok();
    Ok(Thm24Report {
        reports,
        u_witness,
        v_witness,
        u_class_limit: (config.index() + m).saturating_sub(1),
        v_class_limit: config.n() + config.index() + 2 * (m - 1),
    })
}

/// Direct evaluation of `D^m(Q_n pi v)` against `<v, Q_n^2> psi(.; n) u`
/// (case `k = 0`).
pub fn k_zero_oracle<S: Scalar>(pair: &CoherentPair<S>, psi_n: &Polynomial<S>, n: usize) -> Result<VerificationReport> {
    let cfg = &pair.config;
    let qn = poly_at(&pair.q, n, "Q")?;
    let lhs = d_inv_power(&pair.v.left_mult(&(qn * cfg.pi()))?, cfg.m(), &pair.qp)?;
    let rhs = pair.u.left_mult(&psi_n.scale(&norm_at(&pair.v_norms, n, "v")?))?;
    Ok(VerificationReport::compare(format!("D^m(Q_n pi v) = |Q_n|^2 psi u, n={n}"), &lhs, &rhs))
}

/// Direct evaluation of `D^{k+N}(pi b_n)` with `b_n = Q_n v / <v, Q_n^2>`
/// (case `k = 0`) against `sum_j phi(.; n, j) D^j v`.
pub fn phi_oracle<S: Scalar>(pair: &CoherentPair<S>, phi_row: &[Polynomial<S>], n: usize) -> Result<VerificationReport> {
    let cfg = &pair.config;
    if cfg.k() != 0 {
        return Err(Error::InvalidParams("the phi oracle is stated for k = 0".into()));
    }
    let qn = poly_at(&pair.q, n, "Q")?;
    let b = pair
        .v
        .left_mult(&qn.scale(&norm_at(&pair.v_norms, n, "v")?.inv()))?;
    let lhs = d_inv_power(&b.left_mult(cfg.pi())?, cfg.n(), &pair.qp)?;
    let rhs = phi_combination(phi_row, &pair.v, &pair.qp)?;
    Ok(VerificationReport::compare(format!("D^N(pi b_n) = sum phi D^j v, n={n}"), &lhs, &rhs))
}
