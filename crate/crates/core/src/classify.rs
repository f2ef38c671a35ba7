//! Recurrence coefficients from a Pearson equation with `deg phi <= 2`,
//! `deg psi = 1`, and the constructive classification of monic OPS with
//! `pi_N D P_{n+1} = [n+1] sum_{j=n}^{n+N} c_{n,j} P_j`, `N <= 2`.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{Polynomial, Rational, Scalar};
use crate::families::{family_ttrr, FamilyKind, FamilySpec, TTRRCoeffs};
use crate::qcalc::{QParams, QSymbolCache};
use crate::{Error, Result};

/// `d_n`, `e_n` and the recurrence they determine.
#[derive(Clone, Debug, PartialEq)]
pub struct PearsonTTRR<S> {
    pub phi: [S; 3],
    pub psi: [S; 2],
    /// `d_0 .. d_{2 n_max}`
    pub d: Vec<S>,
    /// `e_0 .. e_{n_max}`
    pub e: Vec<S>,
    pub ttrr: TTRRCoeffs<S>,
}

/// Recurrence of the monic OPS for `D_{1/q,-w/q}(phi u) = psi u`, up to
/// `beta_{n_max}` and `gamma_{n_max}`.
pub fn pearson_ttrr<S: Scalar>(
    phi: &Polynomial<S>,
    psi: &Polynomial<S>,
    qp: &QParams<S>,
    n_max: usize,
) -> Result<PearsonTTRR<S>> {
    if phi.is_zero() || phi.degree().unwrap_or(0) > 2 {
        return Err(Error::InvalidParams(format!("phi = {phi} must be non-zero of degree <= 2")));
    }
    if psi.degree() != Some(1) {
        return Err(Error::DegreeMismatch {
            expected: 1,
            found: psi.degree().unwrap_or(0),
        });
    }
    let (a1, a2) = (phi.coeff(1), phi.coeff(2));
    let (b0, b1) = (psi.coeff(0), psi.coeff(1));
    let qi = qp.q().inv();
    let top = 2 * n_max + 1;
    let br = QSymbolCache::new(qi.clone(), top + 1);
    let d: Vec<S> = (0..=top)
        .map(|n| Ok(b1.clone() * &qi.powi(n as i64) + &(a2.clone() * br.bracket(n)?)))
        .collect::<Result<_>>()?;
    if let Some(n) = d.iter().position(Scalar::is_zero) {
        return Err(Error::RegularityViolation {
            condition: "d_n != 0".into(),
            index: n,
        });
    }
    let w_q = qp.omega().clone() * &qi;
    let e: Vec<S> = (0..=n_max)
        .map(|n| {
            let inner = a1.clone() - &(w_q.clone() * &d[n]);
            Ok(b0.clone() * &qi.powi(n as i64) + &(inner * br.bracket(n)?))
        })
        .collect::<Result<_>>()?;
    let x_n = |n: usize| -(e[n].clone() / &d[2 * n]);
    let mut beta = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let bn = br.bracket(n)?;
        let mut v = -(w_q.clone() * bn) - &(br.bracket(n + 1)?.clone() * &e[n] / &d[2 * n]);
        if n >= 1 {
            v = v + &(bn.clone() * &e[n - 1] / &d[2 * n - 2]);
        }
        beta.push(v);
    }
    let mut gamma = Vec::with_capacity(n_max);
    for n in 0..n_max {
        let at = phi.eval(&x_n(n));
        if at.is_zero() {
            return Err(Error::RegularityViolation {
                condition: "phi(-e_n / d_2n) != 0".into(),
                index: n,
            });
        }
        // d_{n-1} / d_{2n-1} is read as 1 at n = 0
        let ratio = if n == 0 {
            S::one()
        } else {
            d[n - 1].clone() / &d[2 * n - 1]
        };
        let g = -(qi.powi(n as i64) * br.bracket(n + 1)? * &ratio / &d[2 * n + 1] * &at);
        gamma.push(g);
    }
    Ok(PearsonTTRR {
        phi: [phi.coeff(0), a1, a2],
        psi: [b0, b1],
        d,
        e,
        ttrr: TTRRCoeffs::new(beta, gamma)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseLabel {
    I,
    II,
    IIIa,
    IIIb,
    /// Case III.b with `r = lambda = 0`.
    IIIbBessel,
}

impl CaseLabel {
    pub fn name(self) -> &'static str {
        match self {
            CaseLabel::I => "I",
            CaseLabel::II => "II",
            CaseLabel::IIIa => "IIIa",
            CaseLabel::IIIb => "IIIb",
            CaseLabel::IIIbBessel => "IIIb-bessel",
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Agreement of the recurrences produced along the way.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PostCheck {
    /// Family recurrence equals the Pearson recurrence; `None` when the
    /// family is only known implicitly.
    pub family_matches_pearson: Option<bool>,
    /// Predicted recurrence equals the Pearson recurrence.
    pub predicted_matches_pearson: bool,
}

impl PostCheck {
    pub fn passed(&self) -> bool {
        self.predicted_matches_pearson && self.family_matches_pearson != Some(false)
    }
}

/// Every intermediate quantity of the classification. `mu` is the quantity
/// `q(q + alpha(1 - q))` of Case III.b.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationTrace {
    pub case: CaseLabel,
    pub pi: Polynomial<Rational>,
    pub alpha: Rational,
    pub beta: Rational,
    /// Case II: `c` in `pi = x - w0 + c`; Case III.a: `(q - 1) beta + q (r + s)`.
    pub c: Option<Rational>,
    /// Roots of `pi` relative to `w0` (Case III), `r` first.
    pub r: Option<Rational>,
    pub s: Option<Rational>,
    pub lambda: Option<Rational>,
    pub mu: Option<Rational>,
    pub delta: Option<Rational>,
    pub roots: Option<(Rational, Rational)>,
    pub implicit: bool,
    family: Option<FamilySpec<Rational>>,
    pub psi: Polynomial<Rational>,
    pub pearson: PearsonTTRR<Rational>,
    pub predicted: TTRRCoeffs<Rational>,
    pub post_check: PostCheck,
}

impl ClassificationTrace {
    /// The recovered family; fails with `NonRationalRoot` when a square root
    /// left the rationals.
    pub fn family(&self) -> Result<&FamilySpec<Rational>> {
        self.family.as_ref().ok_or_else(|| {
            Error::NonRationalRoot(format!("case {} is only known in implicit form", self.case))
        })
    }
}

/// Roots of `z^2 - sum z + prod`, when rational, smaller first.
fn quadratic_roots(sum: &Rational, prod: &Rational) -> Option<(Rational, Rational)> {
    let disc = sum.clone() * sum - &(Rational::from_integer(4) * prod);
    let sq = disc.sqrt()?;
    let two = Rational::from_integer(2);
    Some(((sum.clone() - &sq) / &two, (sum.clone() + &sq) / &two))
}

fn degenerate(what: &str) -> Error {
    Error::DegenerateInput(what.into())
}

/// Classifies the monic OPS with first recurrence coefficients `beta0`,
/// `gamma1` satisfying the structure relation with the monic `pi`,
/// `deg pi <= 2`.
pub fn classify_self_coherent(
    pi: &Polynomial<Rational>,
    beta0: &Rational,
    gamma1: &Rational,
    qp: &QParams<Rational>,
    n_max: usize,
) -> Result<ClassificationTrace> {
    if gamma1.is_zero() {
        return Err(degenerate("gamma_1 = 0"));
    }
    if !pi.is_monic() || pi.degree().unwrap_or(0) > 2 {
        return Err(Error::InvalidParams(format!("pi = {pi} must be monic of degree <= 2")));
    }
    let q = qp.q().clone();
    let w0 = qp.omega0().clone();
    let one = Rational::one();
    let zero = Rational::zero;
    // pi(y + w0) = y^N + p1 y + p0
    let centred = crate::algebra::affine_substitute(pi, &one, &w0);
    let big_n = pi.degree().unwrap_or(0);
    let lead = if big_n == 2 { one.clone() } else { zero() };
    let alpha = -(q.clone() * &(lead * gamma1 + &pi.eval(beta0)) / gamma1);
    if alpha.is_zero() {
        return Err(degenerate(match big_n {
            1 => "c + beta_0 = w0",
            _ => "gamma_1 + pi(beta_0) = 0",
        }));
    }
    let beta = -(alpha.clone() * &(beta0.clone() - &w0));
    let psi = Polynomial::linear(beta.clone() - &(alpha.clone() * &w0), alpha.clone());
    let pearson = pearson_ttrr(pi, &psi, qp, n_max)?;

    let mut trace = ClassificationTrace {
        case: CaseLabel::I,
        pi: pi.clone(),
        alpha: alpha.clone(),
        beta: beta.clone(),
        c: None,
        r: None,
        s: None,
        lambda: None,
        mu: None,
        delta: None,
        roots: None,
        implicit: false,
        family: None,
        psi,
        predicted: pearson.ttrr.clone(),
        pearson,
        post_check: PostCheck {
            family_matches_pearson: None,
            predicted_matches_pearson: true,
        },
    };
    let l_family = |a: &Rational, b: &Rational, c: &Rational, base: &Rational| {
        FamilySpec::plain(FamilyKind::L { a: a.clone(), b: b.clone(), c: c.clone() }, base.clone())
            .map(|s| s.translated(&w0))
    };
    let j_family = |a: &Rational, b: &Rational, c: &Rational, d: &Rational, base: &Rational| {
        FamilySpec::plain(
            FamilyKind::J { a: a.clone(), b: b.clone(), c: c.clone(), d: d.clone() },
            base.clone(),
        )
        .map(|s| s.translated(&w0))
    };

    match big_n {
        0 => {
            // z^2 + (w0 - beta0) z + gamma1 / (q - 1)
            let sum = beta0.clone() - &w0;
            let prod = gamma1.clone() / &(q.clone() - &one);
            if let Some((a, b)) = quadratic_roots(&sum, &prod) {
                trace.family = Some(l_family(&a, &b, &zero(), &q)?);
                trace.roots = Some((a, b));
            }
        }
        1 => {
            trace.case = CaseLabel::II;
            let c = centred.coeff(0);
            // a + b = q + beta (1 - q), ab = c alpha q (1 - q)
            let sum = q.clone() + &(beta.clone() * &(one.clone() - &q));
            let prod = c.clone() * &alpha * &q * &(one.clone() - &q);
            let r = (alpha.clone() * &(q.clone() - &one)).inv();
            if let Some((a, b)) = quadratic_roots(&sum, &prod) {
                trace.family = Some(l_family(&(a.clone() * &r), &(b.clone() * &r), &r, &q)?);
                trace.roots = Some((a, b));
            }
            trace.r = Some(r);
            trace.c = Some(c);
        }
        _ => {
            let rs_sum = -centred.coeff(1);
            let rs_prod = centred.coeff(0);
            let rs = quadratic_roots(&rs_sum, &rs_prod).map(|(r, s)| if s.is_zero() { (s, r) } else { (r, s) });
            let qi = q.inv();
            if alpha == (one.clone() - &qi).inv() {
                trace.case = CaseLabel::IIIa;
                let c = (q.clone() - &one) * &beta + &(q.clone() * &rs_sum);
                if let Some((r, s)) = &rs {
                    trace.family = Some(l_family(r, s, &c, &qi)?);
                }
                trace.c = Some(c);
            } else {
                trace.case = CaseLabel::IIIb;
                let mu = q.clone() * &(q.clone() + &(alpha.clone() * &(one.clone() - &q)));
                for n in 0..=2 * n_max + 3 {
                    if mu == q.powi(n as i64) {
                        return Err(degenerate(&format!("mu = q^{n}")));
                    }
                }
                let lambda = rs_sum.clone() * &q - &(beta.clone() * &(one.clone() - &q));
                trace.predicted = symmetric_ttrr(&rs_sum, &rs_prod, &lambda, &mu, &q, &w0, n_max)?;
                if let Some((r, s)) = &rs {
                    if r.is_zero() && lambda.is_zero() {
                        if s.is_zero() {
                            return Err(degenerate("r = s = lambda = 0"));
                        }
                        trace.case = CaseLabel::IIIbBessel;
                        trace.family = Some(j_family(&zero(), &zero(), s, &mu, &qi)?);
                    } else if r.is_zero() {
                        let (a, b) = (lambda.clone() / &mu, mu.clone() * s / &lambda);
                        trace.family = Some(j_family(&a, &b, &zero(), &mu, &qi)?);
                        trace.roots = Some((a, b));
                    } else {
                        let delta = lambda.clone() * &lambda
                            - &(Rational::from_integer(4) * r * s * &mu);
                        if let Some(sq) = delta.sqrt() {
                            let two = Rational::from_integer(2);
                            let a = (lambda.clone() + &sq) / &(two.clone() * &mu);
                            let b = (lambda.clone() - &sq) / &(two * r);
                            trace.family = Some(j_family(&a, &b, r, &mu, &qi)?);
                            trace.roots = Some((a, b));
                        }
                        trace.delta = Some(delta);
                    }
                }
                trace.lambda = Some(lambda);
                trace.mu = Some(mu);
            }
            if let Some((r, s)) = rs {
                trace.r = Some(r);
                trace.s = Some(s);
            }
        }
    }
    trace.implicit = trace.family.is_none();
    let reference = &trace.pearson.ttrr;
    trace.post_check = PostCheck {
        family_matches_pearson: match &trace.family {
            Some(f) => Some(family_ttrr(f, n_max).as_ref() == Ok(reference)),
            None => None,
        },
        predicted_matches_pearson: &trace.predicted == reference,
    };
    Ok(trace)
}

/// Case III.b recurrence from `r + s`, `rs`, `lambda`, `mu` alone.
fn symmetric_ttrr(
    rs_sum: &Rational,
    rs_prod: &Rational,
    lambda: &Rational,
    mu: &Rational,
    q: &Rational,
    w0: &Rational,
    n_max: usize,
) -> Result<TTRRCoeffs<Rational>> {
    let one = Rational::one();
    let p = q.inv();
    let pk = |k: i64| p.powi(k);
    let dm = |k: i64| one.clone() - &(mu.clone() * &pk(k));
    // (r mu z^2 - lambda z + s)(s mu z^2 - lambda z + r)
    let sym = |z: &Rational| {
        let z2 = z.clone() * z;
        let r2s2 = rs_sum.clone() * rs_sum - &(Rational::from_integer(2) * rs_prod);
        rs_prod.clone() * mu * mu * &z2 * &z2 - &(lambda.clone() * mu * rs_sum * &z2 * z)
            + &((lambda.clone() * lambda + &(mu.clone() * &r2s2)) * &z2)
            - &(lambda.clone() * rs_sum * z)
            + rs_prod
    };
    let mut beta = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max as i64 {
        let den = dm(2 * n) * &dm(2 * n + 2);
        if den.is_zero() {
            return Err(Error::DenominatorZero {
                condition: "(1 - mu q^-2n)(1 - mu q^(-2n-2)) != 0".into(),
                index: n as usize,
            });
        }
        let num = (lambda.clone() + rs_sum) * &(one.clone() + &(mu.clone() * &pk(2 * n + 1)))
            - &((one.clone() + &p) * &(lambda.clone() + &(rs_sum.clone() * mu)) * &pk(n));
        beta.push(w0.clone() + &(pk(n) * &num / &den));
    }
    let mut gamma = Vec::with_capacity(n_max);
    for n in 0..n_max as i64 {
        let den = dm(2 * n + 1) * &dm(2 * n + 2) * &dm(2 * n + 2) * &dm(2 * n + 3);
        if den.is_zero() {
            return Err(Error::DenominatorZero {
                condition: "(1 - mu q^(-2n-1))(1 - mu q^(-2n-2))^2(1 - mu q^(-2n-3)) != 0".into(),
                index: n as usize,
            });
        }
        let num = pk(n) * &(one.clone() - &pk(n + 1)) * &dm(n + 1) * &sym(&pk(n + 1));
        gamma.push(-(num / &den));
    }
    TTRRCoeffs::new(beta, gamma)
}
