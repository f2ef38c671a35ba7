use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::{classical, family_polynomials, ClassicalLabel, FamilyKind, FamilySpec};
use crate::algebra::{rf_limit_at_zero, Polynomial, Rational, RationalFunction, Scalar};
use crate::{Error, Result};

/// The reduction and limit relations between the master families and the
/// classical ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReductionIdentity {
    /// `L(a,b,c) = J(ab/c, c/b, b, 0)`, `bc != 0`
    LAsJViaB,
    /// `L(a,b,c) = J(ab/c, c/a, a, 0)`, `ac != 0`
    LAsJViaA,
    /// `L(0,0,c) = lim_{t->0} J(0, c/t, t, 0)`, `c != 0`
    LimitL00c,
    /// `L(a,1,0) = lim_{t->0} J(a/t, t, 1, 0)`
    LimitLa10,
    /// `L(a,b,c) = c^n L(x/c; a/c, b/c, 1)`, `c != 0`
    LScaleC,
    /// `L(a,b,0) = b^n L(x/b; a/b, 1, 0)`, `b != 0`
    LScaleB,
    /// Big q-Jacobi: the `J` branch evaluated at `b = 0` equals the `L` branch.
    BigQJacobiBranch,
    /// Little q-Jacobi: the `J` branch evaluated at `b = 0` equals the `L` branch.
    LittleQJacobiBranch,
    /// `L(a,b,0) = b^n U^{(a/b)}(x/b)`
    AlSalamCarlitzRoundTrip,
    /// `L(a,b,c) = (ab/(cq))^n L(cqx/(ab); c/a, c/b)`, `abc != 0`
    BigQLaguerreRoundTrip,
    /// `L(0,b,c) = b^n L(x/b; c/b)`
    LittleQLaguerreA0,
    /// `L(a,0,c) = a^n L(x/a; c/a)`
    LittleQLaguerreB0,
    /// `L(0,0,c) = l_n(x; -c)`
    SmallLRoundTrip,
    /// `J(a,b,c,0) = L(ab, c, bc)`
    JAtD0,
    /// `J(a,b,c,d) = (a/q)^n P(qx/a; b, d/b, c/a)`, `abcd != 0`
    BigQJacobiRoundTrip,
    /// `J(0,b,c,d) = c^n P(x/c; b, d/b)`
    LittleQJacobiA0,
    /// `J(a,0,c,d) = c^n P(x/c; ad/c, c/a)`
    LittleQJacobiB0,
    /// `J(a,b,0,d) = (ab)^n P(x/(ab); d/b, b)`
    LittleQJacobiC0,
    /// `J(0,0,c,d) = c^n B(x/c; -dq)`
    QBesselRoundTrip,
    /// `J(a,0,0,d) = q^{-n} j_n(qx; qd, a)`
    SmallJRoundTrip,
}

impl ReductionIdentity {
    pub const ALL: [ReductionIdentity; 20] = [
        ReductionIdentity::LAsJViaB,
        ReductionIdentity::LAsJViaA,
        ReductionIdentity::LimitL00c,
        ReductionIdentity::LimitLa10,
        ReductionIdentity::LScaleC,
        ReductionIdentity::LScaleB,
        ReductionIdentity::BigQJacobiBranch,
        ReductionIdentity::LittleQJacobiBranch,
        ReductionIdentity::AlSalamCarlitzRoundTrip,
        ReductionIdentity::BigQLaguerreRoundTrip,
        ReductionIdentity::LittleQLaguerreA0,
        ReductionIdentity::LittleQLaguerreB0,
        ReductionIdentity::SmallLRoundTrip,
        ReductionIdentity::JAtD0,
        ReductionIdentity::BigQJacobiRoundTrip,
        ReductionIdentity::LittleQJacobiA0,
        ReductionIdentity::LittleQJacobiB0,
        ReductionIdentity::LittleQJacobiC0,
        ReductionIdentity::QBesselRoundTrip,
        ReductionIdentity::SmallJRoundTrip,
    ];

    pub fn name(self) -> &'static str {
        use ReductionIdentity::*;
        match self {
            LAsJViaB => "l-as-j-bc",
            LAsJViaA => "l-as-j-ac",
            LimitL00c => "limit-l00c",
            LimitLa10 => "limit-la10",
            LScaleC => "l-scale-c",
            LScaleB => "l-scale-b",
            BigQJacobiBranch => "big-q-jacobi-branch",
            LittleQJacobiBranch => "little-q-jacobi-branch",
            AlSalamCarlitzRoundTrip => "asc-roundtrip",
            BigQLaguerreRoundTrip => "big-q-laguerre",
            LittleQLaguerreA0 => "little-q-laguerre-a0",
            LittleQLaguerreB0 => "little-q-laguerre-b0",
            SmallLRoundTrip => "ln",
            JAtD0 => "j-d0",
            BigQJacobiRoundTrip => "big-q-jacobi",
            LittleQJacobiA0 => "little-q-jacobi-a0",
            LittleQJacobiB0 => "little-q-jacobi-b0",
            LittleQJacobiC0 => "little-q-jacobi-c0",
            QBesselRoundTrip => "q-bessel",
            SmallJRoundTrip => "jn",
        }
    }

    /// Whether the identity is a limit, evaluated over `Q(t)`.
    pub fn is_limit(self) -> bool {
        matches!(self, ReductionIdentity::LimitL00c | ReductionIdentity::LimitLa10)
    }
}

impl fmt::Display for ReductionIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReductionIdentity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ReductionIdentity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown reduction identity {s:?}")))
    }
}

/// Parameters `a, b, c, d`; identities ignore the ones they do not use.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionParams {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl ReductionParams {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        ReductionParams { a, b, c, d }
    }

    pub fn from_slice(p: &[Rational]) -> Result<Self> {
        if p.len() > 4 {
            return Err(Error::InvalidParams(format!("at most 4 parameters, got {}", p.len())));
        }
        let get = |i: usize| p.get(i).cloned().unwrap_or_else(Rational::zero);
        Ok(ReductionParams::new(get(0), get(1), get(2), get(3)))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReductionReport {
    pub identity: ReductionIdentity,
    /// Both sides agree for every `n <= n_max`.
    pub n_max: usize,
}

fn need(holds: bool, what: &str) -> Result<()> {
    if holds {
        Ok(())
    } else {
        Err(Error::RestrictionViolation(what.into()))
    }
}

fn l_family(a: &Rational, b: &Rational, c: &Rational, q: &Rational) -> Result<FamilySpec<Rational>> {
    FamilySpec::plain(FamilyKind::L { a: a.clone(), b: b.clone(), c: c.clone() }, q.clone())
}

fn j_family(a: &Rational, b: &Rational, c: &Rational, d: &Rational, q: &Rational) -> Result<FamilySpec<Rational>> {
    FamilySpec::plain(
        FamilyKind::J { a: a.clone(), b: b.clone(), c: c.clone(), d: d.clone() },
        q.clone(),
    )
}

/// The two sides of a non-limit identity.
fn sides(
    id: ReductionIdentity,
    p: &ReductionParams,
    q: &Rational,
) -> Result<(FamilySpec<Rational>, FamilySpec<Rational>)> {
    use ReductionIdentity::*;
    let (a, b, c, d) = (&p.a, &p.b, &p.c, &p.d);
    let z = Rational::zero();
    let one = Rational::one();
    let nz = |x: &Rational| !Scalar::is_zero(x);
    let lhs_l = || l_family(a, b, c, q);
    let lhs_j = || j_family(a, b, c, d, q);
    Ok(match id {
        LAsJViaB => {
            need(nz(&(b.clone() * c)), "bc != 0")?;
            (lhs_l()?, j_family(&(a.clone() * b / c), &(c.clone() / b), b, &z, q)?)
        }
        LAsJViaA => {
            need(nz(&(a.clone() * c)), "ac != 0")?;
            (lhs_l()?, j_family(&(a.clone() * b / c), &(c.clone() / a), a, &z, q)?)
        }
        LScaleC => {
            need(nz(c), "c != 0")?;
            (lhs_l()?, l_family(&(a.clone() / c), &(b.clone() / c), &one, q)?.rescaled(c)?)
        }
        LScaleB => {
            need(nz(b), "b != 0")?;
            (l_family(a, b, &z, q)?, l_family(&(a.clone() / b), &one, &z, q)?.rescaled(b)?)
        }
        BigQJacobiBranch => {
            // q^n J(x/q; 1, a, c, 0) against the b = 0 branch
            let rhs = classical(ClassicalLabel::BigQJacobi, &[a.clone(), z.clone(), c.clone()], q)?;
            (j_family(&one, a, c, &z, q)?.rescaled(q)?, rhs)
        }
        LittleQJacobiBranch => {
            let rhs = classical(ClassicalLabel::LittleQJacobi, &[a.clone(), z.clone()], q)?;
            (j_family(&z, a, &one, &z, q)?, rhs)
        }
        AlSalamCarlitzRoundTrip => {
            need(nz(&(a.clone() * b)), "ab != 0")?;
            let u = classical(ClassicalLabel::AlSalamCarlitz, &[a.clone() / b], q)?;
            (l_family(a, b, &z, q)?, u.rescaled(b)?)
        }
        BigQLaguerreRoundTrip => {
            need(nz(&(a.clone() * b * c)), "abc != 0")?;
            let bl = classical(ClassicalLabel::BigQLaguerre, &[c.clone() / a, c.clone() / b], q)?;
            (lhs_l()?, bl.rescaled(&(a.clone() * b / &(c.clone() * q)))?)
        }
        LittleQLaguerreA0 => {
            need(nz(&(b.clone() * c)), "bc != 0")?;
            let ll = classical(ClassicalLabel::LittleQLaguerre, &[c.clone() / b], q)?;
            (l_family(&z, b, c, q)?, ll.rescaled(b)?)
        }
        LittleQLaguerreB0 => {
            need(nz(&(a.clone() * c)), "ac != 0")?;
            let ll = classical(ClassicalLabel::LittleQLaguerre, &[c.clone() / a], q)?;
            (l_family(a, &z, c, q)?, ll.rescaled(a)?)
        }
        SmallLRoundTrip => {
            need(nz(c), "c != 0")?;
            (l_family(&z, &z, c, q)?, classical(ClassicalLabel::SmallL, &[-c.clone()], q)?)
        }
        JAtD0 => (
            j_family(a, b, c, &z, q)?,
            l_family(&(a.clone() * b), c, &(b.clone() * c), q)?,
        ),
        BigQJacobiRoundTrip => {
            need(nz(&(a.clone() * b * c * d)), "abcd != 0")?;
            let bj = classical(
                ClassicalLabel::BigQJacobi,
                &[b.clone(), d.clone() / b, c.clone() / a],
                q,
            )?;
            (lhs_j()?, bj.rescaled(&(a.clone() / q))?)
        }
        LittleQJacobiA0 => {
            need(nz(&(b.clone() * c * d)), "bcd != 0")?;
            let lj = classical(ClassicalLabel::LittleQJacobi, &[b.clone(), d.clone() / b], q)?;
            (j_family(&z, b, c, d, q)?, lj.rescaled(c)?)
        }
        LittleQJacobiB0 => {
            need(nz(&(a.clone() * c * d)), "acd != 0")?;
            let lj = classical(
                ClassicalLabel::LittleQJacobi,
                &[a.clone() * d / c, c.clone() / a],
                q,
            )?;
            (j_family(a, &z, c, d, q)?, lj.rescaled(c)?)
        }
        LittleQJacobiC0 => {
            need(nz(&(a.clone() * b * d)), "abd != 0")?;
            let lj = classical(ClassicalLabel::LittleQJacobi, &[d.clone() / b, b.clone()], q)?;
            (j_family(a, b, &z, d, q)?, lj.rescaled(&(a.clone() * b))?)
        }
        QBesselRoundTrip => {
            need(nz(&(c.clone() * d)), "cd != 0")?;
            let qb = classical(ClassicalLabel::QBessel, &[-(d.clone() * q)], q)?;
            (j_family(&z, &z, c, d, q)?, qb.rescaled(c)?)
        }
        SmallJRoundTrip => {
            need(nz(&(a.clone() * d)), "ad != 0")?;
            let sj = classical(ClassicalLabel::SmallJ, &[q.clone() * d, a.clone()], q)?;
            (j_family(a, &z, &z, d, q)?, sj.rescaled(&q.inv())?)
        }
        LimitL00c | LimitLa10 => unreachable!("limits are handled over Q(t)"),
    })
}

fn first_difference(lhs: &[Polynomial<Rational>], rhs: &[Polynomial<Rational>]) -> Option<(usize, usize)> {
    lhs.iter().zip(rhs).enumerate().find_map(|(n, (l, r))| {
        let top = l.len().max(r.len());
        (0..top).find(|&i| l.coeff(i) != r.coeff(i)).map(|i| (n, i))
    })
}

/// Sequence over `Q(t)` of the `J` family, with every coefficient sent to
/// its limit at `t = 0`.
fn j_limit(
    a: RationalFunction,
    b: RationalFunction,
    c: RationalFunction,
    d: RationalFunction,
    q: &Rational,
    n_max: usize,
) -> Result<Vec<Polynomial<Rational>>> {
    let spec = FamilySpec::plain(FamilyKind::J { a, b, c, d }, RationalFunction::from_rational(q))?;
    family_polynomials(&spec, n_max)?
        .iter()
        .map(|p| {
            let coeffs = p.coeffs().iter().map(rf_limit_at_zero).collect::<Result<_>>()?;
            Ok(Polynomial::new(coeffs))
        })
        .collect()
}

/// Generates both sides of `id` independently and compares them
/// coefficientwise for `n <= n_max`.
pub fn reduction_check(
    id: ReductionIdentity,
    params: &ReductionParams,
    q: &Rational,
    n_max: usize,
) -> Result<ReductionReport> {
    let (lhs, rhs) = if id.is_limit() {
        let t = RationalFunction::t();
        let lift = RationalFunction::from_rational;
        let (a, c) = (&params.a, &params.c);
        match id {
            ReductionIdentity::LimitL00c => {
                need(!Scalar::is_zero(c), "c != 0")?;
                let lhs = family_polynomials(&l_family(&Rational::zero(), &Rational::zero(), c, q)?, n_max)?;
                let rhs = j_limit(
                    RationalFunction::zero(),
                    lift(c) / &t,
                    t.clone(),
                    RationalFunction::zero(),
                    q,
                    n_max,
                )?;
                (lhs, rhs)
            }
            _ => {
                let lhs = family_polynomials(&l_family(a, &Rational::one(), &Rational::zero(), q)?, n_max)?;
                let rhs = j_limit(
                    lift(a) / &t,
                    t.clone(),
                    RationalFunction::one(),
                    RationalFunction::zero(),
                    q,
                    n_max,
                )?;
                (lhs, rhs)
            }
        }
    } else {
        let (l, r) = sides(id, params, q)?;
        (family_polynomials(&l, n_max)?, family_polynomials(&r, n_max)?)
    };
    match first_difference(&lhs, &rhs) {
        Some((n, power)) => Err(Error::IdentityFailed { n, power }),
        None => Ok(ReductionReport { identity: id, n_max }),
    }
}
