use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::{j_coeffs, l_coeffs, ttrr_generate, TTRRCoeffs};
use crate::algebra::{affine_substitute, Polynomial, Scalar};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum FamilyKind<S> {
    /// `L_n(x; a, b, c | base)`
    L { a: S, b: S, c: S },
    /// `J_n(x; a, b, c, d | base)`
    J { a: S, b: S, c: S, d: S },
}

impl<S: Scalar> FamilyKind<S> {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::L { .. } => "L",
            FamilyKind::J { .. } => "J",
        }
    }

    pub fn params(&self) -> Vec<S> {
        match self {
            FamilyKind::L { a, b, c } => alloc::vec![a.clone(), b.clone(), c.clone()],
            FamilyKind::J { a, b, c, d } => alloc::vec![a.clone(), b.clone(), c.clone(), d.clone()],
        }
    }

    pub fn from_params(name: &str, p: &[S]) -> Result<Self> {
        match (name, p) {
            ("L", [a, b, c]) => Ok(FamilyKind::L {
                a: a.clone(),
                b: b.clone(),
                c: c.clone(),
            }),
            ("J", [a, b, c, d]) => Ok(FamilyKind::J {
                a: a.clone(),
                b: b.clone(),
                c: c.clone(),
                d: d.clone(),
            }),
            _ => Err(Error::InvalidParams(format!(
                "family kind {name:?} with {} parameters",
                p.len()
            ))),
        }
    }
}

/// The classical families of the q-Askey scheme reachable from `L` and `J`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassicalLabel {
    AlSalamCarlitz,
    BigQLaguerre,
    LittleQLaguerre,
    /// `l_n(x; a | q)`
    SmallL,
    BigQJacobi,
    LittleQJacobi,
    QBessel,
    /// `j_n(x; a, b | q)`
    SmallJ,
}

impl ClassicalLabel {
    pub const ALL: [ClassicalLabel; 8] = [
        ClassicalLabel::AlSalamCarlitz,
        ClassicalLabel::BigQLaguerre,
        ClassicalLabel::LittleQLaguerre,
        ClassicalLabel::SmallL,
        ClassicalLabel::BigQJacobi,
        ClassicalLabel::LittleQJacobi,
        ClassicalLabel::QBessel,
        ClassicalLabel::SmallJ,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassicalLabel::AlSalamCarlitz => "AlSalamCarlitz",
            ClassicalLabel::BigQLaguerre => "BigQLaguerre",
            ClassicalLabel::LittleQLaguerre => "LittleQLaguerre",
            ClassicalLabel::SmallL => "l_n",
            ClassicalLabel::BigQJacobi => "BigQJacobi",
            ClassicalLabel::LittleQJacobi => "LittleQJacobi",
            ClassicalLabel::QBessel => "QBessel",
            ClassicalLabel::SmallJ => "j_n",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            ClassicalLabel::AlSalamCarlitz
            | ClassicalLabel::LittleQLaguerre
            | ClassicalLabel::SmallL
            | ClassicalLabel::QBessel => 1,
            ClassicalLabel::BigQLaguerre | ClassicalLabel::LittleQJacobi | ClassicalLabel::SmallJ => 2,
            ClassicalLabel::BigQJacobi => 3,
        }
    }
}

impl fmt::Display for ClassicalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassicalLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClassicalLabel::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown classical family {s:?}")))
    }
}

/// `P_n(x) = scale^n F_n((x - offset) / scale)` where `F_n` is the master
/// family described by `kind` and `base`.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilySpec<S> {
    kind: FamilyKind<S>,
    base: S,
    scale: S,
    offset: S,
    label: Option<ClassicalLabel>,
}

impl<S: Scalar> FamilySpec<S> {
    pub fn new(kind: FamilyKind<S>, base: S, scale: S, offset: S) -> Result<Self> {
        if base.is_zero() || base.is_one() || (-base.clone()).is_one() {
            return Err(Error::InvalidParams(format!("base {base} must avoid 0, 1, -1")));
        }
        if scale.is_zero() {
            return Err(Error::InvalidParams("scale must be non-zero".into()));
        }
        Ok(FamilySpec {
            kind,
            base,
            scale,
            offset,
            label: None,
        })
    }

    /// Unscaled, unshifted master family.
    pub fn plain(kind: FamilyKind<S>, base: S) -> Result<Self> {
        Self::new(kind, base, S::one(), S::zero())
    }

    pub fn with_label(mut self, label: ClassicalLabel) -> Self {
        self.label = Some(label);
        self
    }

    pub fn kind(&self) -> &FamilyKind<S> {
        &self.kind
    }

    pub fn base(&self) -> &S {
        &self.base
    }

    pub fn scale(&self) -> &S {
        &self.scale
    }

    pub fn offset(&self) -> &S {
        &self.offset
    }

    pub fn label(&self) -> Option<ClassicalLabel> {
        self.label
    }

    /// `sigma^n P_n(x / sigma)`.
    pub fn rescaled(&self, sigma: &S) -> Result<Self> {
        let mut out = Self::new(
            self.kind.clone(),
            self.base.clone(),
            self.scale.clone() * sigma,
            self.offset.clone() * sigma,
        )?;
        out.label = self.label;
        Ok(out)
    }

    /// `P_n(x - tau)`.
    pub fn translated(&self, tau: &S) -> Self {
        let mut out = self.clone();
        out.offset = out.offset + tau;
        out
    }

    /// Recurrence of the unscaled master family.
    pub fn base_ttrr(&self, n_max: usize) -> Result<TTRRCoeffs<S>> {
        match &self.kind {
            FamilyKind::L { a, b, c } => l_coeffs(a, b, c, &self.base, n_max),
            FamilyKind::J { a, b, c, d } => j_coeffs(a, b, c, d, &self.base, n_max),
        }
    }
}

/// Recurrence coefficients of the family, with the affine map applied.
pub fn family_ttrr<S: Scalar>(spec: &FamilySpec<S>, n_max: usize) -> Result<TTRRCoeffs<S>> {
    Ok(spec.base_ttrr(n_max)?.affine(&spec.scale, &spec.offset))
}

/// `P_0 .. P_{n_max}`, by generating the master family and substituting.
pub fn family_polynomials<S: Scalar>(spec: &FamilySpec<S>, n_max: usize) -> Result<Vec<Polynomial<S>>> {
    let base = ttrr_generate(&spec.base_ttrr(n_max)?, n_max)?;
    let inv = spec.scale.inv();
    let shift = -(spec.offset.clone() * &inv);
    Ok(base
        .iter()
        .enumerate()
        .map(|(n, f)| affine_substitute(f, &inv, &shift).scale(&spec.scale.powi(n as i64)))
        .collect())
}

fn in_lambda<S: Scalar>(x: &S, base: &S) -> bool {
    match (x.to_rational(), base.to_rational()) {
        (Some(x), Some(q)) => x.is_inverse_power_of(&q),
        _ => false,
    }
}

fn restrict(holds: bool, what: &str) -> Result<()> {
    if holds {
        Ok(())
    } else {
        Err(Error::RestrictionViolation(what.into()))
    }
}

/// The classical family `label` with the given parameters, realised as a
/// scaled `L` or `J` family.
pub fn classical<S: Scalar>(label: ClassicalLabel, params: &[S], base: &S) -> Result<FamilySpec<S>> {
    if params.len() != label.arity() {
        return Err(Error::InvalidParams(format!(
            "{label} takes {} parameters, got {}",
            label.arity(),
            params.len()
        )));
    }
    let lam = |x: &S| in_lambda(x, base);
    let one = S::one;
    let zero = S::zero;
    let q = base.clone();
    let (kind, scale) = match label {
        ClassicalLabel::AlSalamCarlitz => {
            let a = &params[0];
            restrict(!a.is_zero(), "a != 0")?;
            (FamilyKind::L { a: a.clone(), b: one(), c: zero() }, one())
        }
        ClassicalLabel::BigQLaguerre => {
            let (a, b) = (&params[0], &params[1]);
            restrict(!(a.clone() * b).is_zero(), "ab != 0")?;
            restrict(!lam(a) && !lam(b), "a, b not in Lambda")?;
            (
                FamilyKind::L { a: a.inv(), b: b.inv(), c: one() },
                a.clone() * b * &q,
            )
        }
        ClassicalLabel::LittleQLaguerre => {
            let a = &params[0];
            restrict(!a.is_zero(), "a != 0")?;
            restrict(!lam(a), "a not in Lambda")?;
            (FamilyKind::L { a: zero(), b: one(), c: a.clone() }, one())
        }
        ClassicalLabel::SmallL => {
            let a = &params[0];
            restrict(!a.is_zero(), "a != 0")?;
            (FamilyKind::L { a: zero(), b: zero(), c: -a.clone() }, one())
        }
        ClassicalLabel::BigQJacobi => {
            let (a, b, c) = (&params[0], &params[1], &params[2]);
            restrict(!(a.clone() * c).is_zero(), "ac != 0")?;
            let ab = a.clone() * b;
            restrict(
                !lam(a) && !lam(b) && !lam(c) && !lam(&ab) && !lam(&(ab.clone() / c)),
                "a, b, c, ab, ab/c not in Lambda",
            )?;
            if b.is_zero() {
                (
                    FamilyKind::L { a: a.inv(), b: c.inv(), c: one() },
                    a.clone() * c * &q,
                )
            } else {
                (
                    FamilyKind::J { a: one(), b: a.clone(), c: c.clone(), d: ab },
                    q.clone(),
                )
            }
        }
        ClassicalLabel::LittleQJacobi => {
            let (a, b) = (&params[0], &params[1]);
            restrict(!a.is_zero(), "a != 0")?;
            let ab = a.clone() * b;
            restrict(!lam(a) && !lam(b) && !lam(&ab), "a, b, ab not in Lambda")?;
            if b.is_zero() {
                (FamilyKind::L { a: a.inv(), b: zero(), c: one() }, a.clone())
            } else {
                (FamilyKind::J { a: zero(), b: a.clone(), c: one(), d: ab }, one())
            }
        }
        ClassicalLabel::QBessel => {
            let a = &params[0];
            restrict(!a.is_zero(), "a != 0")?;
            restrict(!lam(&-a.clone()), "-a not in Lambda")?;
            (
                FamilyKind::J { a: zero(), b: zero(), c: one(), d: -(a.clone() / &q) },
                one(),
            )
        }
        ClassicalLabel::SmallJ => {
            let (a, b) = (&params[0], &params[1]);
            restrict(!(a.clone() * b).is_zero(), "ab != 0")?;
            restrict(!lam(a), "a not in Lambda")?;
            (
                FamilyKind::J { a: b.clone(), b: zero(), c: zero(), d: a.clone() / &q },
                q.clone(),
            )
        }
    };
    Ok(FamilySpec::new(kind, q, scale, S::zero())?.with_label(label))
}

impl<S: Scalar> fmt::Display for FamilySpec<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.kind.params().iter().map(|p| format!("{p}")).collect();
        write!(
            f,
            "{}({} | {}) scale {} offset {}",
            self.kind.name(),
            params.join(", "),
            self.base,
            self.scale,
            self.offset
        )?;
        if let Some(l) = self.label {
            write!(f, " [{l}]")?;
        }
        Ok(())
    }
}
