//! JSON views of library values. Rationals are always `"num/den"`.

use serde::{Deserialize, Serialize};

use qcoherence_core::classify::{ClassificationTrace, PostCheck};
use qcoherence_core::coherence::VerificationReport;
use qcoherence_core::families::{ClassicalLabel, FamilyKind, FamilySpec, TTRRCoeffs};
use qcoherence_core::{Error, Polynomial, Rational};

pub fn rat(r: &Rational) -> String {
    r.to_string()
}

pub fn rats(v: &[Rational]) -> Vec<String> {
    v.iter().map(rat).collect()
}

/// Coefficients from the constant term up.
pub fn poly(p: &Polynomial<Rational>) -> Vec<String> {
    rats(p.coeffs())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub family: String,
    pub params: Vec<String>,
    pub base: String,
    pub scale: String,
    pub offset: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl FamilyJson {
    pub fn from_spec(spec: &FamilySpec<Rational>) -> Self {
        FamilyJson {
            family: spec.kind().name().into(),
            params: rats(&spec.kind().params()),
            base: rat(spec.base()),
            scale: rat(spec.scale()),
            offset: rat(spec.offset()),
            label: spec.label().map(|l| l.name().into()),
        }
    }

    pub fn to_spec(&self) -> Result<FamilySpec<Rational>, Error> {
        let params = self
            .params
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<Rational>, _>>()?;
        let kind = FamilyKind::from_params(&self.family, &params)?;
        let spec = FamilySpec::new(kind, self.base.parse()?, self.scale.parse()?, self.offset.parse()?)?;
        Ok(match &self.label {
            Some(l) => spec.with_label(l.parse::<ClassicalLabel>()?),
            None => spec,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportJson {
    pub identity: String,
    pub status: &'static str,
    pub order_checked: usize,
    pub first_failure: Option<usize>,
}

impl From<&VerificationReport> for ReportJson {
    fn from(r: &VerificationReport) -> Self {
        ReportJson {
            identity: r.identity.clone(),
            status: r.status.name(),
            order_checked: r.order_checked,
            first_failure: r.first_failure,
        }
    }
}

impl ReportJson {
    pub fn holds(&self) -> bool {
        self.status == "holds"
    }

    pub fn verdict(identity: impl Into<String>, ok: bool) -> Self {
        ReportJson {
            identity: identity.into(),
            status: if ok { "holds" } else { "fails" },
            order_checked: 0,
            first_failure: None,
        }
    }

    pub fn degenerate(identity: impl Into<String>) -> Self {
        ReportJson {
            identity: identity.into(),
            status: "degenerate",
            order_checked: 0,
            first_failure: None,
        }
    }
}

/// Output of every `verify` subcommand.
#[derive(Debug, Serialize)]
pub struct VerifyJson<T: Serialize> {
    pub command: String,
    pub holds: bool,
    pub reports: Vec<ReportJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<T>,
}

impl<T: Serialize> VerifyJson<T> {
    pub fn new(command: &str, reports: Vec<ReportJson>, detail: Option<T>) -> Self {
        VerifyJson {
            command: command.into(),
            holds: !reports.is_empty() && reports.iter().all(ReportJson::holds),
            reports,
            detail,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TtrrJson {
    /// `beta_0 ..`
    pub beta: Vec<String>,
    /// `gamma_1 ..`
    pub gamma: Vec<String>,
}

impl From<&TTRRCoeffs<Rational>> for TtrrJson {
    fn from(t: &TTRRCoeffs<Rational>) -> Self {
        TtrrJson {
            beta: rats(t.betas()),
            gamma: rats(t.gammas()),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PostCheckJson {
    pub family_matches_pearson: Option<bool>,
    pub predicted_matches_pearson: bool,
    pub passed: bool,
}

impl From<&PostCheck> for PostCheckJson {
    fn from(p: &PostCheck) -> Self {
        PostCheckJson {
            family_matches_pearson: p.family_matches_pearson,
            predicted_matches_pearson: p.predicted_matches_pearson,
            passed: p.passed(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ClassificationJson {
    pub case: &'static str,
    pub family: Option<String>,
    pub params: Option<Vec<String>>,
    pub base: Option<String>,
    pub scale: Option<String>,
    pub offset: Option<String>,
    pub implicit: bool,
    pub pi: Vec<String>,
    pub psi: Vec<String>,
    pub alpha: String,
    pub beta: String,
    pub c: Option<String>,
    pub r: Option<String>,
    pub s: Option<String>,
    pub lambda: Option<String>,
    pub mu: Option<String>,
    pub delta: Option<String>,
    pub roots: Option<[String; 2]>,
    pub pearson: TtrrJson,
    pub predicted: TtrrJson,
    pub post_check: PostCheckJson,
}

impl From<&ClassificationTrace> for ClassificationJson {
    fn from(t: &ClassificationTrace) -> Self {
        let fam = t.family().ok().map(FamilyJson::from_spec);
        let opt = |x: &Option<Rational>| x.as_ref().map(rat);
        ClassificationJson {
            case: t.case.name(),
            family: fam.as_ref().map(|f| f.family.clone()),
            params: fam.as_ref().map(|f| f.params.clone()),
            base: fam.as_ref().map(|f| f.base.clone()),
            scale: fam.as_ref().map(|f| f.scale.clone()),
            offset: fam.as_ref().map(|f| f.offset.clone()),
            implicit: t.implicit,
            pi: poly(&t.pi),
            psi: poly(&t.psi),
            alpha: rat(&t.alpha),
            beta: rat(&t.beta),
            c: opt(&t.c),
            r: opt(&t.r),
            s: opt(&t.s),
            lambda: opt(&t.lambda),
            mu: opt(&t.mu),
            delta: opt(&t.delta),
            roots: t.roots.as_ref().map(|(a, b)| [rat(a), rat(b)]),
            pearson: (&t.pearson.ttrr).into(),
            predicted: (&t.predicted).into(),
            post_check: (&t.post_check).into(),
        }
    }
}

/// Machine-readable error, written to stderr.
#[derive(Debug, Serialize)]
pub struct ErrorJson {
    pub error: String,
    pub message: String,
}
