use serde::Serialize;

use qcoherence_core::algebra::det_cofactor;
use qcoherence_core::classify::{classify_self_coherent, pearson_ttrr};
use qcoherence_core::coherence::{
    build_varphi_and_a, build_xi_and_b, k_zero_oracle, phi_oracle, verify_lemma21, verify_thm22,
    verify_thm23, verify_thm24, CoherenceConfig, CoherenceSystem, CoherentPair, VerificationReport,
};
use qcoherence_core::families::{
    classical, family_polynomials, family_ttrr, moments_from_ttrr, reduction_check, structure_coeffs,
    ClassicalLabel, FamilyKind, FamilySpec, ReductionIdentity, ReductionParams,
};
use qcoherence_core::functionals::{
    leibniz_expansions, pearson_check, Agreement, Direction, MomentFunctional, SemiclassicalWitness,
};
use qcoherence_core::{Error, Polynomial, QParams, Rational, Scalar};

use crate::args::*;
use crate::json::*;
use crate::sample::RationalSampler;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Lib(Error::InvalidParams(_) | Error::DomainError(_)) => 2,
            CliError::Lib(_) => 1,
        }
    }

    pub fn to_json(&self) -> ErrorJson {
        match self {
            CliError::Usage(m) => ErrorJson {
                error: "Usage".into(),
                message: m.clone(),
            },
            CliError::Lib(e) => ErrorJson {
                error: e.name().into(),
                message: e.to_string(),
            },
        }
    }
}

/// Text for stdout and whether every checked identity held.
pub struct Success {
    pub stdout: String,
    pub holds: bool,
}

type CmdResult = Result<Success, CliError>;

fn emit<T: Serialize>(value: &T, holds: bool) -> CmdResult {
    let mut stdout = serde_json::to_string_pretty(value).expect("JSON views serialize");
    stdout.push('\n');
    Ok(Success { stdout, holds })
}

fn qparams(h: &HahnArgs) -> Result<QParams<Rational>, CliError> {
    Ok(QParams::new(h.q.clone(), h.omega.clone())?)
}

pub fn family_spec(
    fa: &FamilyArgs,
    default_base: &Rational,
    omega0: Option<&Rational>,
) -> Result<FamilySpec<Rational>, CliError> {
    let name = fa
        .family
        .as_deref()
        .ok_or_else(|| CliError::Usage("--family is required".into()))?;
    let given: Vec<Rational> = [&fa.a, &fa.b, &fa.c, &fa.d]
        .into_iter()
        .map_while(|p| p.clone())
        .collect();
    let base = fa.base.clone().unwrap_or_else(|| default_base.clone());
    let arity = match name {
        "L" => 3,
        "J" => 4,
        other => other.parse::<ClassicalLabel>()?.arity(),
    };
    if given.len() != arity {
        return Err(CliError::Usage(format!(
            "family {name} takes {arity} parameters (--a, --b, ... in order), got {}",
            given.len()
        )));
    }
    let mut spec = match name {
        "L" | "J" => FamilySpec::new(
            FamilyKind::from_params(name, &given)?,
            base,
            fa.scale.clone().unwrap_or_else(Rational::one),
            fa.offset.clone().unwrap_or_else(Rational::zero),
        )?,
        other => {
            let mut s = classical(other.parse()?, &given, &base)?;
            if let Some(sigma) = &fa.scale {
                s = s.rescaled(sigma)?;
            }
            if let Some(tau) = &fa.offset {
                s = s.translated(tau);
            }
            s
        }
    };
    if fa.offset_omega0 {
        let w0 = omega0.ok_or_else(|| CliError::Usage("--offset-omega0 needs a Hahn q != 1".into()))?;
        spec = spec.translated(w0);
    }
    Ok(spec)
}

fn omega0(q: &Rational, omega: &Rational) -> Option<Rational> {
    QParams::new(q.clone(), omega.clone()).ok().map(|qp| qp.omega0().clone())
}

pub fn gen(args: &GenArgs) -> CmdResult {
    let spec = family_spec(&args.family, &args.q, omega0(&args.q, &args.omega).as_ref())?;
    match args.output {
        Output::Json => {
            let polys: Vec<Vec<String>> = family_polynomials(&spec, args.n_max)?.iter().map(poly).collect();
            emit(&polys, true)
        }
        Output::Csv => {
            let t = family_ttrr(&spec, args.n_max)?;
            let mut out = String::from("n,beta,gamma\n");
            for n in 0..=args.n_max {
                let g = if n == 0 { String::new() } else { rat(t.gamma(n)?) };
                out += &format!("{n},{},{g}\n", rat(t.beta(n)?));
            }
            Ok(Success { stdout: out, holds: true })
        }
    }
}

fn family_moments(spec: &FamilySpec<Rational>, order: usize) -> Result<MomentFunctional<Rational>, Error> {
    moments_from_ttrr(&family_ttrr(spec, order / 2 + 1)?, order)
}

#[derive(Serialize)]
struct MomentsJson {
    family: FamilyJson,
    order: usize,
    moments: Vec<String>,
}

pub fn moments(args: &MomentsArgs) -> CmdResult {
    let spec = family_spec(&args.family, &args.q, omega0(&args.q, &args.omega).as_ref())?;
    let u = family_moments(&spec, args.order)?;
    match args.output {
        Output::Json => emit(
            &MomentsJson {
                family: FamilyJson::from_spec(&spec),
                order: args.order,
                moments: rats(u.moments()),
            },
            true,
        ),
        Output::Csv => {
            let mut out = String::from("i,moment\n");
            for (i, m) in u.moments().iter().enumerate() {
                out += &format!("{i},{}\n", rat(m));
            }
            Ok(Success { stdout: out, holds: true })
        }
    }
}

fn finish<T: Serialize>(command: &str, reports: Vec<ReportJson>, detail: Option<T>) -> CmdResult {
    let out = VerifyJson::new(command, reports, detail);
    let holds = out.holds;
    emit(&out, holds)
}

pub fn verify_pearson(args: &PearsonArgs) -> CmdResult {
    let qp = qparams(&args.hahn)?;
    let direction = match args.direction {
        DirectionArg::Forward => Direction::Forward,
        DirectionArg::Backward => Direction::Backward,
    };
    let w = SemiclassicalWitness::new(args.phi.clone(), args.psi.clone(), direction)?;
    let u = if args.family.family.is_some() {
        family_moments(&family_spec(&args.family, qp.q(), Some(qp.omega0()))?, args.order)?
    } else {
        // the recurrence formulas are stated for the backward direction
        let dir = match direction {
            Direction::Backward => qp.clone(),
            Direction::Forward => qp.inverse(),
        };
        let p = pearson_ttrr(&args.phi, &args.psi, &dir, args.order / 2 + 1)?;
        moments_from_ttrr(&p.ttrr, args.order)?
    };
    let report = match pearson_check(&w, &u, &qp)? {
        Agreement::HoldsToOrder(k) => ReportJson {
            identity: "D(phi u) = psi u".into(),
            status: "holds",
            order_checked: k,
            first_failure: None,
        },
        Agreement::FailsAt(i) => ReportJson {
            identity: "D(phi u) = psi u".into(),
            status: "fails",
            order_checked: u.order(),
            first_failure: Some(i),
        },
    };
    finish::<()>("verify pearson", vec![report], None)
}

fn pair_specs(pa: &PairArgs, qp: &QParams<Rational>) -> Result<(FamilySpec<Rational>, FamilySpec<Rational>), CliError> {
    let p = family_spec(&pa.family, qp.q(), Some(qp.omega0()))?;
    let q = match &pa.other {
        Some(text) => serde_json::from_str::<FamilyJson>(text)
            .map_err(|e| CliError::Usage(format!("--other: {e}")))?
            .to_spec()?,
        None => p.clone(),
    };
    Ok((p, q))
}

fn config(pa: &PairArgs) -> Result<CoherenceConfig<Rational>, CliError> {
    Ok(CoherenceConfig::new(pa.index, pa.m, pa.k, pa.pi.clone())?)
}

#[derive(Serialize)]
struct StructureJson {
    first_violation: Option<usize>,
    /// `c_{n,0} .. c_{n,n+N}`
    rows: Vec<Vec<String>>,
}

pub fn verify_structure(args: &StructureArgs) -> CmdResult {
    let qp = qparams(&args.pair.hahn)?;
    let (p, q) = pair_specs(&args.pair, &qp)?;
    let table = structure_coeffs(&p, &q, &config(&args.pair)?, args.n_max, &qp)?;
    let mut reports = Vec::new();
    let mut rows = Vec::new();
    for n in 0..=args.n_max {
        let ok = table.below_band_zero(n) && table.top_is_one(n) && table.lower_nonzero(n);
        reports.push(ReportJson::verdict(format!("band shape n={n}"), ok));
        rows.push(rats(table.row(n)?));
    }
    let detail = StructureJson {
        first_violation: table.first_violation(),
        rows,
    };
    finish("verify structure", reports, Some(detail))
}

fn push(reports: &mut Vec<ReportJson>, rs: &[VerificationReport]) {
    reports.extend(rs.iter().map(ReportJson::from));
}

pub fn verify_coherence(args: &CoherenceArgs) -> CmdResult {
    let qp = qparams(&args.pair.hahn)?;
    let (p, q) = pair_specs(&args.pair, &qp)?;
    let cfg = config(&args.pair)?;
    let (m, k, big_n) = (cfg.m(), cfg.k(), cfg.n());
    let a_rows = (m >= k + big_n).then(|| m - k).unwrap_or(0);
    let b_rows = (m < k + big_n).then(|| k + 2 * big_n - m).unwrap_or(0);
    let rows = args.rows.max(a_rows).max(b_rows);
    let pair = CoherentPair::from_families(&p, &q, cfg, rows, args.order, qp.clone())?;
    let cfg = &pair.config;
    let mut reports = vec![ReportJson::verdict("structure table is banded", pair.table.is_coherent())];
    let sys = CoherenceSystem::build(&pair, rows)?;
    reports.push(match sys.check_degree_claims(cfg) {
        Ok(()) => ReportJson::verdict("degree claims on psi and phi", true),
        Err(Error::DegreeClaimViolated(msg)) => ReportJson::verdict(format!("degree claims: {msg}"), false),
        Err(e) => return Err(e.into()),
    });
    push(&mut reports, &verify_lemma21(&pair, &sys, 0..=rows)?);
    if m >= k + big_n {
        match build_varphi_and_a(cfg, &sys) {
            Ok(d) => {
                reports.push(ReportJson::verdict("A != 0", true));
                reports.push(ReportJson::verdict("det A by cofactors", det_cofactor(&d.matrix) == d.a));
                push(&mut reports, &verify_thm22(&pair.u, &pair.v, &d, &qp)?);
            }
            Err(Error::DegenerateSystem(_) | Error::InvalidParams(_)) => reports.push(ReportJson::degenerate("A != 0")),
            Err(e) => return Err(e.into()),
        }
    } else {
        match build_xi_and_b(cfg, &sys) {
            Ok(d) => {
                reports.push(ReportJson::verdict("B != 0", true));
                reports.push(ReportJson::verdict("det B by cofactors", det_cofactor(&d.matrix) == d.b));
                push(&mut reports, &verify_thm23(&pair.u, &pair.v, &d, &qp)?);
            }
            Err(Error::DegenerateSystem(_)) => reports.push(ReportJson::degenerate("B != 0")),
            Err(e) => return Err(e.into()),
        }
    }
    if k == 0 {
        if m >= 1 {
            let t = verify_thm24(&pair.u, &pair.v, cfg, &sys.big_phi, &qp)?;
            push(&mut reports, &t.reports);
            reports.push(ReportJson::verdict("class bounds", t.class_bounds_hold()));
        }
        for n in 0..=rows {
            push(&mut reports, &[k_zero_oracle(&pair, &sys.psi[n], n)?]);
            push(&mut reports, &[phi_oracle(&pair, &sys.phi[n], n)?]);
        }
    }
    finish::<()>("verify coherence", reports, None)
}

#[derive(Serialize)]
struct PointJson {
    a: String,
    b: String,
    c: String,
    d: String,
    q: String,
    status: &'static str,
}

const MAX_ATTEMPTS: usize = 5000;

pub fn verify_reduction(args: &ReductionArgs) -> CmdResult {
    let id: ReductionIdentity = args.identity.parse()?;
    let n_max = args.n_max.unwrap_or(if id.is_limit() { 6 } else { 8 });
    let mut sampler = RationalSampler::new(args.seed, 9, 5);
    let mut points = Vec::new();
    let mut reports = Vec::new();
    let mut attempts = 0;
    while points.len() < args.points {
        attempts += 1;
        if attempts > MAX_ATTEMPTS {
            return Err(Error::MissingData(format!(
                "only {} admissible points for {id} in {MAX_ATTEMPTS} draws",
                points.len()
            ))
            .into());
        }
        let p = ReductionParams::new(sampler.next(), sampler.next(), sampler.next(), sampler.next());
        let q = sampler.base();
        let status = match reduction_check(id, &p, &q, n_max) {
            Ok(_) => "holds",
            Err(Error::IdentityFailed { .. }) => "fails",
            Err(
                Error::RegularityViolation { .. }
                | Error::DenominatorZero { .. }
                | Error::RestrictionViolation(_)
                | Error::PoleAtZero,
            ) => continue,
            Err(e) => return Err(e.into()),
        };
        reports.push(ReportJson::verdict(format!("{id} point {}", points.len()), status == "holds"));
        points.push(PointJson {
            a: rat(&p.a),
            b: rat(&p.b),
            c: rat(&p.c),
            d: rat(&p.d),
            q: rat(&q),
            status,
        });
    }
    finish("verify reduction", reports, Some(points))
}

pub fn verify_leibniz(args: &LeibnizArgs) -> CmdResult {
    let qp = qparams(&args.hahn)?;
    let spec = family_spec(&args.family, qp.q(), Some(qp.omega0()))?;
    let u = family_moments(&spec, args.order)?;
    let f = match &args.f {
        Some(f) => f.clone(),
        None => {
            let mut s = RationalSampler::new(args.seed, 9, 5);
            let deg = s.range(4);
            Polynomial::new((0..=deg).map(|_| s.next()).collect())
        }
    };
    let direct = u.left_mult(&f)?.diff_power(args.power, &qp)?;
    let (first, second) = leibniz_expansions(&f, &u, args.power, &qp)?;
    let reports = vec![
        (&VerificationReport::compare("first Leibniz sum", &direct, &first)).into(),
        (&VerificationReport::compare("second Leibniz sum", &direct, &second)).into(),
    ];
    finish("verify leibniz", reports, Some(poly(&f)))
}

pub fn classify(args: &ClassifyArgs) -> CmdResult {
    let qp = qparams(&args.hahn)?;
    let t = classify_self_coherent(&args.pi, &args.beta0, &args.gamma1, &qp, args.n_max)?;
    emit(&ClassificationJson::from(&t), t.post_check.passed())
}
