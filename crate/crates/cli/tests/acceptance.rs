//! The fourteen acceptance criteria, each checked exactly and reported as
//! one PASS/FAIL line. Exits non-zero when any criterion fails.

use std::time::Instant;

use qcoherence::sample::RationalSampler;
use qcoherence_core::classify::{classify_self_coherent, pearson_ttrr, CaseLabel};
use qcoherence_core::coherence::{
    build_phi_chain, build_varphi_and_a, build_xi_and_b, k_zero_oracle, phi_oracle, verify_lemma21,
    verify_thm22, verify_thm23, verify_thm24, CoherenceConfig, CoherenceSystem, CoherentPair,
    VerificationReport,
};
use qcoherence_core::families::{
    family_polynomials, family_ttrr, j_coeffs, l_coeffs, moments_from_ttrr, reduction_check,
    structure_coeffs, ttrr_generate, FamilyKind, FamilySpec, ReductionIdentity, ReductionParams,
    TTRRCoeffs,
};
use qcoherence_core::functionals::{dual_basis_functional, leibniz_expansions, Agreement};
use qcoherence_core::qcalc::{hahn_diff, normalized_derivative, shift, QSymbolCache};
use qcoherence_core::{Error, Polynomial, QParams, Rational, Scalar};

type R = Rational;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Result<Verdict, Error> {
    Ok(Verdict {
        pass,
        detail: detail.into(),
    })
}

fn r(n: i64, d: i64) -> R {
    R::new(n, d)
}

fn ri(v: i64) -> R {
    R::from_integer(v)
}

fn random_poly(s: &mut RationalSampler, max_deg: usize) -> Polynomial<R> {
    let deg = s.range(max_deg + 1);
    Polynomial::new((0..=deg).map(|_| s.next()).collect())
}

fn random_qp(s: &mut RationalSampler) -> QParams<R> {
    let q = s.base();
    QParams::new(q, s.next()).expect("sampled base avoids 0 and 1")
}

fn all_hold(reports: &[VerificationReport]) -> bool {
    !reports.is_empty() && reports.iter().all(VerificationReport::holds)
}

fn failing(reports: &[VerificationReport]) -> Vec<String> {
    reports
        .iter()
        .filter(|r| !r.holds())
        .map(|r| format!("{} [{}]", r.identity, r.status.name()))
        .collect()
}

fn c1_operator_identities() -> Result<Verdict, Error> {
    let mut s = RationalSampler::new(1, 9, 5);
    let trials = 50;
    let (mut product, mut literal, mut inverse) = (0, 0, 0);
    for _ in 0..trials {
        let qp = random_qp(&mut s);
        let inv = qp.inverse();
        let f = random_poly(&mut s, 4);
        let g = random_poly(&mut s, 3);
        let lhs = hahn_diff(&(&f * &g), &qp)?;
        let rhs = &(&hahn_diff(&f, &qp)? * &g) + &(&shift(&f, &qp) * &hahn_diff(&g, &qp)?);
        product += usize::from(lhs == rhs);
        let lhs = hahn_diff(&shift(&f, &qp), &inv)?;
        let rhs = shift(&hahn_diff(&f, &qp)?, &qp).scale(qp.q());
        literal += usize::from(lhs == rhs);
        inverse += usize::from(shift(&shift(&f, &qp), &inv) == f);
    }
    verdict(
        product == trials && literal == trials && inverse == trials,
        format!(
            "product rule {product}/{trials}, D_{{1/q}} L_q = q L_q D_q {literal}/{trials}, \
             L_{{1/q}} L_q = I {inverse}/{trials}"
        ),
    )
}

fn c2_leibniz() -> Result<Verdict, Error> {
    let mut s = RationalSampler::new(2, 9, 5);
    let (mut checked, mut bad) = (0, 0);
    while checked < 10 {
        let qp = random_qp(&mut s);
        let Ok(coeffs) = l_coeffs(&s.next(), &s.next(), &s.next(), &s.base(), 12) else {
            continue;
        };
        let u = moments_from_ttrr(&coeffs, 20)?;
        for n in 0..=4 {
            let f = random_poly(&mut s, 3);
            let direct = u.left_mult(&f)?.diff_power(n, &qp)?;
            let (first, second) = leibniz_expansions(&f, &u, n, &qp)?;
            if !direct.agree(&first).holds() || !direct.agree(&second).holds() {
                bad += 1;
            }
        }
        checked += 1;
    }
    verdict(bad == 0, format!("{} (f, n) cases, {bad} disagreements", checked * 5))
}

fn c3_dual_basis_derivative() -> Result<Verdict, Error> {
    let top = 10;
    let mut bad = 0;
    let mut cases = 0;
    for (q, w) in [(r(1, 2), r(1, 3)), (r(3, 1), r(-2, 5))] {
        let qp = QParams::new(q.clone(), w)?;
        let spec = FamilySpec::plain(FamilyKind::L { a: ri(2), b: ri(3), c: ri(0) }, q.clone())?.translated(qp.omega0());
        let p = family_polynomials(&spec, top)?;
        let cache = QSymbolCache::new(q.clone(), top);
        for k in 0..=2 {
            let derived: Vec<_> = (0..=top - k)
                .map(|j| normalized_derivative(&p[j + k], j, k, &qp))
                .collect::<Result<_, _>>()?;
            for n in 0..=3 {
                let lhs = dual_basis_functional(&derived, n, top - k)?.diff_power(k, &qp.inverse())?;
                let c = (-q.clone()).powi(k as i64) * cache.factorial_ratio(n + k, n)?;
                let rhs = dual_basis_functional(&p, n + k, top)?.scale(&c);
                cases += 1;
                bad += usize::from(lhs.agree(&rhs) != Agreement::HoldsToOrder(top));
            }
        }
    }
    verdict(bad == 0, format!("{cases} cases (k <= 2, n <= 3), {bad} failures"))
}

fn orthogonality_holds(coeffs: &TTRRCoeffs<R>) -> Result<bool, Error> {
    let p = ttrr_generate(coeffs, 20)?;
    let u = moments_from_ttrr(coeffs, 20)?;
    for i in 0..=20 {
        for j in 0..=20 - i {
            let expect = if i == j { coeffs.norm(i)? } else { R::zero() };
            if u.act(&(&p[i] * &p[j]))? != expect {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn c4_orthogonality() -> Result<Verdict, Error> {
    let mut s = RationalSampler::new(4, 9, 5);
    let (mut l_ok, mut j_ok, mut l_n, mut j_n) = (0, 0, 0, 0);
    while l_n < 10 {
        if let Ok(c) = l_coeffs(&s.next(), &s.next(), &s.next(), &s.base(), 20) {
            l_n += 1;
            l_ok += usize::from(orthogonality_holds(&c)?);
        }
    }
    while j_n < 10 {
        if let Ok(c) = j_coeffs(&s.next(), &s.next(), &s.next(), &s.next(), &s.base(), 20) {
            j_n += 1;
            j_ok += usize::from(orthogonality_holds(&c)?);
        }
    }
    verdict(l_ok == l_n && j_ok == j_n, format!("L {l_ok}/{l_n}, J {j_ok}/{j_n} points, i + j <= 20"))
}

fn c5_case_one() -> Result<Verdict, Error> {
    let q = r(1, 2);
    let qp = QParams::new(q.clone(), ri(0))?;
    let (beta0, gamma1) = (ri(5), ri(-3));
    let psi = Polynomial::linear(q.clone() * &beta0 / &gamma1, -(q.clone() / &gamma1));
    let p = pearson_ttrr(&Polynomial::one(), &psi, &qp, 11)?;
    let l = l_coeffs(&ri(2), &ri(3), &ri(0), &q, 11)?;
    let mut ok = true;
    for n in 0..=10 {
        let h = q.powi(n as i64);
        ok &= p.ttrr.beta(n)? == &(ri(5) * &h);
        ok &= p.ttrr.gamma(n + 1)? == &(ri(-6) * &(R::one() - &(h.clone() * &q)) * &h);
        ok &= p.ttrr.beta(n)? == l.beta(n)? && p.ttrr.gamma(n + 1)? == l.gamma(n + 1)?;
    }
    verdict(ok, "beta_n, gamma_{n+1} for n <= 10 against the closed form and l_coeffs(2,3,0)")
}

fn c6_case_two() -> Result<Verdict, Error> {
    let mut s = RationalSampler::new(6, 9, 5);
    let (mut points, mut beta_ok, mut gamma_ok, mut gamma_flipped_ok, mut l_ok) = (0, 0, 0, 0, 0);
    while points < 10 {
        let qp = random_qp(&mut s);
        let (q, w0) = (qp.q().clone(), qp.omega0().clone());
        let (a, b, rr) = (s.nonzero(), s.nonzero(), s.nonzero());
        let one = R::one();
        let alpha = (rr.clone() * &(q.clone() - &one)).inv();
        let beta = (a.clone() + &b - &q) / &(one.clone() - &q);
        let c = -(a.clone() * &b * &rr / &q);
        let phi = Polynomial::linear(c.clone() - &w0, one.clone());
        let psi = Polynomial::linear(beta.clone() - &(alpha.clone() * &w0), alpha.clone());
        let Ok(p) = pearson_ttrr(&phi, &psi, &qp, 11) else { continue };
        let Ok(l) = l_coeffs(&(a.clone() * &rr), &(b.clone() * &rr), &rr, &q, 11) else { continue };
        let l = l.affine(&one, &w0);
        points += 1;
        let om = one.clone() - &q;
        let (mut bo, mut go, mut gf) = (true, true, true);
        for n in 0..=10i64 {
            let qn = q.powi(n);
            let bn = w0.clone() - &((beta.clone() * &om + &((one.clone() + &q) * &(one.clone() - &qn))) * &qn / &(alpha.clone() * &om));
            bo &= p.ttrr.beta(n as usize)? == &bn;
            let tail = (q.clone() + &(beta.clone() * &om)) * &qn - &q.powi(2 * n + 1);
            let pre = (one.clone() - &q.powi(n + 1)) * &q.powi(n + 1);
            let den = alpha.clone() * &alpha * &om * &om;
            let printed = pre.clone() * &(alpha.clone() * &c * &om + &tail) / &den;
            let flipped = pre * &(-(alpha.clone() * &c * &om) + &tail) / &den;
            go &= p.ttrr.gamma(n as usize + 1)? == &printed;
            gf &= p.ttrr.gamma(n as usize + 1)? == &flipped;
        }
        beta_ok += usize::from(bo);
        gamma_ok += usize::from(go);
        gamma_flipped_ok += usize::from(gf);
        l_ok += usize::from(p.ttrr == l);
    }
    verdict(
        beta_ok == points && gamma_ok == points && l_ok == points,
        format!(
            "{points} points: beta_n closed form {beta_ok}, gamma_(n+1) closed form {gamma_ok}, \
             with -alpha c (1-q) {gamma_flipped_ok}, L(ar,br,r) closed form {l_ok}"
        ),
    )
}

// Source families of the classification, one generator per branch.

#[derive(Clone, Copy, Debug, PartialEq)]
enum Branch {
    I,
    II,
    IIIa,
    IIIb,
    Bessel,
}

impl Branch {
    const ALL: [Branch; 5] = [Branch::I, Branch::II, Branch::IIIa, Branch::IIIb, Branch::Bessel];

    fn label(self) -> CaseLabel {
        match self {
            Branch::I => CaseLabel::I,
            Branch::II => CaseLabel::II,
            Branch::IIIa => CaseLabel::IIIa,
            Branch::IIIb => CaseLabel::IIIb,
            Branch::Bessel => CaseLabel::IIIbBessel,
        }
    }
}

struct Instance {
    qp: QParams<R>,
    pi: Polynomial<R>,
    source: FamilySpec<R>,
}

const CLASSIFY_N: usize = 10;

fn instance(branch: Branch, s: &mut RationalSampler) -> Option<Instance> {
    let qp = random_qp(s);
    let (q, w0) = (qp.q().clone(), qp.omega0().clone());
    let qi = q.inv();
    let x = Polynomial::linear(-w0.clone(), R::one());
    let centred = |z: &R| &x - &Polynomial::constant(z.clone());
    let (kind, base, pi) = match branch {
        Branch::I => (FamilyKind::L { a: s.nonzero(), b: s.nonzero(), c: R::zero() }, q.clone(), Polynomial::one()),
        Branch::II => {
            let (a, b, c) = (s.nonzero(), s.nonzero(), s.nonzero());
            let shift = -(a.clone() * &b / &(q.clone() * &c));
            (FamilyKind::L { a, b, c }, q.clone(), centred(&-shift))
        }
        Branch::IIIa => {
            let (rr, ss) = (s.next(), s.next());
            let pi = &centred(&rr) * &centred(&ss);
            (FamilyKind::L { a: rr, b: ss, c: s.next() }, qi, pi)
        }
        Branch::IIIb | Branch::Bessel => {
            let mu = s.nonzero();
            if (0..=2 * CLASSIFY_N as i64 + 3).any(|n| mu == q.powi(n)) {
                return None;
            }
            if branch == Branch::Bessel {
                let ss = s.nonzero();
                let pi = &x * &centred(&ss);
                (FamilyKind::J { a: R::zero(), b: R::zero(), c: ss, d: mu }, qi, pi)
            } else {
                let (a, b) = (s.nonzero(), s.nonzero());
                let rr = if s.range(4) == 0 { R::zero() } else { s.nonzero() };
                let pi = &centred(&rr) * &centred(&(a.clone() * &b));
                (FamilyKind::J { a, b, c: rr, d: mu }, qi, pi)
            }
        }
    };
    let source = FamilySpec::plain(kind, base).ok()?.translated(&w0);
    family_ttrr(&source, 2 * CLASSIFY_N + 2).ok()?;
    Some(Instance { qp, pi, source })
}

fn instances(branch: Branch, seed: u64, count: usize) -> Vec<Instance> {
    let mut s = RationalSampler::new(seed, 7, 4);
    let mut out = Vec::new();
    while out.len() < count {
        if let Some(i) = instance(branch, &mut s) {
            out.push(i);
        }
    }
    out
}

fn classify_instance(inst: &Instance) -> Result<qcoherence_core::classify::ClassificationTrace, Error> {
    let t = family_ttrr(&inst.source, 1)?;
    classify_self_coherent(&inst.pi, t.beta(0)?, t.gamma(1)?, &inst.qp, CLASSIFY_N)
}

fn c7_structure_relations() -> Result<Verdict, Error> {
    let mut summary = Vec::new();
    let mut pass = true;
    for branch in Branch::ALL {
        let (mut ok, mut total) = (0, 0);
        for inst in instances(branch, 70 + branch as u64, 5) {
            total += 1;
            let Ok(t) = classify_instance(&inst) else { continue };
            let Ok(fam) = t.family() else { continue };
            let cfg = CoherenceConfig::new(0, 1, 0, inst.pi.clone())?;
            ok += usize::from(structure_coeffs(fam, fam, &cfg, 10, &inst.qp)?.is_coherent());
        }
        pass &= ok == total;
        summary.push(format!("{} {ok}/{total}", branch.label()));
    }
    verdict(pass, format!("banded with c_(n,n+N) = 1, n <= 10: {}", summary.join(", ")))
}

// Self-coherent pairs used by criteria 8 to 11 and 14.

fn self_pair(spec: FamilySpec<R>, pi: Polynomial<R>, qp: QParams<R>, rows: usize, order: usize) -> Result<CoherentPair<R>, Error> {
    let cfg = CoherenceConfig::new(0, 1, 0, pi)?;
    CoherentPair::from_families(&spec, &spec, cfg, rows, order, qp)
}

fn case_one_pair(rows: usize, order: usize) -> Result<CoherentPair<R>, Error> {
    let qp = QParams::new(r(1, 2), r(1, 3))?;
    let spec = FamilySpec::plain(FamilyKind::L { a: ri(3), b: ri(2), c: ri(0) }, r(1, 2))?.translated(qp.omega0());
    self_pair(spec, Polynomial::one(), qp, rows, order)
}

fn case_two_pair(rows: usize, order: usize) -> Result<CoherentPair<R>, Error> {
    let qp = QParams::new(r(1, 2), r(1, 3))?;
    let w0 = qp.omega0().clone();
    let spec = FamilySpec::plain(FamilyKind::L { a: ri(2), b: ri(3), c: ri(5) }, r(1, 2))?.translated(&w0);
    // pi = x - w0 + c with c = -ab / (q c_L)
    let pi = Polynomial::linear(-w0 - r(12, 5), ri(1));
    self_pair(spec, pi, qp, rows, order)
}

fn case_three_a_pair(rows: usize, order: usize) -> Result<CoherentPair<R>, Error> {
    let qp = QParams::new(r(1, 2), r(1, 3))?;
    let w0 = qp.omega0().clone();
    let spec = FamilySpec::plain(FamilyKind::L { a: ri(3), b: ri(1), c: r(7, 2) }, ri(2))?.translated(&w0);
    let root = |z: R| Polynomial::linear(-(w0.clone() + &z), ri(1));
    self_pair(spec, &root(ri(3)) * &root(ri(1)), qp, rows, order)
}

fn c8_lemma() -> Result<Verdict, Error> {
    let mut notes = Vec::new();
    let mut pass = true;
    for (name, pair) in [("Case I (1,0,0,0)", case_one_pair(4, 20)?), ("Case III.a (1,0,2,0)", case_three_a_pair(4, 20)?)] {
        pass &= pair.table.is_coherent();
        let sys = CoherenceSystem::build(&pair, 4)?;
        let degrees = sys.check_degree_claims(&pair.config).is_ok();
        let reps = verify_lemma21(&pair, &sys, 0..=4)?;
        pass &= degrees && all_hold(&reps);
        let tag = reps[0].identity.split(' ').next().unwrap_or("");
        notes.push(format!("{name}: ({tag}) {}/{} rows, degrees {degrees}", reps.iter().filter(|r| r.holds()).count(), reps.len()));
    }
    verdict(pass, notes.join("; "))
}

fn c9_a_determinant() -> Result<Verdict, Error> {
    let pair = case_one_pair(3, 16)?;
    let sys = CoherenceSystem::build(&pair, 3)?;
    let dets = match build_varphi_and_a(&pair.config, &sys) {
        Ok(d) => d,
        Err(e) => return verdict(false, format!("A: {}", e.name())),
    };
    let reps = verify_thm22(&pair.u, &pair.v, &dets, &pair.qp)?;
    verdict(all_hold(&reps), format!("A of degree {:?}, {} identities, failing {:?}", dets.a.degree(), reps.len(), failing(&reps)))
}

fn c10_b_determinant() -> Result<Verdict, Error> {
    let pair = case_three_a_pair(4, 16)?;
    let sys = CoherenceSystem::build(&pair, 4)?;
    match build_xi_and_b(&pair.config, &sys) {
        Ok(dets) => {
            let reps = verify_thm23(&pair.u, &pair.v, &dets, &pair.qp)?;
            verdict(all_hold(&reps), format!("B of degree {:?}, failing {:?}", dets.b.degree(), failing(&reps)))
        }
        Err(e @ Error::DegenerateSystem(_)) => verdict(false, format!("{}: B vanishes identically for this self-pair", e.name())),
        Err(e) => Err(e),
    }
}

fn c11_k_zero() -> Result<Verdict, Error> {
    let pair = case_two_pair(4, 20)?;
    let cfg = &pair.config;
    let sys = CoherenceSystem::build(&pair, 4)?;
    let chain = build_phi_chain(cfg, &pair.q, &pair.v_norms, &sys.psi, &pair.qp)?;
    let (big_m, m) = (cfg.index(), cfg.m());
    let degrees = chain[0].degree() == Some(big_m + m)
        && chain.iter().enumerate().all(|(j, p)| p.degree().is_none_or(|d| d <= big_m + m + j));
    let t = verify_thm24(&pair.u, &pair.v, cfg, &chain, &pair.qp)?;
    let oracle: Vec<_> = (0..=4).map(|n| k_zero_oracle(&pair, &sys.psi[n], n)).collect::<Result<_, _>>()?;
    let pass = degrees && all_hold(&t.reports) && all_hold(&oracle) && t.class_bounds_hold();
    verdict(
        pass,
        format!(
            "functional equations {}/3, Phi degrees {degrees}, k = 0 oracle {}/5, class bounds {}",
            t.reports.iter().filter(|r| r.holds()).count(),
            oracle.iter().filter(|r| r.holds()).count(),
            t.class_bounds_hold()
        ),
    )
}

fn c12_reductions() -> Result<Verdict, Error> {
    let mut s = RationalSampler::new(12, 9, 5);
    let mut failures = Vec::new();
    for id in ReductionIdentity::ALL {
        let n_max = if id.is_limit() { 6 } else { 8 };
        let mut checked = 0;
        let mut draws = 0;
        while checked < 10 {
            draws += 1;
            if draws > 5000 {
                failures.push(format!("{id}: too few admissible points"));
                break;
            }
            let p = ReductionParams::new(s.next(), s.next(), s.next(), s.next());
            match reduction_check(id, &p, &s.base(), n_max) {
                Ok(_) => checked += 1,
                Err(Error::IdentityFailed { n, power }) => {
                    failures.push(format!("{id} at n = {n}, power {power}"));
                    checked += 1;
                }
                Err(Error::RegularityViolation { .. } | Error::DenominatorZero { .. } | Error::RestrictionViolation(_) | Error::PoleAtZero) => {}
                Err(e) => return Err(e),
            }
        }
    }
    verdict(
        failures.is_empty(),
        format!("{} identities x 10 points, failures {failures:?}", ReductionIdentity::ALL.len()),
    )
}

fn c13_round_trip() -> Result<Verdict, Error> {
    let mut summary = Vec::new();
    let mut pass = true;
    for branch in Branch::ALL {
        let mut ok = 0;
        let list = instances(branch, 130 + branch as u64, 20);
        for inst in &list {
            let Ok(t) = classify_instance(inst) else { continue };
            let Ok(fam) = t.family() else { continue };
            let same = t.case == branch.label()
                && family_polynomials(fam, CLASSIFY_N)? == family_polynomials(&inst.source, CLASSIFY_N)?;
            ok += usize::from(same);
        }
        pass &= ok == list.len();
        summary.push(format!("{} {ok}/{}", branch.label(), list.len()));
    }
    verdict(pass, summary.join(", "))
}

fn c14_phi_reading() -> Result<Verdict, Error> {
    let mut notes = Vec::new();
    let mut pass = true;
    for (name, pair) in [("N = 1", case_two_pair(4, 20)?), ("N = 2", case_three_a_pair(4, 20)?)] {
        let sys = CoherenceSystem::build(&pair, 4)?;
        let reps: Vec<_> = (0..=4).map(|n| phi_oracle(&pair, &sys.phi[n], n)).collect::<Result<_, _>>()?;
        pass &= all_hold(&reps);
        notes.push(format!("{name} {}/5", reps.iter().filter(|r| r.holds()).count()));
    }
    verdict(pass, format!("D^N(pi b_n) against sum phi D^j v, n <= 4: {}", notes.join(", ")))
}

fn main() {
    let criteria: [(&str, fn() -> Result<Verdict, Error>); 14] = [
        ("operator identities", c1_operator_identities),
        ("functional Leibniz", c2_leibniz),
        ("dual-basis derivative law", c3_dual_basis_derivative),
        ("orthogonality", c4_orthogonality),
        ("Case I reproduction", c5_case_one),
        ("Case II reproduction", c6_case_two),
        ("structure relations", c7_structure_relations),
        ("psi and phi identities", c8_lemma),
        ("A-determinant functional equations", c9_a_determinant),
        ("B-determinant functional equations", c10_b_determinant),
        ("k = 0 functional equations", c11_k_zero),
        ("reduction identities", c12_reductions),
        ("classification round trip", c13_round_trip),
        ("phi reading", c14_phi_reading),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = check().unwrap_or_else(|e| Verdict {
            pass: false,
            detail: format!("error {}: {e}", e.name()),
        });
        failed += usize::from(!v.pass);
        println!(
            "{} {:>2} {name}: {} ({:.1}s)",
            if v.pass { "PASS" } else { "FAIL" },
            i + 1,
            v.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
