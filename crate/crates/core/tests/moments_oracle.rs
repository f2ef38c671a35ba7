use proptest::prelude::*;
use qcoherence_core::algebra::{Polynomial, Rational};
use qcoherence_core::families::{l_coeffs, j_coeffs, moments_from_ttrr, ttrr_generate, TTRRCoeffs};

/// `<u, P_n> = 0` for `n >= 1` with `m_0 = 1`, solved degree by degree.
fn triangular_moments(p: &[Polynomial<Rational>]) -> Vec<Rational> {
    let mut m = vec![Rational::from_integer(1)];
    for pn in &p[1..] {
        let n = pn.degree().unwrap();
        let mut acc = Rational::from_integer(0);
        for (i, mi) in m.iter().enumerate().take(n) {
            acc = acc + pn.coeff(i) * mi;
        }
        m.push(-acc);
    }
    m
}

fn check(coeffs: &TTRRCoeffs<Rational>, order: usize) {
    let p = ttrr_generate(coeffs, order).unwrap();
    let direct = moments_from_ttrr(coeffs, order).unwrap();
    assert_eq!(direct.moments(), triangular_moments(&p).as_slice());
}

fn small() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn l_family_moments_match_triangular_solve(a in small(), b in small(), c in small()) {
        let q = Rational::new(1, 3);
        if let Ok(coeffs) = l_coeffs(&a, &b, &c, &q, 12) {
            check(&coeffs, 12);
        }
    }

    #[test]
    fn j_family_moments_match_triangular_solve(a in small(), b in small(), c in small(), d in small()) {
        let q = Rational::new(-2, 5);
        if let Ok(coeffs) = j_coeffs(&a, &b, &c, &d, &q, 12) {
            check(&coeffs, 12);
        }
    }
}
