use num_bigint::BigInt;
use quadnewton::closedform;
use quadnewton::newton::{self, NewtonPair, QuadraticCoeffs};
use quadnewton::qalgebra;
use quadnewton::quadfield::{self, REFERENCE_TRIPLES};
use quadnewton::{MultiPoly, Rational, Var, VariableSet};

fn p(s: &str) -> MultiPoly {
    MultiPoly::parse(&VariableSet::abcx(), s).unwrap()
}

#[test]
fn three_constructions_agree() {
    for n in 0..=5 {
        let rec = newton::iterate_pair(n).unwrap();
        assert_eq!(rec, closedform::closed_pair(n).unwrap(), "n={n}");
        rec.check_invariants().unwrap();
        if n <= 4 {
            for &(a, b, c) in REFERENCE_TRIPLES.iter() {
                let coeffs = QuadraticCoeffs::from_integers(a, b, c).unwrap();
                assert!(
                    quadfield::root_form_agrees(&coeffs, &rec).unwrap(),
                    "({a},{b},{c}) n={n}"
                );
            }
        }
    }
}

#[test]
fn second_iterate_by_hand() {
    let pair = newton::iterate_pair(2).unwrap();
    assert_eq!(
        pair.p,
        p("a^3*x^4 - 6*a^2*c*x^2 - 4*a*b*c*x - b^2*c + a*c^2")
    );
    assert_eq!(
        pair.q,
        p("4*a^3*x^3 + 6*a^2*b*x^2 + 4*a*b^2*x - 4*a^2*c*x + b^3 - 2*a*b*c")
    );
}

#[test]
fn degrees_and_weights() {
    for n in 0..=5u32 {
        let pair = newton::iterate_pair(n).unwrap();
        let big_n = 1i64 << n;
        assert_eq!(i64::from(pair.p.degree_in(Var::X).unwrap().unwrap()), big_n);
        assert_eq!(
            i64::from(pair.q.degree_in(Var::X).unwrap().unwrap()),
            big_n - 1
        );
        // weights a = -2, b = -1, c = 0, x = 1; total degree N - 1 in (a, b, c)
        for (poly, weight) in [(&pair.p, 2 - big_n), (&pair.q, 1 - big_n)] {
            for (m, _) in poly.terms() {
                let e: Vec<i64> = m.exponents().iter().map(|&v| i64::from(v)).collect();
                assert_eq!(e[0] + e[1] + e[2], big_n - 1, "n={n} {e:?}");
                assert_eq!(e[3] - 2 * e[0] - e[1], weight, "n={n} {e:?}");
            }
        }
    }
}

#[test]
fn rootform_coefficients_match_specialized_recurrence() {
    let coeffs = QuadraticCoeffs::from_integers(2, 1, -3).unwrap();
    let (rp, rq) = quadfield::root_form_pair(&coeffs, 3).unwrap();
    assert!(rp.is_rational() && rq.is_rational());
    let pair = newton::iterate_pair(3).unwrap();
    let (sp, _) = pair
        .specialize(&BigInt::from(2), &BigInt::from(1), &BigInt::from(-3))
        .unwrap();
    for (&k, c) in rp.coeffs() {
        let want = sp.coeff_of(&format!("x^{k}")).unwrap();
        assert_eq!(c.as_rational().unwrap(), &Rational::from_integer(want));
    }
}

#[test]
fn roots_are_fixed_points_of_root_form() {
    for &(a, b, c) in REFERENCE_TRIPLES.iter() {
        let coeffs = QuadraticCoeffs::from_integers(a, b, c).unwrap();
        let (r1, r2) = quadfield::roots(&coeffs).unwrap();
        for n in 1..=4 {
            // P(r) = r Q(r) with Q(r) != 0
            let (p, q) = quadfield::root_form_pair(&coeffs, n).unwrap();
            for r in [&r1, &r2] {
                let pv = horner(&p, r);
                let qv = horner(&q, r);
                assert!(!qv.is_zero(), "Q_{n} vanishes at a root for ({a},{b},{c})");
                assert_eq!(pv, r.mul(&qv).unwrap());
            }
        }
    }
}

fn horner(p: &quadfield::QuadExtPoly, z: &quadfield::QuadExt) -> quadfield::QuadExt {
    let deg = p.degree().unwrap_or(0);
    let mut acc = quadfield::QuadExt::from_int(0, z.d());
    for k in (0..=deg).rev() {
        acc = acc.mul(z).unwrap().add(&p.coeff(k)).unwrap();
    }
    acc
}

#[test]
fn noncommutative_pair_specializes_and_matches_conjecture() {
    let report = qalgebra::conjecture_check(3).unwrap();
    assert!(report.passed, "{:?}", report.entries);
    for n in 0..=4 {
        let nc = qalgebra::nc_iterate(n).unwrap();
        assert!(qalgebra::specializes_to(&nc, &newton::iterate_pair(n).unwrap()).unwrap());
    }
}

#[test]
fn pair_json_is_stable() {
    let pair = newton::iterate_pair(3).unwrap();
    let s = serde_json::to_string(&pair).unwrap();
    let back: NewtonPair = serde_json::from_str(&s).unwrap();
    assert_eq!(back, pair);
    assert_eq!(serde_json::to_string(&back).unwrap(), s);
}
