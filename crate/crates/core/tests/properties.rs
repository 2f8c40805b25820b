use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use proptest::prelude::*;
use quadnewton::closedform::binomial;
use quadnewton::newton::{self, QuadraticCoeffs};
use quadnewton::polyring::Assignment;
use quadnewton::qalgebra::{self, NCPoly, NCWord};
use quadnewton::quadfield::{self, QuadExt};
use quadnewton::smoothness::{self, Mode};
use quadnewton::{MultiPoly, Rational, Var, VariableSet};

fn poly_strategy(max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(
        (prop::collection::vec(0u32..=2, 4), -99i64..=99),
        0..=max_terms,
    )
    .prop_map(|terms| {
        // 4 exponents in 0..=2 keep total degree <= 8; cap at 6
        let terms = terms
            .into_iter()
            .filter(|(e, _)| e.iter().sum::<u32>() <= 6)
            .map(|(e, c)| (e, BigInt::from(c)));
        MultiPoly::from_terms(&VariableSet::abcx(), terms).unwrap()
    })
}

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=9).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn assignment() -> impl Strategy<Value = Assignment> {
    (rational(), rational(), rational(), rational()).prop_map(|(a, b, c, x)| {
        [(Var::A, a), (Var::B, b), (Var::C, c), (Var::X, x)]
            .into_iter()
            .collect()
    })
}

fn qcoeff() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..=2, 4), -5i64..=5), 0..=3).prop_map(|t| {
        MultiPoly::from_terms(
            &qalgebra::qcoeff_vars(),
            t.into_iter().map(|(e, c)| (e, BigInt::from(c))),
        )
        .unwrap()
    })
}

fn ncpoly() -> impl Strategy<Value = NCPoly> {
    prop::collection::vec((0u32..=2, 0u32..=2, qcoeff()), 0..=3).prop_map(|t| {
        t.into_iter().fold(NCPoly::zero(), |acc, (x, y, c)| {
            acc.add(&NCPoly::term(NCWord::new(x, y), c))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(p in poly_strategy(6), q in poly_strategy(6), r in poly_strategy(6)) {
        prop_assert_eq!(p.add(&q).unwrap(), q.add(&p).unwrap());
        prop_assert_eq!(p.mul(&q).unwrap(), q.mul(&p).unwrap());
        prop_assert_eq!(p.add(&q).unwrap().add(&r).unwrap(), p.add(&q.add(&r).unwrap()).unwrap());
        prop_assert_eq!(p.mul(&q).unwrap().mul(&r).unwrap(), p.mul(&q.mul(&r).unwrap()).unwrap());
        prop_assert_eq!(
            p.mul(&q.add(&r).unwrap()).unwrap(),
            p.mul(&q).unwrap().add(&p.mul(&r).unwrap()).unwrap()
        );
        prop_assert!(p.sub(&p).unwrap().is_zero());
        prop_assert_eq!(p.mul(&MultiPoly::one(p.vars())).unwrap(), p.clone());
        prop_assert_eq!(p.add(&p.neg()).unwrap(), MultiPoly::zero(p.vars()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn eval_is_a_homomorphism(p in poly_strategy(5), q in poly_strategy(5), asg in assignment()) {
        let (ep, eq) = (p.eval(&asg).unwrap(), q.eval(&asg).unwrap());
        prop_assert_eq!(p.add(&q).unwrap().eval(&asg).unwrap(), &ep + &eq);
        prop_assert_eq!(p.mul(&q).unwrap().eval(&asg).unwrap(), &ep * &eq);
    }

    #[test]
    fn pow_matches_repeated_mul(p in poly_strategy(3), e in 0u64..=8) {
        let mut acc = MultiPoly::one(p.vars());
        for _ in 0..e {
            acc = acc.mul(&p).unwrap();
        }
        prop_assert_eq!(p.pow(e), acc);
    }

    #[test]
    fn exact_division_undoes_multiplication(p in poly_strategy(4), q in poly_strategy(4)) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!(p.mul(&q).unwrap().div_exact(&q).unwrap(), p);
    }

    #[test]
    fn json_round_trip(p in poly_strategy(8)) {
        let s = serde_json::to_string(&p).unwrap();
        let back: MultiPoly = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), s);
        prop_assert_eq!(back, p);
    }

    #[test]
    fn display_parses_back(p in poly_strategy(8)) {
        prop_assert_eq!(MultiPoly::parse(p.vars(), &p.to_string()).unwrap(), p);
    }

    #[test]
    fn nc_mul_is_associative(x in ncpoly(), y in ncpoly(), z in ncpoly()) {
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
    }

    #[test]
    fn nc_json_round_trip(x in ncpoly()) {
        let s = serde_json::to_string(&x).unwrap();
        let back: NCPoly = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn mobius_inverse_undoes_phi(
        (a, b, c) in (1i64..=6, -8i64..=8, -8i64..=8),
        (un, ud, vn) in (-20i64..=20, 1i64..=6, -5i64..=5),
    ) {
        let coeffs = QuadraticCoeffs::from_integers(a, b, c).unwrap();
        prop_assume!(!coeffs.discriminant().is_zero());
        let r = quadfield::roots(&coeffs).unwrap();
        let d = r.0.d().clone();
        let tau = QuadExt::new(Rational::new(un.into(), ud.into()), Rational::from_integer(vn.into()), d);
        prop_assume!(tau != r.1);
        let w = quadfield::phi_apply(&r, &tau).unwrap();
        prop_assert_eq!(quadfield::phi_inverse(&r, &w).unwrap(), tau);
    }

    #[test]
    fn quadext_inverse(un in -20i64..=20, vn in -20i64..=20, d in -12i64..=12) {
        let z = QuadExt::new(Rational::from_integer(un.into()), Rational::from_integer(vn.into()), d.into());
        prop_assume!(!z.is_zero() && d != 0);
        let one = QuadExt::from_int(1, z.d());
        prop_assert_eq!(z.mul(&z.inv().unwrap()).unwrap(), one);
    }

    #[test]
    fn smooth_part_reconstructs(v in 1u64..=1_000_000, n in 1u32..=8) {
        let value = BigUint::from(v);
        let bound = 1u64 << n;
        for mode in [Mode::Inclusive, Mode::Strict] {
            let part = smoothness::smooth_part(&value, bound, mode);
            prop_assert_eq!(part.reconstruct(), value.clone());
            prop_assert_eq!(part.smooth, part.residual.is_one());
            if let Some(p) = part.largest_prime() {
                let within = if mode == Mode::Strict { p < bound } else { p <= bound };
                prop_assert!(within);
            }
        }
    }

    #[test]
    fn pair_evaluation_matches_newton_steps(
        n in 0u32..=3,
        a in rational(), b in rational(), c in rational(), x0 in rational(),
    ) {
        prop_assume!(!a.is_zero());
        let coeffs = QuadraticCoeffs::new(a, b, c).unwrap();
        let steps = newton::newton_iterate(&coeffs, &x0, n);
        prop_assume!(steps.is_ok());
        let pair = newton::iterate_pair(n).unwrap();
        prop_assert_eq!(newton::eval_pair(&pair, &coeffs, &x0).unwrap(), steps.unwrap());
    }
}

#[test]
fn qbinomial_symmetry_and_classical_limit() {
    let at_one: Vec<(Var, BigInt)> = vec![(Var::Q, BigInt::one())];
    for n in 0..=16u32 {
        for k in 0..=i64::from(n) {
            let g = qalgebra::qbinomial(n, k);
            assert_eq!(g, qalgebra::qbinomial(n, i64::from(n) - k), "[{n},{k}]");
            let classical = g.substitute(&at_one).unwrap();
            assert!(classical.is_zero() || classical.total_degree() == Some(0));
            let value = classical
                .terms()
                .next()
                .map(|(_, c)| c.clone())
                .unwrap_or_default();
            assert_eq!(value, binomial(u64::from(n), k), "[{n},{k}] at q = 1");
        }
        assert!(qalgebra::qbinomial(n, -1).is_zero());
        assert!(qalgebra::qbinomial(n, i64::from(n) + 1).is_zero());
    }
}
