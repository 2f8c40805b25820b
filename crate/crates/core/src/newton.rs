//! Newton's method on `f(x) = ax^2 + bx + c`: the exact one-step map, the
//! symbolic pair `(P_n, Q_n)` built by the squaring recurrence, and the
//! coprimality certificate for that pair.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::{Assignment, MultiPoly, Rational, Var, VariableSet};
use crate::resultant::resultant;
use crate::univariate::UniPoly;

/// Largest `n` built unless the caller raises the cap. At `n = 8` the pair
/// already has degree 256.
pub const DEFAULT_CAP: u32 = 8;

/// Largest `n` for which the exact Sylvester resultant is computed.
pub const RESULTANT_MAX_N: u32 = 3;

/// Half-width of the range `[-50, 50]` random triples are drawn from.
pub const TRIPLE_RANGE: i64 = 50;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticCoeffs {
    a: Rational,
    b: Rational,
    c: Rational,
}

impl QuadraticCoeffs {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::NotQuadratic);
        }
        Ok(QuadraticCoeffs { a, b, c })
    }

    pub fn from_integers(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new(
            Rational::from_integer(a.into()),
            Rational::from_integer(b.into()),
            Rational::from_integer(c.into()),
        )
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    /// `b^2 - 4ac`.
    pub fn discriminant(&self) -> Rational {
        &self.b * &self.b - Rational::from_integer(4.into()) * &self.a * &self.c
    }

    /// The triple as integers, if every entry is integral.
    pub fn integer_triple(&self) -> Result<(BigInt, BigInt, BigInt)> {
        let int = |r: &Rational| {
            if r.is_integer() {
                Ok(r.to_integer())
            } else {
                Err(Error::NonIntegral(r.to_string()))
            }
        };
        Ok((int(&self.a)?, int(&self.b)?, int(&self.c)?))
    }

    /// `a, b, c` as an evaluation assignment (without `x`).
    pub fn assignment(&self) -> Assignment {
        [
            (Var::A, self.a.clone()),
            (Var::B, self.b.clone()),
            (Var::C, self.c.clone()),
        ]
        .into_iter()
        .collect()
    }
}

/// `z - f(z)/f'(z)`, exactly.
pub fn newton_step(coeffs: &QuadraticCoeffs, z: &Rational) -> Result<Rational> {
    let two = Rational::from_integer(2.into());
    let deriv = &two * coeffs.a() * z + coeffs.b();
    if deriv.is_zero() {
        return Err(Error::Pole(format!(
            "f'(z) = 0 at the critical point z = -b/2a = {z}"
        )));
    }
    let f = coeffs.a() * z * z + coeffs.b() * z + coeffs.c();
    Ok(z - f / deriv)
}

/// `n` successive Newton steps from `z`.
pub fn newton_iterate(coeffs: &QuadraticCoeffs, z: &Rational, n: u32) -> Result<Rational> {
    let mut z = z.clone();
    for _ in 0..n {
        z = newton_step(coeffs, &z)?;
    }
    Ok(z)
}

/// Numerator and denominator of the `n`-th symbolic Newton iterate, both in
/// `Z[a, b, c, x]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPair {
    pub n: u32,
    pub p: MultiPoly,
    pub q: MultiPoly,
}

impl NewtonPair {
    /// `(x, 1)`.
    pub fn initial() -> Self {
        let vars = VariableSet::abcx();
        NewtonPair {
            n: 0,
            p: MultiPoly::var(&vars, Var::X).expect("x is in abcx"),
            q: MultiPoly::one(&vars),
        }
    }

    /// One application of `P' = aP^2 - cQ^2`, `Q' = 2aPQ + bQ^2`.
    pub fn step(&self) -> Result<NewtonPair> {
        let vars = self.p.vars();
        let a = MultiPoly::var(vars, Var::A)?;
        let b = MultiPoly::var(vars, Var::B)?;
        let c = MultiPoly::var(vars, Var::C)?;
        let pp = self.p.mul(&self.p)?;
        let qq = self.q.mul(&self.q)?;
        let pq = self.p.mul(&self.q)?;
        let p = a.mul(&pp)?.sub(&c.mul(&qq)?)?;
        let q = a.scale(&BigInt::from(2)).mul(&pq)?.add(&b.mul(&qq)?)?;
        Ok(NewtonPair {
            n: self.n + 1,
            p,
            q,
        })
    }

    /// Checks the degree and leading-coefficient shape every pair must have:
    /// `P` has x-degree `2^n` led by `a^(2^n - 1)`, `Q` has x-degree
    /// `2^n - 1` led by `2^n a^(2^n - 1)`.
    pub fn check_invariants(&self) -> Result<(), String> {
        let deg = 1u32 << self.n;
        let abc = self.p.vars().without(&[Var::X]);
        let lead = MultiPoly::var_pow(&abc, Var::A, deg - 1).map_err(|e| e.to_string())?;
        let pc = self.p.as_univariate(Var::X).map_err(|e| e.to_string())?;
        let qc = self.q.as_univariate(Var::X).map_err(|e| e.to_string())?;
        if pc.len() != deg as usize + 1 {
            return Err(format!(
                "deg_x P_{} = {}, expected {deg}",
                self.n,
                pc.len() as i64 - 1
            ));
        }
        if qc.len() != deg as usize {
            return Err(format!(
                "deg_x Q_{} = {}, expected {}",
                self.n,
                qc.len() as i64 - 1,
                deg - 1
            ));
        }
        if pc[deg as usize] != lead {
            return Err(format!(
                "leading coefficient of P_{} is {}",
                self.n, pc[deg as usize]
            ));
        }
        if qc[deg as usize - 1] != lead.scale(&BigInt::from(deg)) {
            return Err(format!(
                "leading coefficient of Q_{} is {}",
                self.n,
                qc[deg as usize - 1]
            ));
        }
        Ok(())
    }

    /// `P_n` and `Q_n` with `a, b, c` replaced by integers; the results are
    /// univariate in `x`.
    pub fn specialize(&self, a: &BigInt, b: &BigInt, c: &BigInt) -> Result<(MultiPoly, MultiPoly)> {
        let bind = [
            (Var::A, a.clone()),
            (Var::B, b.clone()),
            (Var::C, c.clone()),
        ];
        Ok((self.p.substitute(&bind)?, self.q.substitute(&bind)?))
    }
}

pub fn check_cap(n: u32, cap: u32) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded { requested: n, cap });
    }
    Ok(())
}

/// `(P_n, Q_n)` from the squaring recurrence, subject to [`DEFAULT_CAP`].
pub fn iterate_pair(n: u32) -> Result<NewtonPair> {
    iterate_pair_capped(n, DEFAULT_CAP)
}

pub fn iterate_pair_capped(n: u32, cap: u32) -> Result<NewtonPair> {
    check_cap(n, cap)?;
    let mut pair = NewtonPair::initial();
    for _ in 0..n {
        pair = pair.step()?;
    }
    Ok(pair)
}

/// `P_n(x0) / Q_n(x0)` at the given coefficients.
pub fn eval_pair(pair: &NewtonPair, coeffs: &QuadraticCoeffs, x0: &Rational) -> Result<Rational> {
    let mut asg = coeffs.assignment();
    asg.insert(Var::X, x0.clone());
    let num = pair.p.eval(&asg)?;
    let den = pair.q.eval(&asg)?;
    if den.is_zero() {
        return Err(Error::Pole(format!(
            "Q_{}({x0}) = 0 at the given coefficients",
            pair.n
        )));
    }
    Ok(num / den)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoprimalityMethod {
    ExactResultant,
    RandomizedSubstitution,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

/// One specialization `(a, b, c)` and the x-degree of `gcd(P_n, Q_n)` there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub trial: usize,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub gcd_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultantSummary {
    pub nonzero: bool,
    pub num_terms: usize,
    pub resultant: MultiPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoprimalityReport {
    pub n: u32,
    pub methods: Vec<CoprimalityMethod>,
    pub seed: u64,
    pub trials: usize,
    pub resultant: Option<ResultantSummary>,
    pub witnesses: Vec<Witness>,
    /// Draws with `b^2 - 4ac = 0`, discarded and redrawn.
    pub skipped_degenerate: Vec<[i64; 3]>,
    pub verdict: Verdict,
}

fn gcd_degree(pair: &NewtonPair, a: i64, b: i64, c: i64) -> Result<usize> {
    let (p, q) = pair.specialize(&a.into(), &b.into(), &c.into())?;
    let g = UniPoly::from_multi(&p, Var::X)?.gcd(&UniPoly::from_multi(&q, Var::X)?);
    Ok(g.degree().unwrap_or(0))
}

/// Certifies that `P_n` and `Q_n` share no factor.
///
/// For `n <= 3` the exact resultant in `Z[a, b, c]` is computed and must be
/// nonzero. For every `n`, `trials` seeded triples with `a != 0` and
/// `b^2 - 4ac != 0` are substituted and the univariate GCD over `Q` must be
/// constant. A single constant GCD already proves coprimality in
/// `Z[a, b, c][x]` up to content.
pub fn coprimality_check(pair: &NewtonPair, trials: usize, seed: u64) -> Result<CoprimalityReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let mut methods = Vec::new();
    let mut resultant_summary = None;
    if pair.n <= RESULTANT_MAX_N {
        methods.push(CoprimalityMethod::ExactResultant);
        let res = resultant(&pair.p, &pair.q, Var::X)?;
        resultant_summary = Some(ResultantSummary {
            nonzero: !res.is_zero(),
            num_terms: res.num_terms(),
            resultant: res,
        });
    }
    methods.push(CoprimalityMethod::RandomizedSubstitution);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut triples = Vec::with_capacity(trials);
    let mut skipped = Vec::new();
    while triples.len() < trials {
        let a = rng.random_range(-TRIPLE_RANGE..=TRIPLE_RANGE);
        let b = rng.random_range(-TRIPLE_RANGE..=TRIPLE_RANGE);
        let c = rng.random_range(-TRIPLE_RANGE..=TRIPLE_RANGE);
        if a == 0 {
            continue;
        }
        if b * b - 4 * a * c == 0 {
            skipped.push([a, b, c]);
            continue;
        }
        triples.push((a, b, c));
    }

    let witnesses = triples
        .par_iter()
        .enumerate()
        .map(|(trial, &(a, b, c))| {
            Ok(Witness {
                trial,
                a,
                b,
                c,
                gcd_degree: gcd_degree(pair, a, b, c)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let ok = witnesses.iter().all(|w| w.gcd_degree == 0)
        && resultant_summary.as_ref().is_none_or(|r| r.nonzero);
    Ok(CoprimalityReport {
        n: pair.n,
        methods,
        seed,
        trials,
        resultant: resultant_summary,
        witnesses,
        skipped_degenerate: skipped,
        verdict: Verdict::from_bool(ok),
    })
}

/// GCD behaviour at double-root triples (`b^2 = 4ac`), where coprimality is
/// not claimed. Recorded for inspection only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenerateProbe {
    pub n: u32,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub gcd_degree: usize,
}

pub fn degenerate_probe(
    pair: &NewtonPair,
    triples: &[(i64, i64, i64)],
) -> Result<Vec<DegenerateProbe>> {
    triples
        .iter()
        .map(|&(a, b, c)| {
            if a == 0 || b * b - 4 * a * c != 0 {
                return Err(Error::InvalidArgument(format!(
                    "({a}, {b}, {c}) is not a double-root quadratic"
                )));
            }
            Ok(DegenerateProbe {
                n: pair.n,
                a,
                b,
                c,
                gcd_degree: gcd_degree(pair, a, b, c)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(&VariableSet::abcx(), s).unwrap()
    }

    #[test]
    fn newton_step_examples() {
        let f = QuadraticCoeffs::from_integers(1, -3, 2).unwrap();
        assert_eq!(newton_step(&f, &rat(3, 1)).unwrap(), rat(7, 3));
        let g = QuadraticCoeffs::from_integers(1, 0, -1).unwrap();
        assert_eq!(newton_step(&g, &rat(1, 1)).unwrap(), rat(1, 1));
        assert_eq!(newton_step(&g, &rat(2, 1)).unwrap(), rat(5, 4));
    }

    #[test]
    fn newton_step_pole_at_critical_point() {
        let f = QuadraticCoeffs::from_integers(1, -3, 2).unwrap();
        let err = newton_step(&f, &rat(3, 2)).unwrap_err();
        assert!(matches!(err, Error::Pole(ref m) if m.contains("3/2")));
    }

    #[test]
    fn zero_leading_coefficient_rejected() {
        assert_eq!(
            QuadraticCoeffs::from_integers(0, 1, 1),
            Err(Error::NotQuadratic)
        );
    }

    #[test]
    fn iterate_pair_small_cases() {
        let p0 = iterate_pair(0).unwrap();
        assert_eq!((p0.p.clone(), p0.q.clone()), (p("x"), p("1")));
        let p1 = iterate_pair(1).unwrap();
        assert_eq!(p1.p, p("a*x^2 - c"));
        assert_eq!(p1.q, p("2*a*x + b"));
        let p2 = iterate_pair(2).unwrap();
        assert_eq!(p2.p, p("a^3*x^4 - 6*a^2*c*x^2 - 4*a*b*c*x + a*c^2 - b^2*c"));
        assert_eq!(
            p2.q,
            p("4*a^3*x^3 + 6*a^2*b*x^2 + 4*a*b^2*x - 4*a^2*c*x + b^3 - 2*a*b*c")
        );
        for n in 0..=4 {
            iterate_pair(n).unwrap().check_invariants().unwrap();
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            iterate_pair(9),
            Err(Error::CapExceeded {
                requested: 9,
                cap: 8
            })
        );
        assert!(iterate_pair_capped(3, 2).is_err());
    }

    #[test]
    fn eval_pair_examples() {
        let f = QuadraticCoeffs::from_integers(1, -3, 2).unwrap();
        assert_eq!(
            eval_pair(&iterate_pair(1).unwrap(), &f, &rat(3, 1)).unwrap(),
            rat(7, 3)
        );
        assert_eq!(
            eval_pair(&iterate_pair(0).unwrap(), &f, &rat(5, 1)).unwrap(),
            rat(5, 1)
        );
        let g = QuadraticCoeffs::from_integers(1, 0, -1).unwrap();
        assert_eq!(
            eval_pair(&iterate_pair(2).unwrap(), &g, &rat(2, 1)).unwrap(),
            rat(41, 40)
        );
    }

    #[test]
    fn eval_pair_zero_denominator() {
        // Q_1 = 2ax + b vanishes at x = 3/2 for (1, -3, 2)
        let f = QuadraticCoeffs::from_integers(1, -3, 2).unwrap();
        let err = eval_pair(&iterate_pair(1).unwrap(), &f, &rat(3, 2)).unwrap_err();
        assert!(matches!(err, Error::Pole(_)));
    }

    #[test]
    fn coprimality_first_iterate() {
        let pair = iterate_pair(1).unwrap();
        let report = coprimality_check(&pair, 5, 7).unwrap();
        let res = report.resultant.as_ref().unwrap();
        let abc = VariableSet::new(&[Var::A, Var::B, Var::C]).unwrap();
        assert_eq!(
            res.resultant,
            MultiPoly::parse(&abc, "a*b^2 - 4*a^2*c").unwrap()
        );
        assert!(report.verdict.passed());
        assert_eq!(report.witnesses.len(), 5);
        assert_eq!(gcd_degree(&pair, 1, 0, -1).unwrap(), 0);
    }

    #[test]
    fn coprimality_is_seed_deterministic() {
        let pair = iterate_pair(2).unwrap();
        let r1 = coprimality_check(&pair, 6, 42).unwrap();
        let r2 = coprimality_check(&pair, 6, 42).unwrap();
        assert_eq!(r1, r2);
        assert!(r1
            .witnesses
            .iter()
            .all(|w| w.a != 0 && w.b * w.b != 4 * w.a * w.c));
    }

    #[test]
    fn coprimality_rejects_zero_trials() {
        assert!(coprimality_check(&iterate_pair(1).unwrap(), 0, 1).is_err());
    }

    #[test]
    fn degenerate_probe_requires_double_root() {
        let pair = iterate_pair(1).unwrap();
        assert!(degenerate_probe(&pair, &[(1, 0, -1)]).is_err());
        // (x + 1)^2: P_1 = x^2 - 1, Q_1 = 2x + 2 share the factor x + 1
        let probe = degenerate_probe(&pair, &[(1, 2, 1)]).unwrap();
        assert_eq!(probe[0].gcd_degree, 1);
    }
}
