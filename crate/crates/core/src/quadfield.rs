//! Exact arithmetic in `Q(sqrt d)`, the roots of the quadratic, the Mobius
//! map `phi(t) = (t - r1)/(t - r2)` and the root-form construction of
//! `(P_n, Q_n)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::newton::{NewtonPair, QuadraticCoeffs, Verdict};
use crate::polyring::{MultiPoly, Rational, Var};

fn perfect_square_root(d: &BigInt) -> Option<BigInt> {
    if d.is_negative() {
        return None;
    }
    let s = d.sqrt();
    (&s * &s == *d).then_some(s)
}

/// `u + v sqrt(d)`.
///
/// When `d` is a perfect square the radical is folded into `u` at
/// construction, so `v = 0` and equality is always equality of values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadExt {
    u: Rational,
    v: Rational,
    d: BigInt,
}

impl QuadExt {
    pub fn new(u: Rational, v: Rational, d: BigInt) -> Self {
        match perfect_square_root(&d) {
            Some(s) => QuadExt {
                u: u + v * Rational::from_integer(s),
                v: Rational::zero(),
                d,
            },
            None => QuadExt { u, v, d },
        }
    }

    pub fn from_rational(u: Rational, d: &BigInt) -> Self {
        QuadExt {
            u,
            v: Rational::zero(),
            d: d.clone(),
        }
    }

    pub fn from_int(u: i64, d: &BigInt) -> Self {
        Self::from_rational(Rational::from_integer(u.into()), d)
    }

    /// `sqrt(d)` itself.
    pub fn sqrt_d(d: &BigInt) -> Self {
        Self::new(Rational::zero(), Rational::one(), d.clone())
    }

    pub fn u(&self) -> &Rational {
        &self.u
    }

    pub fn v(&self) -> &Rational {
        &self.v
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.v.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.u)
    }

    fn same_d(&self, other: &QuadExt) -> Result<()> {
        if self.d != other.d {
            return Err(Error::RadicandMismatch(
                self.d.to_string(),
                other.d.to_string(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &QuadExt) -> Result<QuadExt> {
        self.same_d(other)?;
        Ok(QuadExt {
            u: &self.u + &other.u,
            v: &self.v + &other.v,
            d: self.d.clone(),
        })
    }

    pub fn sub(&self, other: &QuadExt) -> Result<QuadExt> {
        self.same_d(other)?;
        Ok(QuadExt {
            u: &self.u - &other.u,
            v: &self.v - &other.v,
            d: self.d.clone(),
        })
    }

    pub fn neg(&self) -> QuadExt {
        QuadExt {
            u: -&self.u,
            v: -&self.v,
            d: self.d.clone(),
        }
    }

    pub fn mul(&self, other: &QuadExt) -> Result<QuadExt> {
        self.same_d(other)?;
        let d = Rational::from_integer(self.d.clone());
        Ok(QuadExt {
            u: &self.u * &other.u + &self.v * &other.v * d,
            v: &self.u * &other.v + &other.u * &self.v,
            d: self.d.clone(),
        })
    }

    pub fn scale(&self, k: &Rational) -> QuadExt {
        QuadExt {
            u: &self.u * k,
            v: &self.v * k,
            d: self.d.clone(),
        }
    }

    /// `u^2 - v^2 d`.
    pub fn norm(&self) -> Rational {
        &self.u * &self.u - &self.v * &self.v * Rational::from_integer(self.d.clone())
    }

    pub fn inv(&self) -> Result<QuadExt> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QuadExt {
            u: &self.u / &n,
            v: -&self.v / &n,
            d: self.d.clone(),
        })
    }

    pub fn div(&self, other: &QuadExt) -> Result<QuadExt> {
        self.same_d(other)?;
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> QuadExt {
        let mut result = QuadExt::from_int(1, &self.d);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same radicand");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same radicand");
            }
        }
        result
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            write!(f, "{}", self.u)
        } else {
            write!(f, "{} + ({})*sqrt({})", self.u, self.v, self.d)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct QuadExtJson {
    u: String,
    v: String,
    d: serde_json::Value,
}

impl Serialize for QuadExt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let d = match i64::try_from(&self.d) {
            Ok(d) => serde_json::Value::from(d),
            Err(_) => serde_json::Value::from(self.d.to_string()),
        };
        QuadExtJson {
            u: self.u.to_string(),
            v: self.v.to_string(),
            d,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadExt {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = QuadExtJson::deserialize(de)?;
        let parse_q = |s: &str| {
            s.parse::<Rational>()
                .map_err(|_| D::Error::custom(format!("bad rational `{s}`")))
        };
        let d: BigInt = match &raw.d {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| D::Error::custom("radicand must be an integer"))?,
            serde_json::Value::String(s) => s.parse().map_err(D::Error::custom)?,
            _ => return Err(D::Error::custom("radicand must be an integer")),
        };
        Ok(QuadExt::new(parse_q(&raw.u)?, parse_q(&raw.v)?, d))
    }
}

/// `r1 = (-b + sqrt d)/2a`, `r2 = (-b - sqrt d)/2a` over the radicand
/// `d = b^2 - 4ac`. Requires integer coefficients and `d != 0`.
pub fn roots(coeffs: &QuadraticCoeffs) -> Result<(QuadExt, QuadExt)> {
    let (a, b, c) = coeffs.integer_triple()?;
    if a.is_zero() {
        return Err(Error::NotQuadratic);
    }
    let d = &b * &b - BigInt::from(4) * &a * &c;
    if d.is_zero() {
        return Err(Error::DegenerateRoots);
    }
    let two_a = Rational::from_integer(BigInt::from(2) * &a);
    let minus_b = Rational::from_integer(-b);
    let half = Rational::one() / &two_a;
    let r1 = QuadExt::new(&minus_b / &two_a, half.clone(), d.clone());
    let r2 = QuadExt::new(&minus_b / &two_a, -half, d);
    Ok((r1, r2))
}

/// `tau -> (m_a tau + m_b) / (m_c tau + m_d)` with nonzero determinant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MobiusMap {
    m_a: QuadExt,
    m_b: QuadExt,
    m_c: QuadExt,
    m_d: QuadExt,
}

impl MobiusMap {
    pub fn new(m_a: QuadExt, m_b: QuadExt, m_c: QuadExt, m_d: QuadExt) -> Result<Self> {
        let det = m_a.mul(&m_d)?.sub(&m_b.mul(&m_c)?)?;
        if det.is_zero() {
            return Err(Error::SingularMap);
        }
        Ok(MobiusMap { m_a, m_b, m_c, m_d })
    }

    /// `phi(t) = (t - r1)/(t - r2)`, sending `r1 -> 0` and `r2 -> infinity`.
    pub fn phi(r1: &QuadExt, r2: &QuadExt) -> Result<Self> {
        let one = QuadExt::from_int(1, r1.d());
        MobiusMap::new(one.clone(), r1.neg(), one, r2.neg())
    }

    pub fn apply(&self, tau: &QuadExt) -> Result<QuadExt> {
        let den = self.m_c.mul(tau)?.add(&self.m_d)?;
        if den.is_zero() {
            return Err(Error::Pole(format!("Mobius denominator vanishes at {tau}")));
        }
        self.m_a.mul(tau)?.add(&self.m_b)?.div(&den)
    }

    /// Adjugate inverse `(m_d w - m_b)/(-m_c w + m_a)`.
    pub fn inverse(&self) -> MobiusMap {
        MobiusMap {
            m_a: self.m_d.clone(),
            m_b: self.m_b.neg(),
            m_c: self.m_c.neg(),
            m_d: self.m_a.clone(),
        }
    }
}

/// `phi(tau) = (tau - r1)/(tau - r2)`.
pub fn phi_apply(r: &(QuadExt, QuadExt), tau: &QuadExt) -> Result<QuadExt> {
    let den = tau.sub(&r.1)?;
    if den.is_zero() {
        return Err(Error::Pole(format!(
            "phi has its pole at tau = r2 = {}",
            r.1
        )));
    }
    tau.sub(&r.0)?.div(&den)
}

/// `phi^-1(w) = (r1 - r2 w)/(1 - w)`.
pub fn phi_inverse(r: &(QuadExt, QuadExt), w: &QuadExt) -> Result<QuadExt> {
    let one = QuadExt::from_int(1, w.d());
    let den = one.sub(w)?;
    if den.is_zero() {
        return Err(Error::Pole("phi^-1 has its pole at w = 1".into()));
    }
    r.0.sub(&r.1.mul(w)?)?.div(&den)
}

/// `z - (a z^2 + b z + c)/(2 a z + b)` in `Q(sqrt d)`.
pub fn newton_step_ext(coeffs: &QuadraticCoeffs, z: &QuadExt) -> Result<QuadExt> {
    let d = z.d();
    let a = QuadExt::from_rational(coeffs.a().clone(), d);
    let b = QuadExt::from_rational(coeffs.b().clone(), d);
    let c = QuadExt::from_rational(coeffs.c().clone(), d);
    let deriv = a.scale(&Rational::from_integer(2.into())).mul(z)?.add(&b)?;
    if deriv.is_zero() {
        return Err(Error::Pole(format!("f'(z) = 0 at the critical point {z}")));
    }
    let f = a.mul(z)?.mul(z)?.add(&b.mul(z)?)?.add(&c)?;
    z.sub(&f.div(&deriv)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum SampleOutcome {
    Agree {
        value: QuadExt,
    },
    Mismatch {
        newton: QuadExt,
        conjugated: QuadExt,
    },
    Skipped {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleTrace {
    pub z: QuadExt,
    #[serde(flatten)]
    pub outcome: SampleOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyReport {
    pub a: String,
    pub b: String,
    pub c: String,
    pub n: u32,
    pub agreed: usize,
    pub skipped: usize,
    pub mismatched: usize,
    pub samples: Vec<SampleTrace>,
    pub verdict: Verdict,
}

fn conjugacy_sample(
    coeffs: &QuadraticCoeffs,
    r: &(QuadExt, QuadExt),
    n: u32,
    z: &QuadExt,
) -> SampleOutcome {
    let newton = (0..n).try_fold(z.clone(), |acc, _| newton_step_ext(coeffs, &acc));
    let conjugated = phi_apply(r, z).and_then(|w| phi_inverse(r, &w.pow(1u64 << n)));
    match (newton, conjugated) {
        (Err(e), _) | (_, Err(e)) => SampleOutcome::Skipped {
            reason: e.to_string(),
        },
        (Ok(lhs), Ok(rhs)) if lhs == rhs => SampleOutcome::Agree { value: lhs },
        (Ok(lhs), Ok(rhs)) => SampleOutcome::Mismatch {
            newton: lhs,
            conjugated: rhs,
        },
    }
}

/// Compares `n` Newton steps with `phi^-1(phi(z)^(2^n))` at every sample.
/// Samples that run into a pole on either route are skipped and recorded.
/// Passes iff nothing mismatched and at least one sample agreed.
pub fn conjugacy_check(
    coeffs: &QuadraticCoeffs,
    n: u32,
    samples: &[QuadExt],
) -> Result<ConjugacyReport> {
    let r = roots(coeffs)?;
    if let Some(bad) = samples.iter().find(|z| z.d() != r.0.d()) {
        return Err(Error::RadicandMismatch(
            bad.d().to_string(),
            r.0.d().to_string(),
        ));
    }
    let traces: Vec<SampleTrace> = samples
        .par_iter()
        .map(|z| SampleTrace {
            z: z.clone(),
            outcome: conjugacy_sample(coeffs, &r, n, z),
        })
        .collect();
    let count = |f: fn(&SampleOutcome) -> bool| traces.iter().filter(|t| f(&t.outcome)).count();
    let agreed = count(|o| matches!(o, SampleOutcome::Agree { .. }));
    let skipped = count(|o| matches!(o, SampleOutcome::Skipped { .. }));
    let mismatched = count(|o| matches!(o, SampleOutcome::Mismatch { .. }));
    Ok(ConjugacyReport {
        a: coeffs.a().to_string(),
        b: coeffs.b().to_string(),
        c: coeffs.c().to_string(),
        n,
        agreed,
        skipped,
        mismatched,
        samples: traces,
        verdict: Verdict::from_bool(mismatched == 0 && agreed > 0),
    })
}

/// Draws `count` distinct seeded rational points `p/q` (`|p| <= 40`,
/// `1 <= q <= 12`) at which neither `n` Newton steps nor the conjugated
/// route runs into a pole.
pub fn pole_free_samples(
    coeffs: &QuadraticCoeffs,
    n: u32,
    count: usize,
    seed: u64,
) -> Result<Vec<QuadExt>> {
    let r = roots(coeffs)?;
    let d = r.0.d().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<QuadExt> = Vec::with_capacity(count);
    for _ in 0..count.saturating_mul(1000) {
        if out.len() == count {
            break;
        }
        let num: i64 = rng.random_range(-40..=40);
        let den: i64 = rng.random_range(1..=12);
        let z = QuadExt::from_rational(Rational::new(num.into(), den.into()), &d);
        if out.contains(&z) {
            continue;
        }
        if !matches!(
            conjugacy_sample(coeffs, &r, n, &z),
            SampleOutcome::Skipped { .. }
        ) {
            out.push(z);
        }
    }
    if out.len() < count {
        return Err(Error::InvalidArgument(format!(
            "found only {} of {count} pole-free samples",
            out.len()
        )));
    }
    Ok(out)
}

/// Univariate polynomial in `x` with `Q(sqrt d)` coefficients, keyed by
/// degree; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadExtPoly {
    d: BigInt,
    coeffs: BTreeMap<u32, QuadExt>,
}

impl QuadExtPoly {
    pub fn zero(d: &BigInt) -> Self {
        QuadExtPoly {
            d: d.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    fn from_dense(d: &BigInt, dense: Vec<QuadExt>) -> Self {
        QuadExtPoly {
            d: d.clone(),
            coeffs: dense
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k as u32, c))
                .collect(),
        }
    }

    /// From a polynomial over `{x}` alone.
    pub fn from_multi(p: &MultiPoly, d: &BigInt) -> Result<Self> {
        if p.vars().vars() != [Var::X] {
            return Err(Error::InvalidArgument(format!(
                "expected a polynomial in x alone, got one over {}",
                p.vars()
            )));
        }
        let dense = p
            .as_univariate(Var::X)?
            .into_iter()
            .map(|c| {
                let k = c.terms().next().map(|(_, k)| k.clone()).unwrap_or_default();
                QuadExt::from_rational(Rational::from_integer(k), d)
            })
            .collect();
        Ok(Self::from_dense(d, dense))
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, QuadExt> {
        &self.coeffs
    }

    pub fn coeff(&self, k: u32) -> QuadExt {
        self.coeffs
            .get(&k)
            .cloned()
            .unwrap_or_else(|| QuadExt::from_int(0, &self.d))
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// True iff every coefficient has zero `sqrt d` component.
    pub fn is_rational(&self) -> bool {
        self.coeffs.values().all(QuadExt::is_rational)
    }
}

/// Integer triples the root-form and conjugacy checks run on by default:
/// split, complex and non-monic cases.
pub const REFERENCE_TRIPLES: [(i64, i64, i64); 5] =
    [(1, 0, -1), (1, -3, 2), (2, 1, -3), (1, 0, 1), (3, -2, -1)];

/// `(x + s)^e` expanded by the binomial theorem.
fn shifted_power(s: &QuadExt, e: u64) -> Vec<QuadExt> {
    let mut out = Vec::with_capacity(e as usize + 1);
    let mut binom = BigInt::one();
    for k in 0..=e {
        // coefficient of x^k is C(e, k) s^(e-k)
        out.push(s.pow(e - k).scale(&Rational::from_integer(binom.clone())));
        binom = binom * BigInt::from(e - k) / BigInt::from(k + 1);
    }
    out
}

/// `P_n`, `Q_n` from the root form
///
/// ```text
/// P_n = a^(N-1) (r1 (x - r2)^N - r2 (x - r1)^N) / (r1 - r2)
/// Q_n = a^(N-1) ((x - r2)^N - (x - r1)^N) / (r1 - r2)
/// ```
/// with `N = 2^n`, for an integer triple with `b^2 - 4ac != 0`.
pub fn root_form_pair(coeffs: &QuadraticCoeffs, n: u32) -> Result<(QuadExtPoly, QuadExtPoly)> {
    let (r1, r2) = roots(coeffs)?;
    let d = r1.d().clone();
    let big_n = 1u64 << n;
    let scale = QuadExt::from_rational(
        num_traits::pow::pow(coeffs.a().clone(), (big_n - 1) as usize),
        &d,
    )
    .div(&r1.sub(&r2)?)?;
    let minus_r2 = shifted_power(&r2.neg(), big_n);
    let minus_r1 = shifted_power(&r1.neg(), big_n);
    let mut p = Vec::with_capacity(minus_r1.len());
    let mut q = Vec::with_capacity(minus_r1.len());
    for (t2, t1) in minus_r2.iter().zip(&minus_r1) {
        p.push(r1.mul(t2)?.sub(&r2.mul(t1)?)?.mul(&scale)?);
        q.push(t2.sub(t1)?.mul(&scale)?);
    }
    Ok((
        QuadExtPoly::from_dense(&d, p),
        QuadExtPoly::from_dense(&d, q),
    ))
}

/// Whether [`root_form_pair`] reproduces `pair` specialized at the same
/// integer coefficients, coefficient by coefficient.
pub fn root_form_agrees(coeffs: &QuadraticCoeffs, pair: &NewtonPair) -> Result<bool> {
    let (a, b, c) = coeffs.integer_triple()?;
    let (sp, sq) = pair.specialize(&a, &b, &c)?;
    let (rp, rq) = root_form_pair(coeffs, pair.n)?;
    let d = rp.d.clone();
    Ok(rp == QuadExtPoly::from_multi(&sp, &d)? && rq == QuadExtPoly::from_multi(&sq, &d)?)
}
