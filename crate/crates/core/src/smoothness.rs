//! Smoothness certificates for the coefficients of `P_n` and `Q_n`.
//!
//! A coefficient is `B`-smooth when trial division by every admissible prime
//! leaves a residual of 1, so no factorization beyond the bound is needed.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closedform::Which;
use crate::newton::{NewtonPair, Verdict};

/// Whether the bound itself is an admissible prime factor.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// primes `p <= bound`
    #[default]
    Inclusive,
    /// primes `p < bound`
    Strict,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "inclusive" => Ok(Mode::Inclusive),
            "strict" => Ok(Mode::Strict),
            other => Err(format!(
                "unknown mode `{other}` (expected inclusive or strict)"
            )),
        }
    }
}

/// Primes `< limit`, ascending.
pub fn sieve_primes(limit: u64) -> Vec<u64> {
    if limit < 3 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n];
    let mut primes = Vec::new();
    for i in 2..n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j < n {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothPart {
    pub smooth: bool,
    #[serde(with = "decimal")]
    pub residual: BigUint,
    /// `(prime, multiplicity)` of the part that divided out.
    pub factors: Vec<(u64, u32)>,
}

impl SmoothPart {
    pub fn largest_prime(&self) -> Option<u64> {
        self.factors.last().map(|&(p, _)| p)
    }

    /// `prod p^e * residual`.
    pub fn reconstruct(&self) -> BigUint {
        self.factors
            .iter()
            .fold(self.residual.clone(), |acc, &(p, e)| {
                acc * BigUint::from(p).pow(e)
            })
    }
}

fn admissible_primes(bound: u64, mode: Mode) -> Vec<u64> {
    match mode {
        Mode::Inclusive => sieve_primes(bound + 1),
        Mode::Strict => sieve_primes(bound),
    }
}

fn divide_out(value: &BigUint, primes: &[u64]) -> SmoothPart {
    let mut rest = value.clone();
    let mut factors = Vec::new();
    for &p in primes {
        let bp = BigUint::from(p);
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    }
    SmoothPart {
        smooth: rest.is_one(),
        residual: rest,
        factors,
    }
}

/// Divides every admissible prime out of `value` (which must be positive).
pub fn smooth_part(value: &BigUint, bound: u64, mode: Mode) -> SmoothPart {
    assert!(!value.is_zero(), "smooth_part needs a positive value");
    divide_out(value, &admissible_primes(bound, mode))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothnessEntry {
    pub poly: Which,
    /// Exponents over `a, b, c, x`.
    pub monomial: Vec<u32>,
    #[serde(with = "decimal")]
    pub abs_coeff: BigUint,
    pub smooth: bool,
    #[serde(with = "decimal")]
    pub residual: BigUint,
    pub factors: Vec<(u64, u32)>,
    pub largest_prime: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothnessSummary {
    pub verdict: Verdict,
    pub total_coefficients: usize,
    /// Coefficients with `|c| > 2^n`.
    pub exceeding_bound: usize,
    #[serde(with = "decimal")]
    pub max_abs_coeff: BigUint,
    pub largest_prime: Option<u64>,
    /// Entries that are not smooth, as `(poly, monomial, |coeff|, residual)`.
    pub failures: Vec<Failure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub poly: Which,
    pub monomial: Vec<u32>,
    #[serde(with = "decimal")]
    pub abs_coeff: BigUint,
    #[serde(with = "decimal")]
    pub residual: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothnessReport {
    pub n: u32,
    pub bound: u64,
    pub mode: Mode,
    pub summary: SmoothnessSummary,
    pub entries: Vec<SmoothnessEntry>,
}

impl SmoothnessReport {
    pub fn passed(&self) -> bool {
        self.summary.verdict.passed()
    }
}

/// Runs trial division on `|coefficient|` for every term of `P_n` and
/// `Q_n` with bound `2^n`. Entries are ordered `P` before `Q`, each in
/// descending graded-lex monomial order.
pub fn certify_pair(pair: &NewtonPair, mode: Mode) -> SmoothnessReport {
    let bound = 1u64 << pair.n;
    let primes = admissible_primes(bound, mode);
    let items: Vec<(Which, Vec<u32>, BigUint)> = [(Which::P, &pair.p), (Which::Q, &pair.q)]
        .into_iter()
        .flat_map(|(which, poly)| {
            poly.terms()
                .map(move |(m, c)| (which, m.exponents().to_vec(), c.magnitude().clone()))
        })
        .collect();
    let entries: Vec<SmoothnessEntry> = items
        .into_par_iter()
        .map(|(poly, monomial, abs_coeff)| {
            let part = divide_out(&abs_coeff, &primes);
            SmoothnessEntry {
                poly,
                monomial,
                abs_coeff,
                smooth: part.smooth,
                largest_prime: part.largest_prime(),
                residual: part.residual,
                factors: part.factors,
            }
        })
        .collect();

    let big_bound = BigUint::from(bound);
    let failures: Vec<Failure> = entries
        .iter()
        .filter(|e| !e.smooth)
        .map(|e| Failure {
            poly: e.poly,
            monomial: e.monomial.clone(),
            abs_coeff: e.abs_coeff.clone(),
            residual: e.residual.clone(),
        })
        .collect();
    let summary = SmoothnessSummary {
        verdict: Verdict::from_bool(failures.is_empty()),
        total_coefficients: entries.len(),
        exceeding_bound: entries.iter().filter(|e| e.abs_coeff > big_bound).count(),
        max_abs_coeff: entries
            .iter()
            .map(|e| e.abs_coeff.clone())
            .max()
            .unwrap_or_default(),
        largest_prime: entries.iter().filter_map(|e| e.largest_prime).max(),
        failures,
    };
    SmoothnessReport {
        n: pair.n,
        bound,
        mode,
        summary,
        entries,
    }
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
