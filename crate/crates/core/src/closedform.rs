//! The explicit binomial double sums for `P_n` and `Q_n`, and the
//! `x^n - y^n` factorization identity their derivation rests on.
//!
//! ```text
//! P_n = a^(N-1) x^N - sum_{k=0}^{N-2} sum_{j=0}^{N-k-2}
//!         (-1)^j C(N,k) C(N-k-j-2, j) a^(k+j) b^(N-k-2j-2) c^(j+1) x^k
//! Q_n = sum_{k=0}^{N-1} sum_{j=0}^{N-k-1}
//!         (-1)^j C(N,k) C(N-k-j-1, j) a^(k+j) b^(N-k-2j-1) c^j x^k
//! ```
//! with `N = 2^n`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::newton::{check_cap, NewtonPair, DEFAULT_CAP};
use crate::polyring::{Monomial, MultiPoly, Var, VariableSet};

/// Rows `0..=max_n` of Pascal's triangle.
#[derive(Clone, Debug)]
pub struct BinomialTable {
    rows: Vec<Vec<BigInt>>,
}

impl BinomialTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![BigInt::one()]);
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(BigInt::one());
            for k in 1..n {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(BigInt::one());
            rows.push(row);
        }
        BinomialTable { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `C(n, k)`, zero outside `0 <= k <= n`. Panics if `n` is past the table.
    pub fn get(&self, n: usize, k: i64) -> BigInt {
        if k < 0 || k as usize > n {
            return BigInt::zero();
        }
        self.rows[n][k as usize].clone()
    }

    fn get_ref(&self, n: usize, k: usize) -> &BigInt {
        &self.rows[n][k]
    }
}

/// `C(n, k)` with `C(n, k) = 0` for `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    BinomialTable::new(n as usize).get(n as usize, k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Which {
    P,
    Q,
}

/// Where one coefficient of `P_n`/`Q_n` comes from: the `(k, j)` summand, its
/// signed value `(-1)^j C(2^n, k) C(m, j)` (negated once more for `P`), and
/// the monomial over `a, b, c, x`.
///
/// The leading `a^(2^n-1) x^(2^n)` term of `P` is recorded with
/// `k = 2^n, j = 0, m = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditRecord {
    pub poly: Which,
    pub n: u32,
    pub k: u64,
    pub j: u64,
    #[serde(skip)]
    pub m: u64,
    #[serde(with = "decimal")]
    pub coeff: BigInt,
    pub monomial: [u32; 4],
}

mod decimal {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Walks the summands of `P_n` (or `Q_n`) in construction order: `k`
/// ascending, `j` ascending.
fn summands(which: Which, n: u32, table: &BinomialTable, mut emit: impl FnMut(AuditRecord)) {
    let big_n = 1u64 << n;
    // P has the extra "-2" shift and a c^(j+1); Q has "-1" and c^j.
    let (shift, c_extra) = match which {
        Which::P => (2u64, 1u64),
        Which::Q => (1u64, 0u64),
    };
    let nn = big_n as usize;
    if which == Which::P {
        emit(AuditRecord {
            poly: Which::P,
            n,
            k: big_n,
            j: 0,
            m: 0,
            coeff: BigInt::one(),
            monomial: [(big_n - 1) as u32, 0, 0, big_n as u32],
        });
    }
    if big_n < shift {
        return;
    }
    for k in 0..=big_n - shift {
        let outer = table.get_ref(nn, k as usize);
        for j in 0..=big_n - k - shift {
            let m = big_n - k - j - shift;
            if j > m {
                // C(m, j) = 0; later j only grow while m shrinks
                break;
            }
            let mut coeff = outer * table.get_ref(m as usize, j as usize);
            if (j % 2 == 1) ^ (which == Which::P) {
                coeff = -coeff;
            }
            let b_exp = big_n - k - 2 * j - shift;
            emit(AuditRecord {
                poly: which,
                n,
                k,
                j,
                m,
                coeff,
                monomial: [(k + j) as u32, b_exp as u32, (j + c_extra) as u32, k as u32],
            });
        }
    }
}

fn build(which: Which, n: u32, cap: u32) -> Result<MultiPoly> {
    check_cap(n, cap)?;
    let table = BinomialTable::new(1usize << n);
    let vars = VariableSet::abcx();
    let mut terms = Vec::new();
    summands(which, n, &table, |r| {
        terms.push((r.monomial.to_vec(), r.coeff))
    });
    MultiPoly::from_terms(&vars, terms)
}

/// `P_n` from the explicit double sum.
pub fn closed_p(n: u32) -> Result<MultiPoly> {
    build(Which::P, n, DEFAULT_CAP)
}

/// `Q_n` from the explicit double sum.
pub fn closed_q(n: u32) -> Result<MultiPoly> {
    build(Which::Q, n, DEFAULT_CAP)
}

pub fn closed_pair_capped(n: u32, cap: u32) -> Result<NewtonPair> {
    Ok(NewtonPair {
        n,
        p: build(Which::P, n, cap)?,
        q: build(Which::Q, n, cap)?,
    })
}

pub fn closed_pair(n: u32) -> Result<NewtonPair> {
    closed_pair_capped(n, DEFAULT_CAP)
}

/// Provenance of every term of `P_n` then `Q_n`, one record per summand.
pub fn audit(n: u32) -> Result<Vec<AuditRecord>> {
    audit_capped(n, DEFAULT_CAP)
}

pub fn audit_capped(n: u32, cap: u32) -> Result<Vec<AuditRecord>> {
    check_cap(n, cap)?;
    let table = BinomialTable::new(1usize << n);
    let mut out = Vec::new();
    summands(Which::P, n, &table, |r| out.push(r));
    summands(Which::Q, n, &table, |r| out.push(r));
    Ok(out)
}

/// Checks that each coefficient of `closed_p(n)`/`closed_q(n)` is exactly a
/// single audited product `+-C(2^n, k) C(m, j)` with `m < 2^n`. Returns the
/// number of terms checked.
pub fn audit_check(n: u32) -> Result<usize> {
    let records = audit(n)?;
    let pair = closed_pair(n)?;
    let table = BinomialTable::new(1usize << n);
    let big_n = 1u64 << n;
    let mut checked = 0;
    for which in [Which::P, Which::Q] {
        let poly = match which {
            Which::P => &pair.p,
            Which::Q => &pair.q,
        };
        let recs: Vec<&AuditRecord> = records.iter().filter(|r| r.poly == which).collect();
        if recs.len() != poly.num_terms() {
            return Err(Error::InvalidArgument(format!(
                "{which:?}_{n}: {} summands but {} terms; summands collided",
                recs.len(),
                poly.num_terms()
            )));
        }
        for r in recs {
            let mono = Monomial::new(r.monomial.to_vec());
            let expected =
                table.get(big_n as usize, r.k as i64) * table.get(r.m as usize, r.j as i64);
            let is_lead = which == Which::P && r.k == big_n;
            let magnitude_ok = if is_lead {
                r.coeff.is_one()
            } else {
                r.m < big_n && (r.coeff == expected || r.coeff == -&expected)
            };
            if !magnitude_ok || poly.coeff(&mono) != r.coeff {
                return Err(Error::InvalidArgument(format!(
                    "{which:?}_{n}: term {:?} does not match its (k, j) = ({}, {}) provenance",
                    r.monomial, r.k, r.j
                )));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// `(x - y) * sum_{i=0}^{n-1} (-1)^i C(n-i-1, i) (x+y)^(n-2i-1) (xy)^i`
/// expanded over `{x, y}`.
pub fn lemma1_rhs(n: u32) -> Result<MultiPoly> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let vars = VariableSet::xy();
    let x = MultiPoly::var(&vars, Var::X)?;
    let y = MultiPoly::var(&vars, Var::Y)?;
    let sum_xy = x.add(&y)?;
    let prod_xy = x.mul(&y)?;
    let table = BinomialTable::new(n as usize);
    let mut acc = MultiPoly::zero(&vars);
    for i in 0..n {
        let top = n - i - 1;
        if i > top {
            break;
        }
        let mut c = table.get(top as usize, i as i64);
        if i % 2 == 1 {
            c = -c;
        }
        let term = sum_xy
            .pow(u64::from(n - 2 * i - 1))
            .mul(&prod_xy.pow(u64::from(i)))?
            .scale(&c);
        acc = acc.add(&term)?;
    }
    x.sub(&y)?.mul(&acc)
}

/// `x^n - y^n`.
pub fn power_difference(n: u32) -> Result<MultiPoly> {
    let vars = VariableSet::xy();
    MultiPoly::var_pow(&vars, Var::X, n)?.sub(&MultiPoly::var_pow(&vars, Var::Y, n)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma1Report {
    pub max_n: u32,
    pub identity_checked: u32,
    pub recurrence_checked: u32,
    /// First `n` at which either check failed.
    pub first_failure: Option<u32>,
    pub passed: bool,
}

/// Largest `n` for which `T(n+1) = (x+y) T(n) - xy T(n-1)` is checked.
pub const RECURRENCE_MAX_N: u32 = 32;

/// Checks `lemma1_rhs(n) = x^n - y^n` for `1 <= n <= max_n` and the
/// three-term recurrence between consecutive right-hand sides for
/// `1 <= n <= min(max_n - 1, 32)`, with `T(0) = 0`.
pub fn lemma1_check(max_n: u32) -> Result<Lemma1Report> {
    if max_n == 0 {
        return Err(Error::InvalidArgument("max_n must be at least 1".into()));
    }
    let rhs: Vec<MultiPoly> = (1..=max_n).map(lemma1_rhs).collect::<Result<_>>()?;
    let t = |n: u32| &rhs[n as usize - 1];
    let mut first_failure = None;
    let mut identity_checked = 0;
    for n in 1..=max_n {
        identity_checked += 1;
        if *t(n) != power_difference(n)? {
            first_failure = Some(n);
            break;
        }
    }
    let vars = VariableSet::xy();
    let x = MultiPoly::var(&vars, Var::X)?;
    let y = MultiPoly::var(&vars, Var::Y)?;
    let s = x.add(&y)?;
    let pr = x.mul(&y)?;
    let mut recurrence_checked = 0;
    if first_failure.is_none() {
        let zero = MultiPoly::zero(&vars);
        for n in 1..=RECURRENCE_MAX_N.min(max_n.saturating_sub(1)) {
            recurrence_checked += 1;
            let prev = if n == 1 { &zero } else { t(n - 1) };
            let next = s.mul(t(n))?.sub(&pr.mul(prev)?)?;
            if next != *t(n + 1) {
                first_failure = Some(n + 1);
                break;
            }
        }
    }
    Ok(Lemma1Report {
        max_n,
        identity_checked,
        recurrence_checked,
        first_failure,
        passed: first_failure.is_none(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(&VariableSet::abcx(), s).unwrap()
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(0, 1), BigInt::zero());
        assert_eq!(binomial(8, 3), BigInt::from(56));
        assert_eq!(binomial(5, -1), BigInt::zero());
    }

    #[test]
    fn pascal_table_invariants() {
        let t = BinomialTable::new(40);
        for n in 0..=40usize {
            assert!(t.get(n, 0).is_one() && t.get(n, n as i64).is_one());
            for k in 1..n as i64 {
                assert_eq!(t.get(n, k), t.get(n - 1, k - 1) + t.get(n - 1, k));
            }
        }
    }

    #[test]
    fn closed_small_cases() {
        assert_eq!(closed_p(0).unwrap(), p("x"));
        assert_eq!(closed_q(0).unwrap(), p("1"));
        assert_eq!(closed_p(1).unwrap(), p("a*x^2 - c"));
        assert_eq!(closed_q(1).unwrap(), p("2*a*x + b"));
        assert_eq!(
            closed_p(2).unwrap(),
            p("a^3*x^4 - 6*a^2*c*x^2 - 4*a*b*c*x + a*c^2 - b^2*c")
        );
        assert_eq!(
            closed_q(2).unwrap(),
            p("4*a^3*x^3 + 6*a^2*b*x^2 + 4*a*b^2*x - 4*a^2*c*x + b^3 - 2*a*b*c")
        );
    }

    #[test]
    fn closed_cap() {
        assert!(matches!(closed_p(9), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn audit_records_match_terms() {
        for n in 0..=5 {
            audit_check(n).unwrap();
        }
        // P_3, k = 1, j = 2: -(+1) C(8,1) C(3,2) a^3 b c^3 x
        let recs = audit(3).unwrap();
        let r = recs
            .iter()
            .find(|r| r.poly == Which::P && r.k == 1 && r.j == 2)
            .unwrap();
        assert_eq!(r.coeff, BigInt::from(-24));
        assert_eq!(r.monomial, [3, 1, 3, 1]);
        let line = serde_json::to_string(r).unwrap();
        assert_eq!(
            line,
            r#"{"poly":"P","n":3,"k":1,"j":2,"coeff":"-24","monomial":[3,1,3,1]}"#
        );
    }

    #[test]
    fn lemma1_small_cases() {
        let xy = VariableSet::xy();
        assert_eq!(
            lemma1_rhs(1).unwrap(),
            MultiPoly::parse(&xy, "x - y").unwrap()
        );
        assert_eq!(
            lemma1_rhs(2).unwrap(),
            MultiPoly::parse(&xy, "x^2 - y^2").unwrap()
        );
        let r5 = lemma1_rhs(5).unwrap();
        assert_eq!(r5, MultiPoly::parse(&xy, "x^5 - y^5").unwrap());
        assert!(r5.coeff_of("x^4*y").unwrap().is_zero());
        assert!(lemma1_rhs(0).is_err());
    }

    #[test]
    fn lemma1_check_reports() {
        let r = lemma1_check(2).unwrap();
        assert!(r.passed);
        assert_eq!(r.identity_checked, 2);
        let r = lemma1_check(10).unwrap();
        assert!(r.passed);
        assert_eq!(r.recurrence_checked, 9);
    }
}
