//! q-binomial coefficients and the algebra generated by `x`, `y` with
//! `yx = qxy`, where `q, a, b, c` commute with everything.
//!
//! Elements are stored normal-ordered: each word is `x^i y^j`, and the
//! commutation factor `q^(j k)` is applied when `(x^i y^j)(x^k y^l)` is
//! multiplied out.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::closedform::BinomialTable;
use crate::error::{Error, Result};
use crate::newton::{check_cap, NewtonPair};
use crate::polyring::{Monomial, MultiPoly, Rational, Var, VariableSet};

/// Largest `n` the noncommutative constructions run to by default.
pub const NC_DEFAULT_CAP: u32 = 4;

/// Coefficient ring `Z[q, a, b, c]`.
pub type QCoeff = MultiPoly;

pub fn qcoeff_vars() -> VariableSet {
    VariableSet::qabc()
}

/// The normal-ordered word `x^x y^y`. Ordered by total degree, then by the
/// power of `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NCWord {
    pub x: u32,
    pub y: u32,
}

impl NCWord {
    pub fn new(x: u32, y: u32) -> Self {
        NCWord { x, y }
    }

    pub fn degree(self) -> u32 {
        self.x + self.y
    }
}

impl Ord for NCWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.x.cmp(&other.x))
    }
}

impl PartialOrd for NCWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse sum of words with [`QCoeff`] coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCPoly {
    words: BTreeMap<NCWord, QCoeff>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly {
            words: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::term(NCWord::new(0, 0), MultiPoly::one(&qcoeff_vars()))
    }

    pub fn x() -> Self {
        Self::term(NCWord::new(1, 0), MultiPoly::one(&qcoeff_vars()))
    }

    pub fn y() -> Self {
        Self::term(NCWord::new(0, 1), MultiPoly::one(&qcoeff_vars()))
    }

    /// `coeff * word`; a zero coefficient gives the zero element.
    pub fn term(word: NCWord, coeff: QCoeff) -> Self {
        let mut out = NCPoly::zero();
        out.add_term(word, coeff);
        out
    }

    /// A commuting scalar (`a`, `b`, `c` or `q`) as an element.
    pub fn scalar_var(v: Var) -> Result<Self> {
        Ok(Self::term(
            NCWord::new(0, 0),
            MultiPoly::var(&qcoeff_vars(), v)?,
        ))
    }

    fn add_term(&mut self, word: NCWord, coeff: QCoeff) {
        if coeff.is_zero() {
            return;
        }
        debug_assert_eq!(coeff.vars(), &qcoeff_vars());
        match self.words.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff).expect("same coefficient ring");
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn num_words(&self) -> usize {
        self.words.len()
    }

    /// Words from the largest down.
    pub fn words(&self) -> impl Iterator<Item = (&NCWord, &QCoeff)> + '_ {
        self.words.iter().rev()
    }

    pub fn coeff(&self, word: NCWord) -> QCoeff {
        self.words
            .get(&word)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(&qcoeff_vars()))
    }

    /// `Some(d)` if every word has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.words.keys().map(|w| w.degree());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &other.words {
            out.add_term(*w, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &other.words {
            out.add_term(*w, c.neg());
        }
        out
    }

    pub fn scale(&self, k: &QCoeff) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.words {
            out.add_term(*w, c.mul(k).expect("same coefficient ring"));
        }
        out
    }

    /// Normal-ordered product: `(x^i y^j)(x^k y^l) = q^(jk) x^(i+k) y^(j+l)`.
    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        let vars = qcoeff_vars();
        let qi = vars.index_of(Var::Q).expect("q in qabc");
        let mut out = NCPoly::zero();
        for (w1, c1) in &self.words {
            for (w2, c2) in &other.words {
                let mut exps = vec![0u32; vars.len()];
                exps[qi] = w1.y * w2.x;
                let twist = MultiPoly::monomial(&vars, Monomial::new(exps), BigInt::one());
                let c = c1
                    .mul(c2)
                    .and_then(|c| c.mul(&twist))
                    .expect("same coefficient ring");
                out.add_term(NCWord::new(w1.x + w2.x, w1.y + w2.y), c);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> NCPoly {
        let mut result = NCPoly::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Sets `q = 1` and `y = 1`, landing in the commutative ring
    /// `Z[a, b, c, x]`.
    pub fn specialize_commutative(&self) -> Result<MultiPoly> {
        let target = VariableSet::abcx();
        let xi = target.index_of(Var::X).expect("x in abcx");
        let mut acc = MultiPoly::zero(&target);
        for (w, c) in &self.words {
            let scalar = c
                .substitute(&[(Var::Q, BigInt::one())])?
                .extend_to(&target)?;
            let mut exps = vec![0u32; target.len()];
            exps[xi] = w.x;
            let xw = MultiPoly::monomial(&target, Monomial::new(exps), BigInt::one());
            acc = acc.add(&scalar.mul(&xw)?)?;
        }
        Ok(acc)
    }
}

#[derive(Serialize, Deserialize)]
struct WordJson {
    x: u32,
    y: u32,
    coeff: MultiPoly,
}

#[derive(Serialize, Deserialize)]
struct NCPolyJson {
    words: Vec<WordJson>,
}

impl Serialize for NCPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        NCPolyJson {
            words: self
                .words()
                .map(|(w, c)| WordJson {
                    x: w.x,
                    y: w.y,
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NCPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = NCPolyJson::deserialize(d)?;
        let mut out = NCPoly::zero();
        for w in raw.words {
            if w.coeff.vars() != &qcoeff_vars() {
                return Err(D::Error::custom(
                    "word coefficients must be over a, b, c, q",
                ));
            }
            out.add_term(NCWord::new(w.x, w.y), w.coeff);
        }
        Ok(out)
    }
}

/// The Gaussian polynomial `[n, k]_q` via
/// `[n, k] = [n-1, k-1] + q^k [n-1, k]`, over `Z[q, a, b, c]` (only `q`
/// occurs). Zero outside `0 <= k <= n`.
pub fn qbinomial(n: u32, k: i64) -> QCoeff {
    QBinomialTable::new(n).get(n, k)
}

/// Rows `0..=max_n` of the q-Pascal triangle.
#[derive(Clone, Debug)]
pub struct QBinomialTable {
    rows: Vec<Vec<QCoeff>>,
}

impl QBinomialTable {
    pub fn new(max_n: u32) -> Self {
        let vars = qcoeff_vars();
        let one = MultiPoly::one(&vars);
        let mut rows: Vec<Vec<QCoeff>> = vec![vec![one.clone()]];
        for n in 1..=max_n as usize {
            let prev = &rows[n - 1];
            let mut row = vec![one.clone()];
            for k in 1..n {
                let shifted = prev[k]
                    .mul(&MultiPoly::var_pow(&vars, Var::Q, k as u32).expect("q in qabc"))
                    .expect("same ring");
                row.push(prev[k - 1].add(&shifted).expect("same ring"));
            }
            row.push(one.clone());
            rows.push(row);
        }
        QBinomialTable { rows }
    }

    pub fn get(&self, n: u32, k: i64) -> QCoeff {
        if k < 0 || k > i64::from(n) {
            return MultiPoly::zero(&qcoeff_vars());
        }
        self.rows[n as usize][k as usize].clone()
    }
}

/// `prod_{i=1}^{n-k} (1 - q^(i+k)) / (1 - q^i)` at an integer `q` with
/// `|q| >= 2`, in exact rational arithmetic.
pub fn qbinomial_product(n: u32, k: u32, q: i64) -> Result<Rational> {
    if k > n {
        return Ok(Rational::zero());
    }
    let q = Rational::from_integer(q.into());
    let mut acc = Rational::one();
    for i in 1..=(n - k) {
        let num = Rational::one() - num_traits::pow::pow(q.clone(), (i + k) as usize);
        let den = Rational::one() - num_traits::pow::pow(q.clone(), i as usize);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        acc = acc * num / den;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QBinomialReport {
    pub max_n: u32,
    pub theorem_checked: u32,
    pub product_checks: usize,
    pub first_failure: Option<String>,
    pub passed: bool,
}

/// `(x + y)^n = sum_k [n, k]_q x^k y^(n-k)` for `1 <= n <= max_n`.
pub fn qbinomial_theorem_check(max_n: u32) -> Result<QBinomialReport> {
    let table = QBinomialTable::new(max_n);
    let s = NCPoly::x().add(&NCPoly::y());
    let mut power = NCPoly::one();
    let mut first_failure = None;
    let mut checked = 0;
    for n in 1..=max_n {
        power = power.mul(&s);
        let mut expected = NCPoly::zero();
        for k in 0..=n {
            expected.add_term(NCWord::new(k, n - k), table.get(n, k.into()));
        }
        checked += 1;
        if power != expected {
            first_failure = Some(format!("(x + y)^{n}"));
            break;
        }
    }
    Ok(QBinomialReport {
        max_n,
        theorem_checked: checked,
        product_checks: 0,
        passed: first_failure.is_none(),
        first_failure,
    })
}

/// Compares `[n, k]_q` from the recurrence with the product formula at each
/// integer `q` in `qs`, for all `0 <= k <= n <= max_n`. Returns the number of
/// comparisons, or the first disagreement.
pub fn qbinomial_product_check(max_n: u32, qs: &[i64]) -> Result<usize, String> {
    let table = QBinomialTable::new(max_n);
    let mut count = 0;
    for &q in qs {
        let asg = [(Var::Q, Rational::from_integer(q.into()))]
            .into_iter()
            .collect();
        for n in 0..=max_n {
            for k in 0..=n {
                let lhs = table
                    .get(n, k.into())
                    .eval(&asg)
                    .map_err(|e| e.to_string())?;
                let rhs = qbinomial_product(n, k, q).map_err(|e| e.to_string())?;
                if lhs != rhs {
                    return Err(format!("[{n},{k}] at q = {q}: {lhs} vs {rhs}"));
                }
                count += 1;
            }
        }
    }
    Ok(count)
}

/// `(P'_n, Q'_n)` from `P' <- aP'^2 - cQ'^2`, `Q' <- aP'Q' + aQ'P' + bQ'^2`,
/// starting at `(x, y)`.
pub fn nc_iterate(n: u32) -> Result<(NCPoly, NCPoly)> {
    nc_iterate_capped(n, NC_DEFAULT_CAP)
}

pub fn nc_iterate_capped(n: u32, cap: u32) -> Result<(NCPoly, NCPoly)> {
    check_cap(n, cap)?;
    let a = MultiPoly::var(&qcoeff_vars(), Var::A)?;
    let b = MultiPoly::var(&qcoeff_vars(), Var::B)?;
    let c = MultiPoly::var(&qcoeff_vars(), Var::C)?;
    let (mut p, mut q) = (NCPoly::x(), NCPoly::y());
    for _ in 0..n {
        let pp = p.mul(&p);
        let qq = q.mul(&q);
        let pq = p.mul(&q);
        let qp = q.mul(&p);
        let next_p = pp.scale(&a).sub(&qq.scale(&c));
        let next_q = pq.add(&qp).scale(&a).add(&qq.scale(&b));
        p = next_p;
        q = next_q;
    }
    Ok((p, q))
}

/// The conjectured closed forms: the commutative double sums with
/// `[2^n, k]_q` in place of `C(2^n, k)` and each `x^k` followed by
/// `y^(2^n - k)`.
pub fn nc_closed(n: u32) -> Result<(NCPoly, NCPoly)> {
    nc_closed_capped(n, NC_DEFAULT_CAP)
}

pub fn nc_closed_capped(n: u32, cap: u32) -> Result<(NCPoly, NCPoly)> {
    check_cap(n, cap)?;
    let big_n = 1u32 << n;
    let qtable = QBinomialTable::new(big_n);
    let table = BinomialTable::new(big_n as usize);
    let vars = qcoeff_vars();
    let scalar = |k: u32, j: u32, b_exp: u32, c_exp: u32, c: BigInt| {
        // a^(k+j) b^b_exp c^c_exp over (a, b, c, q)
        MultiPoly::monomial(&vars, Monomial::new(vec![k + j, b_exp, c_exp, 0]), c)
    };

    let mut p = NCPoly::term(
        NCWord::new(big_n, 0),
        scalar(big_n - 1, 0, 0, 0, BigInt::one()),
    );
    if big_n >= 2 {
        for k in 0..=big_n - 2 {
            let qb = qtable.get(big_n, k.into());
            let mut inner = MultiPoly::zero(&vars);
            for j in 0..=big_n - k - 2 {
                let m = big_n - k - j - 2;
                if j > m {
                    break;
                }
                let mut coef = table.get(m as usize, j.into());
                if j % 2 == 0 {
                    coef = -coef;
                }
                inner = inner.add(&scalar(k, j, m - j, j + 1, coef))?;
            }
            p.add_term(NCWord::new(k, big_n - k), qb.mul(&inner)?);
        }
    }

    let mut q = NCPoly::zero();
    for k in 0..big_n {
        let qb = qtable.get(big_n, k.into());
        let mut inner = MultiPoly::zero(&vars);
        for j in 0..=big_n - k - 1 {
            let m = big_n - k - j - 1;
            if j > m {
                break;
            }
            let mut coef = table.get(m as usize, j.into());
            if j % 2 == 1 {
                coef = -coef;
            }
            inner = inner.add(&scalar(k, j, m - j, j, coef))?;
        }
        q.add_term(NCWord::new(k, big_n - k), qb.mul(&inner)?);
    }
    Ok((p, q))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureEntry {
    pub n: u32,
    pub p_matches: bool,
    pub q_matches: bool,
    /// First word (largest first) where the two routes disagree, as
    /// `(poly, x, y)`.
    pub first_difference: Option<(String, u32, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub max_n: u32,
    pub entries: Vec<ConjectureEntry>,
    pub passed: bool,
}

fn first_difference(lhs: &NCPoly, rhs: &NCPoly) -> Option<NCWord> {
    lhs.words
        .keys()
        .chain(rhs.words.keys())
        .copied()
        .filter(|w| lhs.coeff(*w) != rhs.coeff(*w))
        .max()
}

/// `nc_iterate(n)` vs `nc_closed(n)` for `0 <= n <= max_n`. A mismatch is
/// reported, not raised.
pub fn conjecture_check(max_n: u32) -> Result<ConjectureReport> {
    conjecture_check_capped(max_n, NC_DEFAULT_CAP)
}

pub fn conjecture_check_capped(max_n: u32, cap: u32) -> Result<ConjectureReport> {
    check_cap(max_n, cap)?;
    let mut entries = Vec::new();
    let (mut p, mut q) = (NCPoly::x(), NCPoly::y());
    for n in 0..=max_n {
        if n > 0 {
            let (np, nq) = step_nc(&p, &q)?;
            p = np;
            q = nq;
        }
        let (cp, cq) = nc_closed_capped(n, cap)?;
        let dp = first_difference(&p, &cp);
        let dq = first_difference(&q, &cq);
        let first = dp
            .map(|w| ("P".to_string(), w.x, w.y))
            .or(dq.map(|w| ("Q".to_string(), w.x, w.y)));
        entries.push(ConjectureEntry {
            n,
            p_matches: dp.is_none(),
            q_matches: dq.is_none(),
            first_difference: first,
        });
    }
    let passed = entries.iter().all(|e| e.p_matches && e.q_matches);
    Ok(ConjectureReport {
        max_n,
        entries,
        passed,
    })
}

fn step_nc(p: &NCPoly, q: &NCPoly) -> Result<(NCPoly, NCPoly)> {
    let vars = qcoeff_vars();
    let a = MultiPoly::var(&vars, Var::A)?;
    let b = MultiPoly::var(&vars, Var::B)?;
    let c = MultiPoly::var(&vars, Var::C)?;
    let qq = q.mul(q);
    Ok((
        p.mul(p).scale(&a).sub(&qq.scale(&c)),
        p.mul(q).add(&q.mul(p)).scale(&a).add(&qq.scale(&b)),
    ))
}

/// Whether `q = 1, y = 1` collapses `(P'_n, Q'_n)` onto `(P_n, Q_n)`.
pub fn specializes_to(nc: &(NCPoly, NCPoly), pair: &NewtonPair) -> Result<bool> {
    Ok(nc.0.specialize_commutative()? == pair.p && nc.1.specialize_commutative()? == pair.q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::iterate_pair;

    fn qc(s: &str) -> QCoeff {
        MultiPoly::parse(&qcoeff_vars(), s).unwrap()
    }

    #[test]
    fn qbinomial_examples() {
        assert!(qbinomial(5, 0).is_one());
        assert_eq!(qbinomial(2, 1), qc("1 + q"));
        assert_eq!(qbinomial(4, 2), qc("1 + q + 2*q^2 + q^3 + q^4"));
        assert!(qbinomial(3, 4).is_zero());
        assert!(qbinomial(3, -1).is_zero());
    }

    #[test]
    fn product_formula_small() {
        // [4,2] at q = 2: 1 + 2 + 8 + 8 + 16 = 35
        assert_eq!(
            qbinomial_product(4, 2, 2).unwrap(),
            Rational::from_integer(35.into())
        );
        assert_eq!(qbinomial_product_check(6, &[2, 3]).unwrap(), 2 * 28);
    }

    #[test]
    fn commutation_rule() {
        let yx = NCPoly::y().mul(&NCPoly::x());
        assert_eq!(yx, NCPoly::term(NCWord::new(1, 1), qc("q")));
        let s = NCPoly::x().add(&NCPoly::y());
        let sq = s.mul(&s);
        assert_eq!(sq.coeff(NCWord::new(1, 1)), qc("1 + q"));
        assert!(sq.coeff(NCWord::new(2, 0)).is_one());
        assert!(sq.coeff(NCWord::new(0, 2)).is_one());
        assert_eq!(s.mul(&NCPoly::one()), s);
    }

    #[test]
    fn theorem_small() {
        let r = qbinomial_theorem_check(6).unwrap();
        assert!(r.passed);
        assert_eq!(r.theorem_checked, 6);
    }

    #[test]
    fn nc_iterate_first_steps() {
        let (p0, q0) = nc_iterate(0).unwrap();
        assert_eq!((p0, q0), (NCPoly::x(), NCPoly::y()));
        let (p1, q1) = nc_iterate(1).unwrap();
        assert_eq!(p1.coeff(NCWord::new(2, 0)), qc("a"));
        assert_eq!(p1.coeff(NCWord::new(0, 2)), qc("-c"));
        assert_eq!(p1.num_words(), 2);
        assert_eq!(q1.coeff(NCWord::new(1, 1)), qc("a + a*q"));
        assert_eq!(q1.coeff(NCWord::new(0, 2)), qc("b"));
        assert_eq!(q1.num_words(), 2);
        assert!(specializes_to(&(p1, q1), &iterate_pair(1).unwrap()).unwrap());
    }

    #[test]
    fn nc_closed_first_steps() {
        assert_eq!(nc_closed(0).unwrap(), (NCPoly::x(), NCPoly::y()));
        assert_eq!(nc_closed(1).unwrap(), nc_iterate(1).unwrap());
        let (_, q2) = nc_closed(2).unwrap();
        assert_eq!(
            q2.coeff(NCWord::new(1, 3)),
            qc("1 + q + q^2 + q^3").mul(&qc("a*b^2 - a^2*c")).unwrap()
        );
    }

    #[test]
    fn cap_applies() {
        assert!(nc_iterate(5).is_err());
        assert!(nc_closed(5).is_err());
    }

    #[test]
    fn homogeneous_outputs() {
        for n in 0..=3 {
            let (p, q) = nc_iterate(n).unwrap();
            assert_eq!(p.homogeneous_degree(), Some(1 << n));
            assert_eq!(q.homogeneous_degree(), Some(1 << n));
        }
    }

    #[test]
    fn ncpoly_json_round_trip() {
        let (_, q1) = nc_iterate(1).unwrap();
        let s = serde_json::to_string(&q1).unwrap();
        assert!(s.starts_with(r#"{"words":[{"x":1,"y":1,"coeff":{"vars":["a","b","c","q"]"#));
        assert_eq!(serde_json::from_str::<NCPoly>(&s).unwrap(), q1);
    }
}
