//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients.
//!
//! Every polynomial lives over a [`VariableSet`], an ordered subset of the
//! fixed global order `a < b < c < q < x < y`. Terms are kept in a canonical
//! sparse map (no zero coefficients, one entry per monomial), so structural
//! equality of two polynomials over the same variable set is equality of the
//! polynomials.
//!
//! Monomials are ordered graded-lexicographically; iteration and
//! serialization list terms from the largest monomial down.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational numbers, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// A value for each variable an evaluation needs.
pub type Assignment = BTreeMap<Var, Rational>;

/// The indeterminates used anywhere in the crate, in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    A,
    B,
    C,
    Q,
    X,
    Y,
}

impl Var {
    pub const ALL: [Var; 6] = [Var::A, Var::B, Var::C, Var::Q, Var::X, Var::Y];

    pub fn name(self) -> &'static str {
        match self {
            Var::A => "a",
            Var::B => "b",
            Var::C => "c",
            Var::Q => "q",
            Var::X => "x",
            Var::Y => "y",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Var::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown variable `{s}`")))
    }
}

/// An ordered set of distinct variables. Construction sorts into the
/// canonical global order, so two sets with the same members are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VariableSet(Vec<Var>);

impl VariableSet {
    pub fn new(vars: &[Var]) -> Result<Self> {
        let mut sorted = vars.to_vec();
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateVariable(w[0]));
            }
        }
        Ok(VariableSet(sorted))
    }

    fn from_sorted(vars: Vec<Var>) -> Self {
        debug_assert!(vars.windows(2).all(|w| w[0] < w[1]));
        VariableSet(vars)
    }

    /// `{a, b, c, x}`, home of the commutative pair `(P_n, Q_n)`.
    pub fn abcx() -> Self {
        Self::from_sorted(vec![Var::A, Var::B, Var::C, Var::X])
    }

    /// `{q, a, b, c}` (stored as `a, b, c, q`), the scalars of the q-algebra.
    pub fn qabc() -> Self {
        Self::from_sorted(vec![Var::A, Var::B, Var::C, Var::Q])
    }

    pub fn xy() -> Self {
        Self::from_sorted(vec![Var::X, Var::Y])
    }

    pub fn single(v: Var) -> Self {
        Self::from_sorted(vec![v])
    }

    pub fn empty() -> Self {
        Self::from_sorted(Vec::new())
    }

    pub fn vars(&self) -> &[Var] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, v: Var) -> Option<usize> {
        self.0.iter().position(|&w| w == v)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.0.contains(&v)
    }

    pub fn is_subset_of(&self, other: &VariableSet) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }

    /// The set with `removed` taken out; unknown variables are ignored.
    pub fn without(&self, removed: &[Var]) -> Self {
        Self::from_sorted(
            self.0
                .iter()
                .copied()
                .filter(|v| !removed.contains(v))
                .collect(),
        )
    }
}

impl fmt::Display for VariableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Exponent vector parallel to some [`VariableSet`].
///
/// `Ord` is graded lexicographic: total degree first, then the exponent
/// vectors compared lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(len: usize) -> Self {
        Monomial(vec![0; len])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(x, y)| x + y).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(x, y)| x <= y)
    }

    /// `other / self`; caller guarantees `self.divides(other)`.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(x, y)| x - y).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in `Z[vars]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    vars: VariableSet,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero(vars: &VariableSet) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &VariableSet) -> Self {
        Self::constant(vars, BigInt::one())
    }

    pub fn constant(vars: &VariableSet, c: impl Into<BigInt>) -> Self {
        Self::monomial(vars, Monomial::one(vars.len()), c.into())
    }

    /// `c * m`; a zero `c` gives the zero polynomial.
    pub fn monomial(vars: &VariableSet, m: Monomial, c: BigInt) -> Self {
        debug_assert_eq!(m.0.len(), vars.len());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn var(vars: &VariableSet, v: Var) -> Result<Self> {
        Self::var_pow(vars, v, 1)
    }

    pub fn var_pow(vars: &VariableSet, v: Var, e: u32) -> Result<Self> {
        let i = vars.index_of(v).ok_or(Error::UnknownVariable(v))?;
        let mut exps = vec![0; vars.len()];
        exps[i] = e;
        Ok(Self::monomial(vars, Monomial(exps), BigInt::one()))
    }

    /// Builds a canonical polynomial from arbitrary `(exponents, coeff)`
    /// pairs: repeated monomials are summed and zero sums dropped.
    pub fn from_terms<I>(vars: &VariableSet, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut out = BTreeMap::new();
        for (exps, c) in terms {
            if exps.len() != vars.len() {
                return Err(Error::ExponentLength {
                    expected: vars.len(),
                    got: exps.len(),
                });
            }
            add_term(&mut out, Monomial(exps), c);
        }
        Ok(MultiPoly {
            vars: vars.clone(),
            terms: out,
        })
    }

    /// Parses a sum of terms such as `"a^3*x^4 - 6*a^2*c*x^2 + 1"`.
    ///
    /// Only flat sums of products are accepted (no parentheses); this is the
    /// same shape [`fmt::Display`] produces.
    pub fn parse(vars: &VariableSet, src: &str) -> Result<Self> {
        let mut out = BTreeMap::new();
        let cleaned: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut chunks = Vec::new();
        let mut start = 0;
        for (i, ch) in cleaned.char_indices() {
            if (ch == '+' || ch == '-') && i > start {
                chunks.push(&cleaned[start..i]);
                start = i;
            }
        }
        chunks.push(&cleaned[start..]);
        for chunk in chunks {
            let (sign, body) = match chunk.as_bytes()[0] {
                b'-' => (-1, &chunk[1..]),
                b'+' => (1, &chunk[1..]),
                _ => (1, chunk),
            };
            if body.is_empty() {
                return Err(Error::Parse(format!("dangling sign in `{src}`")));
            }
            let mut coeff = BigInt::from(sign);
            let mut exps = vec![0u32; vars.len()];
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in `{src}`")));
                }
                if factor.as_bytes()[0].is_ascii_digit() {
                    let n: BigInt = factor
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad integer `{factor}`")))?;
                    coeff *= n;
                    continue;
                }
                let (name, e) = match factor.split_once('^') {
                    Some((name, e)) => (
                        name,
                        e.parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad exponent `{e}`")))?,
                    ),
                    None => (factor, 1),
                };
                let v: Var = name.parse()?;
                let i = vars.index_of(v).ok_or(Error::UnknownVariable(v))?;
                exps[i] += e;
            }
            add_term(&mut out, Monomial(exps), coeff);
        }
        Ok(MultiPoly {
            vars: vars.clone(),
            terms: out,
        })
    }

    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the largest monomial (graded lex) down.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Coefficient of the monomial given as a product such as `"a^2*c*x^2"`.
    pub fn coeff_of(&self, monomial: &str) -> Result<BigInt> {
        let m = MultiPoly::parse(&self.vars, monomial)?;
        let (mono, c) = m
            .leading_term()
            .ok_or_else(|| Error::Parse(format!("`{monomial}` is not a monomial")))?;
        if m.num_terms() != 1 || !c.is_one() {
            return Err(Error::Parse(format!("`{monomial}` is not a monomial")));
        }
        Ok(self.coeff(mono))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree in `v`, `None` for the zero polynomial.
    pub fn degree_in(&self, v: Var) -> Result<Option<u32>> {
        let i = self.vars.index_of(v).ok_or(Error::UnknownVariable(v))?;
        Ok(self.terms.keys().map(|m| m.0[i]).max())
    }

    fn check_same_vars(&self, other: &MultiPoly) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VarsetMismatch {
                left: self.vars.to_string(),
                right: other.vars.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            add_term(&mut out.terms, m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            add_term(&mut out.terms, m.clone(), -c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> MultiPoly {
        if k.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same_vars(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(MultiPoly::zero(&self.vars));
        }
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(self.terms.len() * other.terms.len() / 2 + 1);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *acc.entry(m1.mul(m2)).or_default() += c1 * c2;
            }
        }
        Ok(MultiPoly {
            vars: self.vars.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    /// `self^e` by repeated squaring; `p^0 = 1` (including `0^0`).
    pub fn pow(&self, mut e: u64) -> MultiPoly {
        let mut result = MultiPoly::one(&self.vars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same variable set");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same variable set");
            }
        }
        result
    }

    /// Exact quotient `self / divisor`. Fails with [`Error::NotDivisible`]
    /// when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Result<MultiPoly> {
        self.check_same_vars(divisor)?;
        let (lead_m, lead_c) = divisor.leading_term().ok_or(Error::DivisionByZero)?;
        let (lead_m, lead_c) = (lead_m.clone(), lead_c.clone());
        let mut rem = self.terms.clone();
        let mut quot = BTreeMap::new();
        while let Some((m, c)) = rem.iter().next_back() {
            if !lead_m.divides(m) {
                return Err(Error::NotDivisible);
            }
            let (qc, r) = c.div_rem(&lead_c);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            let qm = lead_m.quotient_of(m);
            for (dm, dc) in &divisor.terms {
                add_term(&mut rem, dm.mul(&qm), -(dc * &qc));
            }
            quot.insert(qm, qc);
        }
        Ok(MultiPoly {
            vars: self.vars.clone(),
            terms: quot,
        })
    }

    /// Exact value at a rational point. Variables that occur in no term may
    /// be left unassigned.
    pub fn eval(&self, assignment: &Assignment) -> Result<Rational> {
        let mut values = Vec::with_capacity(self.vars.len());
        for (i, &v) in self.vars.vars().iter().enumerate() {
            let used = self.terms.keys().any(|m| m.0[i] > 0);
            match assignment.get(&v) {
                Some(val) => values.push(val.clone()),
                None if !used => values.push(Rational::zero()),
                None => return Err(Error::MissingAssignment(v)),
            }
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = Rational::from_integer(c.clone());
            for (val, &e) in values.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow::pow(val.clone(), e as usize);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Specializes the bound variables to integers; the result lives over the
    /// remaining variables.
    pub fn substitute(&self, bindings: &[(Var, BigInt)]) -> Result<MultiPoly> {
        let mut idx = Vec::with_capacity(bindings.len());
        for (v, val) in bindings {
            let i = self.vars.index_of(*v).ok_or(Error::UnknownVariable(*v))?;
            if idx.iter().any(|(j, _)| *j == i) {
                return Err(Error::DuplicateVariable(*v));
            }
            idx.push((i, val));
        }
        let bound: Vec<Var> = bindings.iter().map(|(v, _)| *v).collect();
        let new_vars = self.vars.without(&bound);
        let keep: Vec<usize> = (0..self.vars.len())
            .filter(|i| !idx.iter().any(|(j, _)| j == i))
            .collect();
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            for &(i, val) in &idx {
                let e = m.0[i];
                if e > 0 {
                    coeff *= num_traits::pow::pow(val.clone(), e as usize);
                }
            }
            let exps = keep.iter().map(|&i| m.0[i]).collect();
            add_term(&mut out, Monomial(exps), coeff);
        }
        Ok(MultiPoly {
            vars: new_vars,
            terms: out,
        })
    }

    /// Views `self` as a polynomial in `v` whose coefficients live over the
    /// other variables. Index `k` of the result is the coefficient of `v^k`.
    pub fn as_univariate(&self, v: Var) -> Result<Vec<MultiPoly>> {
        let i = self.vars.index_of(v).ok_or(Error::UnknownVariable(v))?;
        let rest = self.vars.without(&[v]);
        let deg = self.terms.keys().map(|m| m.0[i]).max();
        let Some(deg) = deg else {
            return Ok(Vec::new());
        };
        let mut coeffs = vec![MultiPoly::zero(&rest); deg as usize + 1];
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            let k = exps.remove(i);
            coeffs[k as usize].terms.insert(Monomial(exps), c.clone());
        }
        Ok(coeffs)
    }

    /// Re-expresses `self` over a larger variable set.
    pub fn extend_to(&self, target: &VariableSet) -> Result<MultiPoly> {
        if !self.vars.is_subset_of(target) {
            return Err(Error::VarsetMismatch {
                left: self.vars.to_string(),
                right: target.to_string(),
            });
        }
        let pos: Vec<usize> = self
            .vars
            .vars()
            .iter()
            .map(|&v| target.index_of(v).expect("subset"))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = vec![0; target.len()];
                for (&p, &e) in pos.iter().zip(&m.0) {
                    exps[p] = e;
                }
                (Monomial(exps), c.clone())
            })
            .collect();
        Ok(MultiPoly {
            vars: target.clone(),
            terms,
        })
    }

    pub fn to_latex(&self) -> String {
        self.render(Style::Latex)
    }

    fn render(&self, style: Style) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let abs = c.abs();
            let mut factors = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (&v, &e) in self.vars.vars().iter().zip(&m.0) {
                match (e, style) {
                    (0, _) => {}
                    (1, _) => factors.push(v.to_string()),
                    (e, Style::Text) => factors.push(format!("{v}^{e}")),
                    (e, Style::Latex) => factors.push(format!("{v}^{{{e}}}")),
                }
            }
            let sep = match style {
                Style::Text => "*",
                Style::Latex => " ",
            };
            out.push_str(&factors.join(sep));
        }
        out
    }
}

#[derive(Clone, Copy)]
enum Style {
    Text,
    Latex,
}

/// Plain-text rendering, e.g. `a*x^2 - c`. Parseable by [`MultiPoly::parse`].
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Text))
    }
}

fn add_term(terms: &mut BTreeMap<Monomial, BigInt>, m: Monomial, c: BigInt) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<u32>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: Vec<Var>,
    terms: Vec<TermJson>,
}

impl Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            vars: self.vars.vars().to_vec(),
            terms: self
                .terms()
                .map(|(m, c)| TermJson {
                    exp: m.0.clone(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PolyJson::deserialize(d)?;
        if raw.vars.windows(2).any(|w| w[0] >= w[1]) {
            return Err(D::Error::custom(
                "variables must be distinct and in canonical order a, b, c, q, x, y",
            ));
        }
        let vars = VariableSet::from_sorted(raw.vars);
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            let c: BigInt = t
                .coeff
                .parse()
                .map_err(|_| D::Error::custom(format!("bad coefficient `{}`", t.coeff)))?;
            terms.push((t.exp, c));
        }
        MultiPoly::from_terms(&vars, terms).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abcx() -> VariableSet {
        VariableSet::abcx()
    }

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(&abcx(), s).unwrap()
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn add_identity_and_cancellation() {
        let f = p("a*x^2 - c");
        assert_eq!(f.add(&MultiPoly::zero(&abcx())).unwrap(), f);
        let g = p("x^2 + c").add(&p("-c")).unwrap();
        assert_eq!(g, p("x^2"));
        assert_eq!(g.num_terms(), 1);
        assert_eq!(p("2*a*x").add(&p("b")).unwrap(), p("2*a*x + b"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(p("x + b").mul(&p("x - b")).unwrap(), p("x^2 - b^2"));
        assert_eq!(p("2*a*x + b").pow(2), p("4*a^2*x^2 + 4*a*b*x + b^2"));
        assert_eq!(
            p("a*x^2 - c").mul(&p("a*x^2 - c")).unwrap(),
            p("a^2*x^4 - 2*a*c*x^2 + c^2")
        );
    }

    #[test]
    fn pow_examples() {
        let xy = VariableSet::xy();
        let s = MultiPoly::parse(&xy, "x + y").unwrap();
        assert!(s.pow(0).is_one());
        assert_eq!(
            s.pow(2),
            MultiPoly::parse(&xy, "x^2 + 2*x*y + y^2").unwrap()
        );
        assert_eq!(
            s.pow(4),
            MultiPoly::parse(&xy, "x^4 + 4*x^3*y + 6*x^2*y^2 + 4*x*y^3 + y^4").unwrap()
        );
    }

    #[test]
    fn varset_mismatch_is_an_error() {
        let f = MultiPoly::parse(&VariableSet::xy(), "x").unwrap();
        let g = p("x");
        assert!(matches!(f.add(&g), Err(Error::VarsetMismatch { .. })));
        assert!(matches!(f.mul(&g), Err(Error::VarsetMismatch { .. })));
    }

    #[test]
    fn eval_examples() {
        let mut asg = Assignment::new();
        asg.insert(Var::X, rat(3, 1));
        assert_eq!(p("x^2 - 2").eval(&asg).unwrap(), rat(7, 1));

        asg.insert(Var::A, rat(1, 1));
        asg.insert(Var::B, rat(-3, 1));
        assert_eq!(p("2*a*x + b").eval(&asg).unwrap(), rat(3, 1));

        let p2 = p("a^3*x^4 - 6*a^2*c*x^2 - 4*a*b*c*x + a*c^2 - b^2*c");
        let asg: Assignment = [
            (Var::A, rat(1, 1)),
            (Var::B, rat(0, 1)),
            (Var::C, rat(-1, 1)),
            (Var::X, rat(2, 1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(p2.eval(&asg).unwrap(), rat(41, 1));
    }

    #[test]
    fn eval_missing_assignment() {
        let asg: Assignment = [(Var::X, rat(1, 2))].into_iter().collect();
        assert_eq!(p("a*x").eval(&asg), Err(Error::MissingAssignment(Var::A)));
        // unused variables need no value
        assert_eq!(p("x^2").eval(&asg).unwrap(), rat(1, 4));
    }

    #[test]
    fn substitute_examples() {
        let f = p("a*x^2 - c")
            .substitute(&[(Var::A, 1.into()), (Var::C, (-1).into())])
            .unwrap();
        let bx = VariableSet::new(&[Var::B, Var::X]).unwrap();
        assert_eq!(f, MultiPoly::parse(&bx, "x^2 + 1").unwrap());

        let g = p("a*x^2 - c");
        assert_eq!(g.substitute(&[]).unwrap(), g);

        let h = p("2*a*x + b")
            .substitute(&[(Var::A, 1.into()), (Var::B, 0.into())])
            .unwrap();
        let cx = VariableSet::new(&[Var::C, Var::X]).unwrap();
        assert_eq!(h, MultiPoly::parse(&cx, "2*x").unwrap());
    }

    #[test]
    fn div_exact_recovers_factor() {
        let f = p("a*x + b");
        let g = p("b^2 - 4*a*c + x");
        let prod = f.mul(&g).unwrap();
        assert_eq!(prod.div_exact(&f).unwrap(), g);
        assert_eq!(prod.div_exact(&g).unwrap(), f);
        assert_eq!(p("x^2 + 1").div_exact(&p("x")), Err(Error::NotDivisible));
        assert_eq!(p("3*x").div_exact(&p("2*x")), Err(Error::NotDivisible));
    }

    #[test]
    fn as_univariate_splits_by_degree() {
        let f = p("a^3*x^4 - 6*a^2*c*x^2 - 4*a*b*c*x + a*c^2 - b^2*c");
        let cs = f.as_univariate(Var::X).unwrap();
        let abc = VariableSet::new(&[Var::A, Var::B, Var::C]).unwrap();
        assert_eq!(cs.len(), 5);
        assert_eq!(cs[4], MultiPoly::parse(&abc, "a^3").unwrap());
        assert!(cs[3].is_zero());
        assert_eq!(cs[0], MultiPoly::parse(&abc, "a*c^2 - b^2*c").unwrap());
    }

    #[test]
    fn display_and_latex() {
        let f = p("a*x^2 - c");
        assert_eq!(f.to_string(), "a*x^2 - c");
        assert_eq!(f.to_latex(), "a x^{2} - c");
        assert_eq!(p("2*a*x + b").to_latex(), "2 a x + b");
        assert_eq!(MultiPoly::zero(&abcx()).to_string(), "0");
        assert_eq!(p("-1").to_string(), "-1");
    }

    #[test]
    fn json_layout_matches_schema() {
        let f = p("a*x^2 - c");
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(
            s,
            r#"{"vars":["a","b","c","x"],"terms":[{"exp":[1,0,0,2],"coeff":"1"},{"exp":[0,0,1,0],"coeff":"-1"}]}"#
        );
        let back: MultiPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn json_rejects_noncanonical_vars() {
        let s = r#"{"vars":["x","a"],"terms":[]}"#;
        assert!(serde_json::from_str::<MultiPoly>(s).is_err());
        let s = r#"{"vars":["a","x"],"terms":[{"exp":[1],"coeff":"1"}]}"#;
        assert!(serde_json::from_str::<MultiPoly>(s).is_err());
    }

    #[test]
    fn graded_lex_order() {
        let lo = Monomial::new(vec![0, 0, 1, 0]);
        let hi = Monomial::new(vec![1, 0, 0, 2]);
        assert!(lo < hi);
        // same degree: lexicographic on the exponent vector
        assert!(Monomial::new(vec![0, 1, 0, 0]) < Monomial::new(vec![1, 0, 0, 0]));
    }
}
