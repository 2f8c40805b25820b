//! Dense univariate polynomials over the rationals, enough for Euclidean GCDs
//! of specialized Newton pairs.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyring::{MultiPoly, Rational, Var};

/// Coefficients from the constant term upward, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    /// Converts a polynomial whose only variable is `v`.
    pub fn from_multi(p: &MultiPoly, v: Var) -> Result<Self> {
        if p.vars().vars() != [v] {
            return Err(Error::InvalidArgument(format!(
                "expected a polynomial in {v} alone, got one over {}",
                p.vars()
            )));
        }
        let coeffs = p
            .as_univariate(v)?
            .into_iter()
            .map(|c| {
                c.terms()
                    .next()
                    .map(|(_, k)| Rational::from_integer(k.clone()))
                    .unwrap_or_else(Rational::zero)
            })
            .collect();
        Ok(UniPoly::new(coeffs))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> UniPoly {
        match self.lead() {
            None => UniPoly::zero(),
            Some(l) => {
                let l = l.clone();
                UniPoly::new(self.coeffs.iter().map(|c| c / &l).collect())
            }
        }
    }

    pub fn rem(&self, divisor: &UniPoly) -> Result<UniPoly> {
        let dl = divisor.lead().ok_or(Error::DivisionByZero)?.clone();
        let dd = divisor.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let factor = &r[top] / &dl;
            let shift = top - dd;
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                let t = &factor * dc;
                r[shift + i] -= t;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Ok(UniPoly::new(r))
    }

    /// Monic GCD; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut u, mut v) = (self.clone(), other.clone());
        while !v.is_zero() {
            let r = u.rem(&v).expect("v is nonzero");
            u = v;
            v = r;
        }
        u.monic()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }
}
