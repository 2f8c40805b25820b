//! Sylvester resultants over `Z[other variables]`.

use crate::error::{Error, Result};
use crate::polyring::{MultiPoly, Var};

/// Sylvester matrix of `p` and `r` with respect to `v`: `deg r` shifted rows
/// of `p`'s coefficients followed by `deg p` shifted rows of `r`'s, highest
/// power first.
pub fn sylvester_matrix(p: &MultiPoly, r: &MultiPoly, v: Var) -> Result<Vec<Vec<MultiPoly>>> {
    if p.vars() != r.vars() {
        return Err(Error::VarsetMismatch {
            left: p.vars().to_string(),
            right: r.vars().to_string(),
        });
    }
    let pc = p.as_univariate(v)?;
    let rc = r.as_univariate(v)?;
    if pc.is_empty() || rc.is_empty() {
        return Err(Error::InvalidArgument(
            "resultant of a zero polynomial".into(),
        ));
    }
    let (dp, dr) = (pc.len() - 1, rc.len() - 1);
    let size = dp + dr;
    let rest = p.vars().without(&[v]);
    let zero = MultiPoly::zero(&rest);
    let mut rows = Vec::with_capacity(size);
    for (coeffs, shifts) in [(&pc, dr), (&rc, dp)] {
        for s in 0..shifts {
            let mut row = vec![zero.clone(); size];
            for (k, c) in coeffs.iter().rev().enumerate() {
                row[s + k] = c.clone();
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Determinant by fraction-free (Bareiss) elimination. Every division is
/// exact in `Z[vars]`.
pub fn determinant(mut m: Vec<Vec<MultiPoly>>) -> Result<MultiPoly> {
    let n = m.len();
    if n == 0 {
        return Err(Error::InvalidArgument("empty matrix".into()));
    }
    let vars = m[0][0].vars().clone();
    let mut negate = false;
    let mut prev = MultiPoly::one(&vars);
    for k in 0..n.saturating_sub(1) {
        let Some(pivot) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Ok(MultiPoly::zero(&vars));
        };
        if pivot != k {
            m.swap(pivot, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let lhs = m[i][j].mul(&m[k][k])?;
                let num = if m[i][k].is_zero() || m[k][j].is_zero() {
                    lhs
                } else {
                    lhs.sub(&m[i][k].mul(&m[k][j])?)?
                };
                m[i][j] = num.div_exact(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { det.neg() } else { det })
}

/// `Res_v(p, r)` as a polynomial over the remaining variables.
pub fn resultant(p: &MultiPoly, r: &MultiPoly, v: Var) -> Result<MultiPoly> {
    determinant(sylvester_matrix(p, r, v)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::VariableSet;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(&VariableSet::abcx(), s).unwrap()
    }

    fn abc(s: &str) -> MultiPoly {
        MultiPoly::parse(&VariableSet::new(&[Var::A, Var::B, Var::C]).unwrap(), s).unwrap()
    }

    #[test]
    fn first_iterate_resultant_by_hand() {
        // | a   0  -c |
        // | 2a  b   0 |  = a*b^2 - 4*a^2*c
        // | 0   2a  b |
        let res = resultant(&p("a*x^2 - c"), &p("2*a*x + b"), Var::X).unwrap();
        assert_eq!(res, abc("a*b^2 - 4*a^2*c"));
    }

    #[test]
    fn common_root_gives_zero() {
        let res = resultant(&p("x^2 - a^2"), &p("x - a"), Var::X).unwrap();
        assert!(res.is_zero());
    }

    #[test]
    fn quadratic_and_its_derivative() {
        // Res(f, f') = -a * disc(f) for f = a x^2 + b x + c
        let res = resultant(&p("a*x^2 + b*x + c"), &p("2*a*x + b"), Var::X).unwrap();
        assert_eq!(res, abc("-a*b^2 + 4*a^2*c"));
    }

    #[test]
    fn pivoting_handles_zero_leading_entries() {
        let vars = VariableSet::new(&[Var::A]).unwrap();
        let c = |s: &str| MultiPoly::parse(&vars, s).unwrap();
        let zero = MultiPoly::zero(&vars);
        let m = vec![
            vec![zero.clone(), c("1"), c("a")],
            vec![c("a"), zero.clone(), c("1")],
            vec![c("1"), c("a"), zero],
        ];
        // 0*(0 - a) - 1*(0 - 1) + a*(a^2 - 0) = a^3 + 1
        assert_eq!(determinant(m).unwrap(), c("a^3 + 1"));
    }
}
