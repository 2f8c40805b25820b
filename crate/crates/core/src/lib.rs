//! Exact symbolic Newton iterates for the general quadratic `ax^2 + bx + c`.
//!
//! The numerator/denominator pair `(P_n, Q_n)` of the `n`-th symbolic Newton
//! iterate is built three independent ways:
//!
//! * [`newton::iterate_pair`] squares its way up the rational recurrence,
//! * [`closedform::closed_p`] / [`closedform::closed_q`] sum the explicit
//!   binomial double sums,
//! * [`quadfield::root_form_pair`] expands the root form in `Q(sqrt d)`.
//!
//! On top of these sit coefficient smoothness certification
//! ([`smoothness`]), a coprimality certificate ([`newton::coprimality_check`])
//! and the noncommutative `yx = qxy` analogue ([`qalgebra`]).

pub mod closedform;
pub mod error;
pub mod newton;
pub mod polyring;
pub mod qalgebra;
pub mod quadfield;
pub mod resultant;
pub mod smoothness;
pub mod univariate;

pub use error::{Error, Result};
pub use polyring::{Monomial, MultiPoly, Rational, Var, VariableSet};
