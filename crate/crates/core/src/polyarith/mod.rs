//! Exact sparse multivariate polynomials over the rationals, graded by
//! positive variable weights, together with polynomial matrices and graded
//! ring maps.

mod matrix;
mod parse;
mod poly;
mod ring;
mod ringmap;

use thiserror::Error;

pub use matrix::PolyMatrix;
pub use parse::{format_poly, parse_poly};
pub use poly::{Polynomial, Term};
pub use ring::{Monomial, MonomialOrder, PolyRing, RingRef, VariableSpec};
pub use ringmap::RingMap;

/// Exact rational coefficient, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("invalid variable: {0}")]
    InvalidVariable(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("map is not graded: {0}")]
    NotGraded(String),
}

/// Convenience: `n/d` as a [`Rational`].
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
