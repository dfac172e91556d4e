//! Exact sparse Laurent polynomials and unreduced rational functions over ℚ.
//!
//! Every symbolic computation in the crate bottoms out here. Coefficients are
//! arbitrary-precision rationals; exponents are signed so that cluster
//! variables can be carried in Laurent form. Terms are kept in graded
//! lexicographic order, which fixes both the leading term used by exact
//! division and the canonical text/JSON serialization.

mod json;
mod monomial;
mod poly;
mod rational;
mod text;
mod varset;

pub use json::{PolyJson, RationalJson, TermJson};
pub use monomial::Monomial;
pub use poly::LaurentPoly;
pub use rational::RationalFn;
pub use varset::VarSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

/// Exact rational coefficient; always stored in lowest terms with a positive
/// denominator.
pub type Coef = BigRational;

/// Builds an integer coefficient.
pub fn coef(n: i64) -> Coef {
    BigRational::from_integer(BigInt::from(n))
}

/// Builds the coefficient `n / d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Coef {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgError {
    #[error("operands live over different variable sets")]
    VarSetMismatch,
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("no Laurent-polynomial quotient exists")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("no image given for variable `{0}`")]
    MissingImage(String),
    #[error("variable `{0}` is assigned zero but occurs with a negative exponent")]
    EvalDomain(String),
    #[error("negative power of a non-monomial image of `{0}`")]
    NotLaurent(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = AlgError> = std::result::Result<T, E>;
