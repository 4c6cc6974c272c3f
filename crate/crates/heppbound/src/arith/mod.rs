//! Exact arithmetic: arbitrary-precision rationals, univariate polynomials
//! over the rationals, and univariate rational functions with simple-pole
//! residue extraction.

mod poly;
mod ratfunc;
mod rational;

pub use poly::UniPoly;
pub use ratfunc::UniRatFunc;
pub use rational::Rational;

use thiserror::Error;

/// Errors raised by exact-arithmetic operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at evaluation point")]
    PoleAtPoint,
    #[error("denominator zero of order {order} at requested point, expected 1")]
    NotSimplePole { order: usize },
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}
