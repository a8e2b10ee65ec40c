//! Exact Laurent polynomials and fractions over the integers.

mod cyclo;
mod parse;
mod poly;
mod ratfunc;
mod series;

pub use cyclo::{cyclotomic, decompose_binomial, CycloFactor};
pub use parse::{parse, parse_poly};
pub use poly::{LaurentPoly, Monomial, Ring};
pub use ratfunc::RatFunc;
pub use series::{truncate, Series};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymError {
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("division is not exact")]
    InexactDivision,
    #[error("not a product of binomials: {0}")]
    NotBinomial(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("values from different variable contexts")]
    RingMismatch,
    #[error("not a power series: {0}")]
    NotPowerSeries(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
