//! Zeta products, the J-integral family and the local identity, in the
//! variable `x = q^{-17s}`.

pub mod identity;
pub mod jfam;
pub mod named;

use thiserror::Error;

use crate::symra::{LaurentPoly, Ring, SymError};
pub use identity::{end_to_end, p_coefficient, tau_points, verify_check3, verify_finite_route, verify_tau_remark};
pub use jfam::{closed_i, j_oracle, Assembly, Case, TOp, Variant};
pub use named::{gk_product, named, AffineForm, GkContext, GkMode, ZetaMultiset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZetaError {
    #[error("unknown identifier {0}")]
    UnknownId(String),
    #[error("parameters out of range: {0}")]
    BadParams(String),
    #[error("invalid case tag {0}")]
    BadCase(String),
    #[error("malformed exponent form: {0}")]
    MalformedForm(String),
    #[error("singular exponent combination at monomial {0}")]
    Singular(String),
    #[error("root data: {0}")]
    Root(String),
    #[error(transparent)]
    Char(#[from] crate::g2chars::CharError),
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// A variable context whose first two variables are `x` and `q`.
#[derive(Clone, Debug)]
pub struct XQ {
    pub ring: Ring,
}

impl Default for XQ {
    fn default() -> Self {
        Self::new()
    }
}

impl XQ {
    /// Variables `x, q`.
    pub fn new() -> Self {
        XQ { ring: Ring::new(&["x", "q"]) }
    }

    /// Variables `x, q, X1..X6`.
    pub fn ext() -> Self {
        XQ { ring: Ring::new(&["x", "q", "X1", "X2", "X3", "X4", "X5", "X6"]) }
    }

    /// `x^a q^b`.
    pub fn m(&self, a: i32, b: i32) -> LaurentPoly {
        LaurentPoly::mono(&self.ring, &[(0, a), (1, b)])
    }

    /// `1 - x^a q^b`.
    pub fn b(&self, a: i32, b: i32) -> LaurentPoly {
        &LaurentPoly::one(&self.ring) - &self.m(a, b)
    }

    /// `prod (1 - x^a q^b)`.
    pub fn prod(&self, fs: &[(i32, i32)]) -> LaurentPoly {
        fs.iter().fold(LaurentPoly::one(&self.ring), |acc, &(a, b)| &acc * &self.b(a, b))
    }
}
