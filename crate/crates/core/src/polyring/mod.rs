//! Exact multivariate polynomials over ℚ with pluggable monomial orders.

mod division;
mod monomial;
mod order;
mod polynomial;
mod text;

pub use division::{exact_divide, reduce, Division};
pub use monomial::{Monomial, Var};
pub use order::{MonomialOrder, OrderKind};
pub(crate) use polynomial::ratio_to_f64;
pub use polynomial::{Coeff, Polynomial};
pub use text::{display, format, parse, DisplayPoly, NameTable, VarNames};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial is not divisible by the given factor")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{name}` at offset {position}")]
    UnknownVariable { name: String, position: usize },
}

/// Shorthand for the integer constant `n` as a polynomial.
pub fn int(n: i64) -> Polynomial {
    Polynomial::integer(n)
}
