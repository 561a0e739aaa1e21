//! Exact sparse multivariate polynomials over the rationals, the expression
//! parser, and linear coordinate changes.

mod frame;
mod linear;
mod monomial;
mod parser;
mod polynomial;

pub use frame::VariableFrame;
pub use linear::{apply_linear_change, LinearChange};
pub use monomial::Monomial;
pub use parser::{parse_polynomial, ParseError};
pub use polynomial::{rational, Polynomial, Rational};
