//! Exact sparse Laurent polynomials and rational functions over the rationals.

mod context;
mod gcd;
mod laurent;
mod parse;
mod rational;

pub use context::{is_identifier, Ctx, VarContext};
pub use gcd::{poly_exact_div, poly_gcd};
pub use laurent::{rat, LaurentPoly, Monomial, Rat};
pub use parse::{format_laurent, format_rational, parse_expr, parse_laurent};
pub use rational::{substitute_poly, Laurentness, RationalFunction};


#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("invalid variable name '{0}'")]
    InvalidName(String),
    #[error("duplicate variable name '{0}'")]
    DuplicateName(String),
    #[error("variable context mismatch: {left} vs {right}")]
    ContextMismatch { left: String, right: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd of two zero polynomials")]
    GcdOfZeros,
    #[error("not an ordinary polynomial: {0}")]
    NotPolynomial(String),
    #[error("not a Laurent polynomial: {0}")]
    NotLaurent(String),
    #[error("no image given for variable '{0}'")]
    MissingImage(String),
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("unknown variable '{name}' at offset {position}")]
    UnknownVariableAt { name: String, position: usize },
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
}
