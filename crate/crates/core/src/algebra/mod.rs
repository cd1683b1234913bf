//! Exact arithmetic: rationals, sparse Laurent polynomials, factored
//! rational functions and truncated series.

mod factored;
mod monomial;
mod poly;
mod rational;
mod series;

use alloc::boxed::Box;

pub use factored::{rational_normalize, BinomialFactor, FactoredRational};
pub use monomial::{Monomial, VarId, MAX_GENUS, MAX_VARS};
pub use poly::{build, LaurentPoly, MonomialMap};
pub use rational::{ParseRationalError, Rational};
pub use series::{mobius, pleth_exp, pleth_log, series_exp, series_log, SeriesCoeff, TSeries};

/// Errors raised by the exact-arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("operands live in rings with {left} and {right} alpha variables")]
    ArityMismatch { left: usize, right: usize },
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("not divisible by {divisor}; remainder leads with {}", lead(remainder))]
    NotDivisible {
        divisor: Box<LaurentPoly>,
        remainder: Box<LaurentPoly>,
    },
    #[error(
        "not a polynomial: factor {divisor} does not cancel; remainder leads with {}",
        lead(remainder)
    )]
    NotPolynomial {
        divisor: Box<LaurentPoly>,
        remainder: Box<LaurentPoly>,
    },
    #[error("denominator factor must have exactly two terms, got {0}")]
    NotBinomial(usize),
    #[error("series constant term must be 1")]
    ConstantTermNotOne,
    #[error("series constant term must be 0")]
    ConstantTermNotZero,
    #[error("parse error: {0}")]
    Parse(alloc::string::String),
}

fn lead(p: &LaurentPoly) -> alloc::string::String {
    use alloc::string::ToString;
    match p.leading() {
        Some((m, c)) => alloc::format!("{}*{} ({} terms)", c.canonical(), m, p.len()),
        None => "0".to_string(),
    }
}
