//! Exact arithmetic: rationals and the cyclotomic fields ℚ(ζ_r).

mod cyclotomic;
mod rational;

pub use cyclotomic::{
    cyclotomic_polynomial, euler_totient, reduce_mod_cyclotomic, CyclotomicElement,
};
pub use rational::Rational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("rational with zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("division by zero in cyclotomic field")]
    CyclotomicDivisionByZero,
    #[error("incompatible cyclotomic fields: order {left} vs order {right}")]
    OrderMismatch { left: u32, right: u32 },
    #[error("cyclotomic element not rational")]
    NotRational,
    #[error("cyclotomic order must be at least 1")]
    ZeroOrder,
    #[error("cannot parse {0:?} as a rational number")]
    ParseRational(String),
}
