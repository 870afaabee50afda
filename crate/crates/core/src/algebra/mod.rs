//! Exact rational arithmetic, univariate polynomials, piecewise-polynomial
//! integration, rational-function reconstruction and power-series prefixes.
//!
//! Nothing in here touches floating point except the display helper
//! [`Rational::to_f64`].

pub mod linalg;
mod piecewise;
mod poly;
mod rational;
mod ratfun;
mod reconstruct;

use thiserror::Error;

pub use piecewise::{integrate_piecewise, PiecewiseProfile};
pub use poly::Polynomial;
pub use rational::{q, Rational};
pub use ratfun::{taylor_prefix, RationalFunction};
pub use reconstruct::{reconstruct_rational_function, DEFAULT_DEGREES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("rational function with zero denominator")]
    ZeroDenominator,
    #[error("pole at {0}")]
    Pole(Rational),
    #[error("pole at 0: no power-series expansion")]
    PoleAtZero,
    #[error("malformed piecewise profile: {0}")]
    MalformedProfile(String),
    #[error("profile is discontinuous at {0}")]
    Discontinuous(Rational),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("singular linear system")]
    Singular,
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("reconstruction needs at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("duplicate sample abscissa {0}")]
    DuplicateAbscissa(Rational),
    #[error("no rational function of the requested degrees fits the samples")]
    NoFit,
    #[error("reconstructed function disagrees with sample at {at} (expected {expected})")]
    SampleMismatch { at: Rational, expected: Rational },
}
