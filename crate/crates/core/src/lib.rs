//! Exact construction and verification of BBP-like formulas for logarithms
//! and π, derived from a family of polynomial logarithm identities.

pub mod arith;
pub mod cli;
pub mod error;
pub mod factor;
pub mod formula;
pub mod logpoly;
pub mod poly;
pub mod roots;
pub mod scalar;
pub mod tag;
pub mod verify;

pub use error::{Error, Result};
pub use formula::{BbpFormula, GaussianBbpFormula};
pub use logpoly::QPoly;
pub use scalar::{GaussianRational, Rational};

/// Polynomials with floating-point coefficients.
pub type FPoly = poly::Poly<f64>;
