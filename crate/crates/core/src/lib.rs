//! Exact Taylor series of a perturbed root of a two-term complex-exponent
//! polynomial, together with the combinatorial machinery the closed-form
//! coefficient formula rests on, and independent cross-checks for all of it.
//!
//! The headline computation lives in [`root_series`]: given a base function
//! `g(z) = 1 + b z^beta` with a simple zero `alpha`, and a perturbation
//! `f(z) = g(z) + sum_i a_i z^{gamma_i}`, it produces the Taylor coefficients
//! of the perturbed root `phi(a)` about `a = 0` in closed form, and also by an
//! independent partition recursion that serves as an exact oracle.
//!
//! Supporting modules:
//! - [`scalar`]: exact rationals, the quotient ring `Q[xi]/(xi^d + 1)`,
//!   complex doubles, and dense univariate rational polynomials.
//! - [`combinatorics`]: set partitions, Stirling tables, shifted Stirling
//!   polynomials, Newton-series reconstruction, and a suite of executable
//!   identities over them.
//! - [`derivation`]: commutative rings carrying a derivation, and the
//!   subset/partition derivative identities as exact checks.
//! - [`gkz`]: Sturmfels-style A-hypergeometric bracket series for polynomial
//!   roots, and the verification that they agree with the closed formula.
//! - [`report`]: machine-readable pass/fail records shared with the CLI.

pub mod combinatorics;
pub mod derivation;
pub mod gkz;
pub mod report;
pub mod root_series;
pub mod sampling;
pub mod scalar;

use thiserror::Error;

/// Errors surfaced by the exact and numeric computations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("xi-ring dimension mismatch: {0} vs {1}")]
    XiDimensionMismatch(usize, usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("non-finite intermediate value")]
    NonFinite,
    #[error("root branch did not converge: residual {0}")]
    BranchNotConverged(f64),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
