//! Exact scalar arithmetic and linear algebra over the rationals extended
//! by free symbolic parameters. Everything downstream computes in this
//! field; no floating point anywhere.

pub mod matrix;
pub mod poly;
pub mod sample;
pub mod scalar;
pub mod sym;
pub mod unipoly;

pub use matrix::{in_span, same_span, span_rank, stack_columns, Matrix};
pub use poly::Poly;
pub use sample::{generic_point, generic_points, SplitMix64, DEFAULT_SEED, GENERIC_POINTS};
pub use scalar::{Assignment, Scalar};
pub use sym::Sym;
pub use unipoly::{Factor, UniPoly};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("singular matrix")]
    Singular,
    #[error("parametric input: substitute parameters first")]
    ParametricInput,
    #[error("missing parameter assignment for {0}")]
    MissingParameter(String),
    #[error("denominator vanishes at {0}")]
    DenominatorVanishes(String),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("excluded locus: {0}")]
    ExcludedLocus(String),
}
