//! Harmonic decomposition of `Ẍ` and the description of its harmonic part through `X̄`.

pub mod gamma;
pub mod projection;
pub mod tilde;

use thiserror::Error;

pub use projection::{HarmonicSplit, ProjectionMethod};
pub use tilde::{Tilde, TildeOps, XiMethod};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HarmonicError {
    #[error("id − κ̈ is not invertible on P⊥(Ẍ) at ({0},{1})")]
    SolveFailure(i64, i64),
    #[error("Ψ does not reach the requested vectors at ({0},{1})")]
    ImageMismatch(i64, i64),
}
