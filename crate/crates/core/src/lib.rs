//! Relative cyclic homology of cleft extensions over the rationals.

pub mod algebra;
pub mod complexes;
pub mod field;
pub mod harmonic;
pub mod homology;
pub mod instance;
pub mod linalg;
pub mod tensor;
pub mod verify;

pub use num_rational::BigRational;

/// Default exact scalar.
pub type Q = BigRational;
pub type QMatrix = linalg::SparseMatrix<Q>;
pub type QDatum = algebra::CleftDatum<Q>;
pub type QEngine = complexes::Engine<Q>;
