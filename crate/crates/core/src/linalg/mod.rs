//! Exact sparse linear algebra.

mod elim;
mod sparse;

pub use elim::{
    column_basis, homology_dimension, independent_columns, kernel_basis, rank, same_span, solve_on_subspace, spans,
    Echelon, LinalgError,
};
pub use sparse::{assemble, axpy, collect_vec, offsets, scale_vec, SparseMatrix, SparseVec};
