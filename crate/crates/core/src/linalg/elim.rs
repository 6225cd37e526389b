use std::collections::HashMap;

use thiserror::Error;

use super::sparse::{axpy, scale_vec, SparseMatrix, SparseVec};
use crate::field::Field;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("no solution on the requested subspace")]
    NoSolution,
    #[error("outgoing map composed with incoming map is nonzero ({nnz} nonzero entries)")]
    ComposabilityViolation { nnz: usize },
}

/// Semi-echelon basis: every stored vector has a distinct leading index,
/// normalised to one, and entries only at larger indices.
#[derive(Clone, Debug)]
pub struct Echelon<S> {
    lead: HashMap<usize, usize>,
    vecs: Vec<SparseVec<S>>,
    combos: Vec<SparseVec<S>>,
    track: bool,
}

impl<S: Field> Echelon<S> {
    pub fn new(track: bool) -> Self {
        Echelon { lead: HashMap::new(), vecs: Vec::new(), combos: Vec::new(), track }
    }

    pub fn rank(&self) -> usize {
        self.vecs.len()
    }

    /// Reduce `v` against the basis; `combo` records the subtracted multiples.
    pub fn reduce(&self, mut v: SparseVec<S>, mut combo: SparseVec<S>) -> (SparseVec<S>, SparseVec<S>) {
        let mut cursor = 0usize;
        loop {
            let hit = v.iter().enumerate().skip(cursor).find(|(_, (i, _))| self.lead.contains_key(i)).map(|(k, (i, c))| (k, *i, c.clone()));
            let Some((k, idx, c)) = hit else { break };
            let slot = self.lead[&idx];
            let neg = -c;
            v = axpy(&v, &neg, &self.vecs[slot]);
            if self.track {
                combo = axpy(&combo, &neg, &self.combos[slot]);
            }
            cursor = k;
        }
        (v, combo)
    }

    /// Insert `v`; returns the residual (empty when dependent) and its combination.
    pub fn insert(&mut self, v: SparseVec<S>, combo: SparseVec<S>) -> (bool, SparseVec<S>) {
        let (r, c) = self.reduce(v, combo);
        if r.is_empty() {
            return (false, c);
        }
        let inv = S::one() / r[0].1.clone();
        self.lead.insert(r[0].0, self.vecs.len());
        self.vecs.push(scale_vec(&r, &inv));
        if self.track {
            self.combos.push(scale_vec(&c, &inv));
        }
        (true, Vec::new())
    }

    pub fn contains(&self, v: SparseVec<S>) -> bool {
        self.reduce(v, Vec::new()).0.is_empty()
    }
}

pub fn rank<S: Field>(m: &SparseMatrix<S>) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    let t;
    let src = if m.rows() < m.cols() {
        t = m.transpose();
        &t
    } else {
        m
    };
    let mut order: Vec<usize> = (0..src.cols()).collect();
    order.sort_by_key(|j| src.column(*j).len());
    let mut ech = Echelon::new(false);
    let cap = src.rows().min(src.cols());
    for j in order {
        if src.column(j).is_empty() {
            continue;
        }
        ech.insert(src.column(j).to_vec(), Vec::new());
        if ech.rank() == cap {
            break;
        }
    }
    ech.rank()
}

/// Indices of the columns independent of all columns to their left.
pub fn independent_columns<S: Field>(m: &SparseMatrix<S>) -> Vec<usize> {
    let mut ech = Echelon::new(false);
    let mut out = Vec::new();
    for j in 0..m.cols() {
        if ech.insert(m.column(j).to_vec(), Vec::new()).0 {
            out.push(j);
        }
    }
    out
}

/// Basis of the column space, chosen among the columns of `m`.
pub fn column_basis<S: Field>(m: &SparseMatrix<S>) -> SparseMatrix<S> {
    m.select_columns(&independent_columns(m))
}

/// Kernel basis as the columns of a `cols × k` matrix.
///
/// Each basis vector has coefficient one on its own dependent column and zero on every other dependent column.
pub fn kernel_basis<S: Field>(m: &SparseMatrix<S>) -> SparseMatrix<S> {
    let mut ech = Echelon::new(true);
    let mut out = Vec::new();
    for j in 0..m.cols() {
        let (indep, combo) = ech.insert(m.column(j).to_vec(), vec![(j, S::one())]);
        if !indep {
            out.push(combo);
        }
    }
    SparseMatrix::from_columns(m.cols(), out)
}

/// Solve `m·x = rhs_k` with `x` in the column span of `subspace`, one solution per column of `rhs`.
pub fn solve_on_subspace<S: Field>(
    m: &SparseMatrix<S>,
    rhs: &SparseMatrix<S>,
    subspace: &SparseMatrix<S>,
) -> Result<SparseMatrix<S>, LinalgError> {
    if m.cols() != subspace.rows() || m.rows() != rhs.rows() {
        return Err(LinalgError::ShapeMismatch(format!(
            "m {:?}, rhs {:?}, subspace {:?}",
            m.shape(),
            rhs.shape(),
            subspace.shape()
        )));
    }
    let image = m.mul(subspace);
    let mut ech = Echelon::new(true);
    for j in 0..image.cols() {
        ech.insert(image.column(j).to_vec(), vec![(j, S::one())]);
    }
    let mut coords = Vec::with_capacity(rhs.cols());
    for j in 0..rhs.cols() {
        let (r, c) = ech.reduce(rhs.column(j).to_vec(), Vec::new());
        if !r.is_empty() {
            return Err(LinalgError::NoSolution);
        }
        coords.push(scale_vec(&c, &-S::one()));
    }
    Ok(subspace.mul(&SparseMatrix::from_columns(subspace.cols(), coords)))
}

/// `dim ker(out) − rank(inc)` after checking `out·inc = 0`.
pub fn homology_dimension<S: Field>(out: &SparseMatrix<S>, inc: &SparseMatrix<S>) -> Result<usize, LinalgError> {
    if out.cols() != inc.rows() {
        return Err(LinalgError::ShapeMismatch(format!("out {:?}, in {:?}", out.shape(), inc.shape())));
    }
    let comp = out.mul(inc);
    if !comp.is_zero() {
        return Err(LinalgError::ComposabilityViolation { nnz: comp.nnz() });
    }
    Ok(out.cols() - rank(out) - rank(inc))
}

/// Whether every column of `vectors` lies in the span of the columns of `basis`.
pub fn spans<S: Field>(basis: &SparseMatrix<S>, vectors: &SparseMatrix<S>) -> bool {
    let mut ech = Echelon::new(false);
    for j in 0..basis.cols() {
        ech.insert(basis.column(j).to_vec(), Vec::new());
    }
    (0..vectors.cols()).all(|j| ech.contains(vectors.column(j).to_vec()))
}

/// Same column span.
pub fn same_span<S: Field>(a: &SparseMatrix<S>, b: &SparseMatrix<S>) -> bool {
    a.rows() == b.rows() && rank(a) == rank(b) && spans(a, b)
}
