//! Special deformation retracts and the basic perturbation lemma.

use thiserror::Error;

use crate::field::Field;
use crate::linalg::SparseMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PerturbError {
    #[error("δ∘h is not nilpotent within {0} iterations in degree {1}")]
    NotLocallyNilpotent(usize, usize),
    #[error("perturbed differential does not square to zero in degree {0}")]
    NotAPerturbation(usize),
    #[error("retract data has inconsistent degrees")]
    Shape,
}

/// `p : (X, ∂_X) → (Y, ∂_Y)`, `i : Y → X`, `h : X → X[1]`, indexed by degree.
///
/// `dy[n] : Y_n → Y_{n−1}`, `dx[n] : X_n → X_{n−1}`, `p[n]`, `i[n]` for `n ≤ top`, and `h[n] : X_n → X_{n+1}` for `n < top`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Retract<S> {
    pub dy: Vec<SparseMatrix<S>>,
    pub dx: Vec<SparseMatrix<S>>,
    pub p: Vec<SparseMatrix<S>>,
    pub i: Vec<SparseMatrix<S>>,
    pub h: Vec<SparseMatrix<S>>,
}

impl<S: Field> Retract<S> {
    pub fn top(&self) -> usize {
        self.p.len() - 1
    }

    /// Failed identities among `pi = id`, `hi = 0`, `ph = 0`, `hh = 0`, `ip − id = ∂h + h∂` and the chain-map conditions.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let top = self.top();
        for n in 0..=top {
            let dim_y = self.p[n].rows();
            let dim_x = self.p[n].cols();
            if self.p[n].mul(&self.i[n]) != SparseMatrix::identity(dim_y) {
                out.push(format!("p∘i = id in degree {n}"));
            }
            if n >= 1 {
                if self.dy[n].mul(&self.p[n]) != self.p[n - 1].mul(&self.dx[n]) {
                    out.push(format!("p is a chain map in degree {n}"));
                }
                if self.dx[n].mul(&self.i[n]) != self.i[n - 1].mul(&self.dy[n]) {
                    out.push(format!("i is a chain map in degree {n}"));
                }
            }
            if n < top {
                if !self.h[n].mul(&self.i[n]).is_zero() {
                    out.push(format!("h∘i = 0 in degree {n}"));
                }
                if !self.p[n + 1].mul(&self.h[n]).is_zero() {
                    out.push(format!("p∘h = 0 in degree {n}"));
                }
                if n + 1 < top && !self.h[n + 1].mul(&self.h[n]).is_zero() {
                    out.push(format!("h∘h = 0 in degree {n}"));
                }
                let lhs = self.i[n].mul(&self.p[n]).sub(&SparseMatrix::identity(dim_x));
                let mut rhs = self.dx[n + 1].mul(&self.h[n]);
                if n >= 1 {
                    rhs = rhs.add(&self.h[n - 1].mul(&self.dx[n]));
                }
                if lhs != rhs {
                    out.push(format!("i∘p − id = ∂h + h∂ in degree {n}"));
                }
            }
        }
        out
    }
}

/// Perturb `∂_X` by `delta[n] : X_n → X_{n−1}` (`delta[0]` is ignored).
///
/// Returns the retract of degrees `< top` built from `A = Σ_k (δh)^k δ`.
pub fn perturb<S: Field>(r: &Retract<S>, delta: &[SparseMatrix<S>], max_iter: usize) -> Result<Retract<S>, PerturbError> {
    let top = r.top();
    if delta.len() != top + 1 || r.h.len() != top || r.dx.len() != top + 1 || r.i.len() != top + 1 {
        return Err(PerturbError::Shape);
    }
    for n in 2..=top {
        let d = r.dx[n - 1].add(&delta[n - 1]).mul(&r.dx[n].add(&delta[n]));
        if !d.is_zero() {
            return Err(PerturbError::NotAPerturbation(n));
        }
    }
    // a[n] : X_n → X_{n−1}
    let mut a: Vec<SparseMatrix<S>> = vec![SparseMatrix::zeros(0, r.dx[0].cols())];
    for n in 1..=top {
        let dh = delta[n].mul(&r.h[n - 1]);
        let mut term = delta[n].clone();
        let mut acc = SparseMatrix::zeros(term.rows(), term.cols());
        let mut k = 0;
        while !term.is_zero() {
            if k > max_iter {
                return Err(PerturbError::NotLocallyNilpotent(max_iter, n));
            }
            acc = acc.add(&term);
            term = dh.mul(&term);
            k += 1;
        }
        a.push(acc);
    }
    let mut out = Retract { dy: Vec::new(), dx: Vec::new(), p: Vec::new(), i: Vec::new(), h: Vec::new() };
    for n in 0..top {
        let ai = if n >= 1 { Some(a[n].mul(&r.i[n])) } else { None };
        out.dy.push(match &ai {
            Some(ai) => r.dy[n].add(&r.p[n - 1].mul(ai)),
            None => r.dy[n].clone(),
        });
        out.dx.push(if n >= 1 { r.dx[n].add(&delta[n]) } else { r.dx[n].clone() });
        out.i.push(match &ai {
            Some(ai) => r.i[n].add(&r.h[n - 1].mul(ai)),
            None => r.i[n].clone(),
        });
        let ah = a[n + 1].mul(&r.h[n]);
        out.p.push(r.p[n].add(&r.p[n].mul(&ah)));
        if n + 1 < top {
            out.h.push(r.h[n].add(&r.h[n].mul(&ah)));
        }
    }
    Ok(out)
}
