//! Karoubi operator, harmonic projection and Green operator on `Ẍ`.

use std::sync::Arc;

use crate::complexes::engine::{Engine, Mat, Memo};
use crate::complexes::families::{blocks, DdotX};
use crate::complexes::DoubleMixed;
use crate::field::Field;
use crate::harmonic::HarmonicError;
use crate::linalg::{column_basis, solve_on_subspace, SparseMatrix};

/// `n/d`, refusing a zero denominator.
pub(crate) fn coef<S: Field>(n: i64, d: i64) -> S {
    assert!(d != 0, "coefficient {n}/0 requested outside its range");
    S::ratio(n, d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Op {
    P,
    PCor,
    Green,
}

/// Which closed form produces `P(x, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjectionMethod {
    Formulas,
    Corollary,
}

/// Harmonic decomposition of `(Ẍ, b̈, d̈, B̈)`.
pub struct HarmonicSplit<S: Field> {
    pub engine: Arc<Engine<S>>,
    pub ddot: DdotX<S>,
    memo: Memo<(Op, i64, i64), SparseMatrix<S>>,
}

impl<S: Field> HarmonicSplit<S> {
    pub fn new(engine: Arc<Engine<S>>) -> Self {
        HarmonicSplit { ddot: DdotX::new(engine.clone()), engine, memo: Memo::default() }
    }

    pub fn dim(&self, v: i64, w: i64) -> usize {
        self.ddot.dim(v, w)
    }

    pub fn identity(&self, v: i64, w: i64) -> SparseMatrix<S> {
        SparseMatrix::identity(self.dim(v, w))
    }

    pub fn kappa(&self, v: i64, w: i64) -> Mat<S> {
        self.ddot.kappa(v, w)
    }

    pub fn d_r(&self, v: i64, w: i64) -> Mat<S> {
        self.ddot.d_r(v, w)
    }

    pub fn projection(&self, v: i64, w: i64, method: ProjectionMethod) -> Mat<S> {
        match method {
            ProjectionMethod::Formulas => self.memo.get_or((Op::P, v, w), || self.p_formulas(v, w)),
            ProjectionMethod::Corollary => self.memo.get_or((Op::PCor, v, w), || self.p_corollary(v, w)),
        }
    }

    pub fn p(&self, v: i64, w: i64) -> Mat<S> {
        self.projection(v, w, ProjectionMethod::Formulas)
    }

    /// `id − P`.
    pub fn p_perp(&self, v: i64, w: i64) -> SparseMatrix<S> {
        self.identity(v, w).sub(&self.p(v, w))
    }

    fn p_formulas(&self, v: i64, w: i64) -> SparseMatrix<S> {
        let e = &self.engine;
        let l = self.ddot.layout(v, w);
        if w <= 0 {
            return self.identity(v, w);
        }
        let n_first = e.n(v, w).scale(&coef(1, w + 1));
        let mut lower = SparseMatrix::zeros(e.dim_x(v, w - 1), e.dim_x(v, w));
        let d = e.d(v, w);
        for i in 0..w {
            let c: S = coef(-(w - 1 - 2 * i), 2 * w);
            lower = lower.axpy(&c, &e.t_pow(v, w - 1, i as usize).mul(&d));
        }
        let dp = e.d_prime(v, w);
        for i in 0..=w {
            let c: S = coef(w - 2 * i, 2 * (w + 1));
            lower = lower.axpy(&c, &dp.mul(&e.t_pow(v, w, i as usize)));
        }
        let n_second = e.n(v, w - 1).scale(&coef(1, w));
        blocks(&l, &l, vec![(0, 0, n_first), (1, 0, lower), (1, 1, n_second)])
    }

    fn p_corollary(&self, v: i64, w: i64) -> SparseMatrix<S> {
        let e = &self.engine;
        let l = self.ddot.layout(v, w);
        if w <= 0 {
            return self.identity(v, w);
        }
        let rho = e.rho_last(v, w);
        let mut lower = SparseMatrix::zeros(e.dim_x(v, w - 1), e.dim_x(v, w));
        for i in 0..=w {
            let rt = rho.mul(&e.t_pow(v, w, i as usize));
            for j in 0..w {
                let c: S = coef(2 * j + 2 * i - 2 * w + 1, 2 * w * (w + 1));
                lower = lower.axpy(&c, &e.t_pow(v, w - 1, j as usize).mul(&rt));
            }
        }
        let n_first = e.n(v, w).scale(&coef(1, w + 1));
        let n_second = e.n(v, w - 1).scale(&coef(1, w));
        blocks(&l, &l, vec![(0, 0, n_first), (1, 0, lower), (1, 1, n_second)])
    }

    /// Zero on `P(Ẍ)` and the inverse of `id − κ̈` on `P⊥(Ẍ)`.
    pub fn green(&self, v: i64, w: i64) -> Result<Mat<S>, HarmonicError> {
        self.memo.try_get_or((Op::Green, v, w), || {
            let perp = self.p_perp(v, w);
            let one_minus_kappa = self.identity(v, w).sub(&self.kappa(v, w));
            solve_on_subspace(&one_minus_kappa, &perp, &column_basis(&perp)).map_err(|_| HarmonicError::SolveFailure(v, w))
        })
    }

    /// `κ̈^k`.
    pub fn kappa_pow(&self, v: i64, w: i64, k: usize) -> SparseMatrix<S> {
        self.kappa(v, w).pow(k)
    }
}
