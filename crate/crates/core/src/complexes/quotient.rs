//! The quotient `X̄ = coker(id − t)` and the maps it inherits.

use std::sync::Arc;

use thiserror::Error;

use crate::complexes::double::DoubleMixed;
use crate::complexes::engine::{Engine, Mat, Memo};
use crate::complexes::layout::{BlockKey, Layout};
use crate::field::Field;
use crate::linalg::{kernel_basis, SparseMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{0} does not descend to the quotient at ({1},{2})")]
pub struct InductionFailure(pub &'static str, pub i64, pub i64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Op {
    Q,
    S,
    B,
    D,
    NBar,
}

/// `X̄_{vw}` with basis the classes of the words whose rows of `id − t` depend on earlier rows.
pub struct Quotient<S: Field> {
    pub engine: Arc<Engine<S>>,
    memo: Memo<(Op, i64, i64), SparseMatrix<S>>,
    free: Memo<(i64, i64), Vec<usize>>,
}

impl<S: Field> Quotient<S> {
    pub fn new(engine: Arc<Engine<S>>) -> Self {
        Quotient { engine, memo: Memo::default(), free: Memo::default() }
    }

    pub fn dim(&self, v: i64, w: i64) -> usize {
        self.q(v, w).rows()
    }

    /// Indices of the words whose classes form the basis of `X̄_{vw}`.
    pub fn free_words(&self, v: i64, w: i64) -> Arc<Vec<usize>> {
        self.free.get_or((v, w), || {
            let q = self.q(v, w);
            let qt = q.transpose();
            (0..qt.cols()).map(|k| qt.column(k).last().expect("nonzero functional").0).collect()
        })
    }

    /// Quotient map `q : X_{vw} → X̄_{vw}`.
    pub fn q(&self, v: i64, w: i64) -> Mat<S> {
        self.memo.get_or((Op::Q, v, w), || {
            let e = &self.engine;
            let one_minus_t = e.id(v, w).sub(&e.t(v, w));
            kernel_basis(&one_minus_t.transpose()).transpose()
        })
    }

    /// Section `s : X̄_{vw} → X_{vw}` with `q s = id`.
    pub fn s(&self, v: i64, w: i64) -> Mat<S> {
        self.memo.get_or((Op::S, v, w), || {
            let free = self.free_words(v, w);
            SparseMatrix::from_triplets(self.engine.dim_x(v, w), free.len(), free.iter().enumerate().map(|(k, i)| (*i, k, S::one())))
        })
    }

    /// `𝔭 = q / (w + 1)`.
    pub fn pfrak(&self, v: i64, w: i64) -> SparseMatrix<S> {
        self.q(v, w).scale(&S::ratio(1, w.max(0) + 1))
    }

    fn induced(&self, name: &'static str, f: &SparseMatrix<S>, v: i64, w: i64, tv: i64, tw: i64) -> Result<SparseMatrix<S>, InductionFailure> {
        let bar = self.q(tv, tw).mul(&f.mul(&self.s(v, w)));
        if self.q(tv, tw).mul(f) != bar.mul(&self.q(v, w)) {
            return Err(InductionFailure(name, v, w));
        }
        Ok(bar)
    }

    /// `b̄ : X̄_{vw} → X̄_{v−1,w}`.
    pub fn bar_b(&self, v: i64, w: i64) -> Mat<S> {
        self.memo.get_or((Op::B, v, w), || {
            self.induced("b", &self.engine.b(v, w), v, w, v - 1, w).unwrap_or_else(|e| panic!("{e}"))
        })
    }

    /// `d̄ : X̄_{vw} → X̄_{v,w−1}`.
    pub fn bar_d(&self, v: i64, w: i64) -> Mat<S> {
        self.memo.get_or((Op::D, v, w), || {
            self.induced("d", &self.engine.d(v, w), v, w, v, w - 1).unwrap_or_else(|e| panic!("{e}"))
        })
    }

    /// `N̄ : X̄_{vw} → X_{vw}`, induced by `N`.
    pub fn nbar(&self, v: i64, w: i64) -> Mat<S> {
        self.memo.get_or((Op::NBar, v, w), || self.engine.n(v, w).mul(&self.s(v, w)))
    }

    /// Checks that `b`, `d` and `N` descend, without panicking.
    pub fn check_induced(&self, v: i64, w: i64) -> Vec<(&'static str, bool)> {
        let e = &self.engine;
        vec![
            ("q∘b = b̄∘q", self.induced("b", &e.b(v, w), v, w, v - 1, w).is_ok()),
            ("q∘d = d̄∘q", self.induced("d", &e.d(v, w), v, w, v, w - 1).is_ok()),
            ("N̄∘q = N", self.nbar(v, w).mul(&self.q(v, w)) == *e.n(v, w)),
        ]
    }

    pub fn weights(&self, v: i64, w: i64) -> Vec<i64> {
        let all = self.engine.bases.weights(crate::tensor::SpaceId::x(v, w));
        self.free_words(v, w).iter().map(|i| all[*i]).collect()
    }
}

impl<S: Field> DoubleMixed<S> for Quotient<S> {
    fn name(&self) -> &'static str {
        "quotient"
    }

    fn layout(&self, v: i64, w: i64) -> Layout {
        Layout::new([(BlockKey::Bar(v, w), Quotient::dim(self, v, w))])
    }

    fn b(&self, v: i64, w: i64) -> Mat<S> {
        self.bar_b(v, w)
    }

    fn beta(&self, v: i64, w: i64) -> Mat<S> {
        self.bar_d(v, w)
    }

    fn b_shift(&self) -> Option<(i64, i64)> {
        None
    }

    fn big_b(&self, _v: i64, _w: i64) -> Mat<S> {
        panic!("the quotient complex carries no B")
    }

    fn weights(&self, v: i64, w: i64) -> Vec<i64> {
        Quotient::weights(self, v, w)
    }
}
