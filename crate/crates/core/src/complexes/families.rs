//! The canonical complex `𝔛̂`, the complex `X̂` and the complex `Ẍ`.

use std::sync::Arc;

use crate::complexes::double::DoubleMixed;
use crate::complexes::engine::{Engine, Mat, Memo};
use crate::complexes::layout::{BlockKey, Layout};
use crate::field::Field;
use crate::linalg::{assemble, SparseMatrix};
use crate::tensor::SpaceId;

fn key(id: SpaceId) -> BlockKey {
    BlockKey::Space(id)
}

/// `𝔛̂_{vw} = (M ⊗ B^n_w) ⊕ (A ⊗ B^n_{w+1})`, built from the multiplication of `E`.
pub struct Canonical<S: Field> {
    pub engine: Arc<Engine<S>>,
}

impl<S: Field> DoubleMixed<S> for Canonical<S> {
    fn name(&self) -> &'static str {
        "canonical"
    }

    fn layout(&self, v: i64, w: i64) -> Layout {
        let e = &self.engine;
        Layout::new([SpaceId::x(v, w), SpaceId::canon(v, w)].map(|id| (key(id), e.bases.dim(id))))
    }

    fn b(&self, v: i64, w: i64) -> Mat<S> {
        self.engine.canon_b(v, w)
    }

    fn beta(&self, v: i64, w: i64) -> Mat<S> {
        self.engine.canon_beta(v, w)
    }

    fn b_shift(&self) -> Option<(i64, i64)> {
        Some((1, 0))
    }

    fn big_b(&self, v: i64, w: i64) -> Mat<S> {
        self.engine.canon_connes(v, w)
    }

    fn weights(&self, v: i64, w: i64) -> Vec<i64> {
        let e = &self.engine;
        let mut out = e.bases.weights(SpaceId::x(v, w));
        out.extend(e.bases.weights(SpaceId::canon(v, w)));
        out
    }
}

/// Block matrix from `(target block, source block, matrix)` pieces.
pub fn blocks<S: Field>(tgt: &Layout, src: &Layout, pieces: Vec<(usize, usize, SparseMatrix<S>)>) -> SparseMatrix<S> {
    assemble(&tgt.dims, &src.dims, pieces)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Op {
    B,
    Beta,
    BigB,
    Kappa,
    DR,
}

/// `X̂_{vw} = X_{vw} ⊕ X_{v−1,w}` with `b̂`, `d̂` and `B̂ : X̂_{vw} → X̂_{v+1,w}`.
pub struct HatX<S: Field> {
    pub engine: Arc<Engine<S>>,
    memo: Memo<(Op, i64, i64), SparseMatrix<S>>,
}

impl<S: Field> HatX<S> {
    pub fn new(engine: Arc<Engine<S>>) -> Self {
        HatX { engine, memo: Memo::default() }
    }
}

impl<S: Field> DoubleMixed<S> for HatX<S> {
    fn name(&self) -> &'static str {
        "hatX"
    }

    fn layout(&self, v: i64, w: i64) -> Layout {
        let e = &self.engine;
        Layout::new([SpaceId::x(v, w), SpaceId::x(v - 1, w)].map(|id| (key(id), e.bases.dim(id))))
    }

    /// `b̂(x, y) = (b x + (id − t) y, −b y)`.
    fn b(&self, v: i64, w: i64) -> Mat<S> {
        self.memo.get_or((Op::B, v, w), || {
            let e = &self.engine;
            let one_minus_t = e.id(v - 1, w).sub(&e.t(v - 1, w));
            blocks(
                &self.layout(v - 1, w),
                &self.layout(v, w),
                vec![(0, 0, (*e.b(v, w)).clone()), (0, 1, one_minus_t), (1, 1, e.b(v - 1, w).neg())],
            )
        })
    }

    /// `d̂(x, y) = (d x, −d' y)`.
    fn beta(&self, v: i64, w: i64) -> Mat<S> {
        self.memo.get_or((Op::Beta, v, w), || {
            let e = &self.engine;
            blocks(
                &self.layout(v, w - 1),
                &self.layout(v, w),
                vec![(0, 0, (*e.d(v, w)).clone()), (1, 1, e.d_prime(v - 1, w).neg())],
            )
        })
    }

    fn b_shift(&self) -> Option<(i64, i64)> {
        Some((1, 0))
    }

    /// `B̂(x, y) = (0, N x)`.
    fn big_b(&self, v: i64, w: i64) -> Mat<S> {
        self.memo.get_or((Op::BigB, v, w), || {
            blocks(&self.layout(v + 1, w), &self.layout(v, w), vec![(1, 0, (*self.engine.n(v, w)).clone())])
        })
    }

    fn weights(&self, v: i64, w: i64) -> Vec<i64> {
        let e = &self.engine;
        let mut out = e.bases.weights(SpaceId::x(v, w));
        out.extend(e.bases.weights(SpaceId::x(v - 1, w)));
        out
    }
}

/// `Ẍ_{vw} = X_{vw} ⊕ X_{v,w−1}` with `b̈`, `d̈` and `B̈ : Ẍ_{vw} → Ẍ_{v,w+1}`.
pub struct DdotX<S: Field> {
    pub engine: Arc<Engine<S>>,
    memo: Memo<(Op, i64, i64), SparseMatrix<S>>,
}

impl<S: Field> DdotX<S> {
    pub fn new(engine: Arc<Engine<S>>) -> Self {
        DdotX { engine, memo: Memo::default() }
    }

    /// `d̈R(x, y) = (0, x)`.
    pub fn d_r(&self, v: i64, w: i64) -> Mat<S> {
        self.memo.get_or((Op::DR, v, w), || {
            blocks(&self.layout(v, w + 1), &self.layout(v, w), vec![(1, 0, (*self.engine.id(v, w)).clone())])
        })
    }

    /// `κ̈(x, y) = (t x, t y + d' x − d x)`.
    pub fn kappa(&self, v: i64, w: i64) -> Mat<S> {
        self.memo.get_or((Op::Kappa, v, w), || {
            let e = &self.engine;
            blocks(
                &self.layout(v, w),
                &self.layout(v, w),
                vec![(0, 0, (*e.t(v, w)).clone()), (1, 0, e.rho_last(v, w).neg()), (1, 1, (*e.t(v, w - 1)).clone())],
            )
        })
    }

    pub fn identity(&self, v: i64, w: i64) -> SparseMatrix<S> {
        SparseMatrix::identity(self.dim(v, w))
    }

    /// Embedding `x ↦ (x, 0)` of `X_{vw}`.
    pub fn inj_first(&self, v: i64, w: i64) -> SparseMatrix<S> {
        blocks(&self.layout(v, w), &Layout::new([(key(SpaceId::x(v, w)), self.engine.dim_x(v, w))]), vec![(0, 0, (*self.engine.id(v, w)).clone())])
    }

    /// Embedding `y ↦ (0, y)` of `X_{v,w−1}`.
    pub fn inj_second(&self, v: i64, w: i64) -> SparseMatrix<S> {
        blocks(
            &self.layout(v, w),
            &Layout::new([(key(SpaceId::x(v, w - 1)), self.engine.dim_x(v, w - 1))]),
            vec![(1, 0, (*self.engine.id(v, w - 1)).clone())],
        )
    }
}

impl<S: Field> DoubleMixed<S> for DdotX<S> {
    fn name(&self) -> &'static str {
        "ddotX"
    }

    fn layout(&self, v: i64, w: i64) -> Layout {
        let e = &self.engine;
        Layout::new([SpaceId::x(v, w), SpaceId::x(v, w - 1)].map(|id| (key(id), e.bases.dim(id))))
    }

    /// `b̈(x, y) = (b x, −b y)`.
    fn b(&self, v: i64, w: i64) -> Mat<S> {
        self.memo.get_or((Op::B, v, w), || {
            let e = &self.engine;
            blocks(
                &self.layout(v - 1, w),
                &self.layout(v, w),
                vec![(0, 0, (*e.b(v, w)).clone()), (1, 1, e.b(v, w - 1).neg())],
            )
        })
    }

    /// `d̈(x, y) = (d x + (id − t) y, −d' y)`.
    fn beta(&self, v: i64, w: i64) -> Mat<S> {
        self.memo.get_or((Op::Beta, v, w), || {
            let e = &self.engine;
            let one_minus_t = e.id(v, w - 1).sub(&e.t(v, w - 1));
            blocks(
                &self.layout(v, w - 1),
                &self.layout(v, w),
                vec![(0, 0, (*e.d(v, w)).clone()), (0, 1, one_minus_t), (1, 1, e.d_prime(v, w - 1).neg())],
            )
        })
    }

    fn b_shift(&self) -> Option<(i64, i64)> {
        Some((0, 1))
    }

    /// `B̈(x, y) = (0, N x)`.
    fn big_b(&self, v: i64, w: i64) -> Mat<S> {
        self.memo.get_or((Op::BigB, v, w), || {
            blocks(&self.layout(v, w + 1), &self.layout(v, w), vec![(1, 0, (*self.engine.n(v, w)).clone())])
        })
    }

    fn weights(&self, v: i64, w: i64) -> Vec<i64> {
        let e = &self.engine;
        let mut out = e.bases.weights(SpaceId::x(v, w));
        out.extend(e.bases.weights(SpaceId::x(v, w - 1)));
        out
    }
}
