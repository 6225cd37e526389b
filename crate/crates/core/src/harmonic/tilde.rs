//! The description of `P(Ẍ)` through the quotient: `Υ`, `ξ̄`, `ξ`, `Ψ`, `P̃` and the complex `X̃`.

use std::sync::Arc;

use crate::complexes::engine::{Engine, Mat, Memo};
use crate::complexes::families::blocks;
use crate::complexes::words;
use crate::complexes::{BlockKey, DoubleMixed, Layout, Quotient};
use crate::field::Field;
use crate::harmonic::projection::{coef, HarmonicSplit};
use crate::harmonic::HarmonicError;
use crate::linalg::{rank, same_span, solve_on_subspace, SparseMatrix};
use crate::tensor::{materialize, Basis, SpaceId};

/// Formulation of `ξ̄`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XiMethod {
    /// `(1/(w+1)) 𝔭 d' σ' d N̄`.
    Composite,
    /// `−(1/(w+1)) 𝔭 ϱ_{n−1} σ' ϱ_n N̄`.
    Contraction,
    /// Sum over pairs of `M` positions of double contractions of a single word.
    Explicit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Op {
    Upsilon,
    XiBar(u8),
    Xi,
    XiB5,
    Psi,
    PTilde,
    PTildeFormula,
}

/// Operators relating `X̄`, `X̃` and `P(Ẍ)`.
pub struct TildeOps<S: Field> {
    pub engine: Arc<Engine<S>>,
    pub quotient: Arc<Quotient<S>>,
    pub split: Arc<HarmonicSplit<S>>,
    memo: Memo<(Op, i64, i64), SparseMatrix<S>>,
}

impl<S: Field> TildeOps<S> {
    pub fn new(engine: Arc<Engine<S>>) -> Self {
        TildeOps {
            quotient: Arc::new(Quotient::new(engine.clone())),
            split: Arc::new(HarmonicSplit::new(engine.clone())),
            engine,
            memo: Memo::default(),
        }
    }

    pub fn bar_dim(&self, v: i64, w: i64) -> usize {
        self.quotient.dim(v, w)
    }

    /// `X̃_{vw} = X̄_{vw} ⊕ X̄_{v,w−1}`.
    pub fn layout(&self, v: i64, w: i64) -> Layout {
        Layout::new([(BlockKey::Bar(v, w), self.bar_dim(v, w)), (BlockKey::Bar(v, w - 1), self.bar_dim(v, w - 1))])
    }

    pub fn dim(&self, v: i64, w: i64) -> usize {
        self.bar_dim(v, w) + self.bar_dim(v, w - 1)
    }

    /// `Υ = (−id + N̄ 𝔭) σ' d : X_{vw} → X_{v,w−1}`, meaningful on `t`-invariant elements.
    pub fn upsilon(&self, v: i64, w: i64) -> Mat<S> {
        self.memo.get_or((Op::Upsilon, v, w), || {
            let e = &self.engine;
            if w <= 0 {
                return SparseMatrix::zeros(e.dim_x(v, w - 1), e.dim_x(v, w));
            }
            let q = &self.quotient;
            let np = q.nbar(v, w - 1).mul(&q.pfrak(v, w - 1));
            let inner = e.sigma_prime(v, w - 1).mul(&e.d(v, w));
            np.mul(&inner).sub(&inner)
        })
    }

    pub fn xi_bar(&self, v: i64, w: i64, method: XiMethod) -> Mat<S> {
        let tag = match method {
            XiMethod::Composite => 0,
            XiMethod::Contraction => 1,
            XiMethod::Explicit => 2,
        };
        self.memo.get_or((Op::XiBar(tag), v, w), || {
            let q = &self.quotient;
            if w <= 1 {
                return SparseMatrix::zeros(q.dim(v, w - 2), q.dim(v, w));
            }
            let e = &self.engine;
            match method {
                XiMethod::Composite => q
                    .pfrak(v, w - 2)
                    .mul(&e.d_prime(v, w - 1))
                    .mul(&e.sigma_prime(v, w - 1))
                    .mul(&e.d(v, w))
                    .mul(&q.nbar(v, w))
                    .scale(&coef(1, w + 1)),
                XiMethod::Contraction => q
                    .pfrak(v, w - 2)
                    .mul(&e.rho_last(v, w - 1))
                    .mul(&e.sigma_prime(v, w - 1))
                    .mul(&e.rho_last(v, w))
                    .mul(&q.nbar(v, w))
                    .scale(&coef(-1, w + 1)),
                XiMethod::Explicit => self.xi_bar_explicit(v, w),
            }
        })
    }

    pub fn xi_bar_default(&self, v: i64, w: i64) -> Mat<S> {
        self.xi_bar(v, w, XiMethod::Composite)
    }

    /// Word formula: `ξ̄[x] = Σ_{j<l} (2l−2j−w−1)/((w−1)w(w+1)) [ϱ_{i_j} ϱ_{i_l}(x)]`, with `i_0 < … < i_w` the `M` positions.
    fn xi_bar_explicit(&self, v: i64, w: i64) -> SparseMatrix<S> {
        let e = &self.engine;
        let q = &self.quotient;
        let d = &e.datum;
        let all = e.basis(SpaceId::x(v, w));
        let free: Vec<_> = q.free_words(v, w).iter().map(|i| all.words[*i].clone()).collect();
        let src = Basis::new(SpaceId::x(v, w), free);
        let tgt = e.basis(SpaceId::x(v, w - 2));
        let raw = materialize(&src, &tgt, |x| {
            let pos: Vec<usize> = x.iter().enumerate().filter(|(_, s)| s.is_m()).map(|(i, _)| i).collect();
            let mut out = Vec::new();
            for l in 1..pos.len() {
                let after = words::rho(d, x, pos[l]);
                for j in 0..l {
                    let c: S = coef(2 * (l - j) as i64 - w - 1, (w - 1) * w * (w + 1));
                    for (y, cy) in &after {
                        for (z, cz) in words::rho(d, y, pos[j]) {
                            out.push((z, c.clone() * cy.clone() * cz));
                        }
                    }
                }
            }
            out
        })
        .unwrap_or_else(|err| panic!("explicit ξ̄: {err}"));
        q.q(v, w - 2).mul(&raw)
    }

    /// `ξ = −((w+1)/w) Υ d' − d' Υ : X_{vw} → X_{v,w−2}`, meaningful on `t`-invariant elements.
    pub fn xi(&self, v: i64, w: i64) -> Mat<S> {
        self.memo.get_or((Op::Xi, v, w), || {
            let e = &self.engine;
            if w <= 0 {
                return SparseMatrix::zeros(e.dim_x(v, w - 2), e.dim_x(v, w));
            }
            let a = self.upsilon(v, w - 1).mul(&e.d_prime(v, w)).scale(&coef(-(w + 1), w));
            a.sub(&e.d_prime(v, w - 1).mul(&self.upsilon(v, w)))
        })
    }

    /// `(1/(w−1)) N d' σ' d`, for `w > 1`.
    pub fn xi_b5(&self, v: i64, w: i64) -> Mat<S> {
        assert!(w > 1, "the closed form of ξ needs w > 1");
        self.memo.get_or((Op::XiB5, v, w), || {
            let e = &self.engine;
            e.n(v, w - 2)
                .mul(&e.d_prime(v, w - 1))
                .mul(&e.sigma_prime(v, w - 1))
                .mul(&e.d(v, w))
                .scale(&coef(1, w - 1))
        })
    }

    /// `Ψ(x, y) = (1/(w+1)) (N̄x, Υ N̄x) + (0, N̄y) : X̃_{vw} → Ẍ_{vw}`.
    pub fn psi(&self, v: i64, w: i64) -> Mat<S> {
        self.memo.get_or((Op::Psi, v, w), || {
            let q = &self.quotient;
            let c: S = coef(1, w.max(0) + 1);
            let nb = q.nbar(v, w);
            let pieces = vec![
                (0, 0, nb.scale(&c)),
                (1, 0, self.upsilon(v, w).mul(&nb).scale(&c)),
                (1, 1, (*q.nbar(v, w - 1)).clone()),
            ];
            blocks(&self.split.ddot.layout(v, w), &self.layout(v, w), pieces)
        })
    }

    pub fn psi_injective(&self, v: i64, w: i64) -> bool {
        rank(&self.psi(v, w)) == self.dim(v, w)
    }

    pub fn psi_onto_p(&self, v: i64, w: i64) -> bool {
        same_span(&self.psi(v, w), &self.split.p(v, w))
    }

    /// Solve `Ψ z = u` for each column `u`, which must lie in `P(Ẍ)`.
    pub fn psi_inverse(&self, v: i64, w: i64, u: &SparseMatrix<S>) -> Result<SparseMatrix<S>, HarmonicError> {
        solve_on_subspace(&self.psi(v, w), u, &SparseMatrix::identity(self.dim(v, w))).map_err(|_| HarmonicError::ImageMismatch(v, w))
    }

    /// `P̃ = Ψ⁻¹ P`.
    pub fn p_tilde(&self, v: i64, w: i64) -> Result<Mat<S>, HarmonicError> {
        self.memo.try_get_or((Op::PTilde, v, w), || self.psi_inverse(v, w, &self.split.p(v, w)))
    }

    /// `P̃` from its closed form.
    pub fn p_tilde_formula(&self, v: i64, w: i64) -> Mat<S> {
        self.memo.get_or((Op::PTildeFormula, v, w), || {
            let e = &self.engine;
            let q = &self.quotient;
            let mut pieces = vec![(0, 0, (*q.q(v, w)).clone())];
            if w > 0 {
                pieces.push((1, 1, q.q(v, w - 1).scale(&coef(1, w))));
                let rho = e.rho_last(v, w);
                let mut lower = SparseMatrix::zeros(e.dim_x(v, w - 1), e.dim_x(v, w));
                for i in 0..=w {
                    lower = lower.axpy(&coef(2 * i - w, 2 * w * (w + 1)), &rho.mul(&e.t_pow(v, w, i as usize)));
                }
                pieces.push((1, 0, q.q(v, w - 1).mul(&lower)));
            }
            blocks(&self.layout(v, w), &self.split.ddot.layout(v, w), pieces)
        })
    }
}

/// `(X̃, 𝔟̃, 𝔡̃ + ξ̃, 𝔅̃)`; with `with_xi = false` the `ξ̃` term is dropped.
pub struct Tilde<S: Field> {
    pub ops: Arc<TildeOps<S>>,
    pub with_xi: bool,
    memo: Memo<(u8, i64, i64), SparseMatrix<S>>,
}

impl<S: Field> Tilde<S> {
    pub fn new(ops: Arc<TildeOps<S>>, with_xi: bool) -> Self {
        Tilde { ops, with_xi, memo: Memo::default() }
    }

    /// `ξ̃(x, y) = (0, ξ̄x)`.
    pub fn xi_tilde(&self, v: i64, w: i64) -> SparseMatrix<S> {
        let o = &self.ops;
        blocks(&o.layout(v, w - 1), &o.layout(v, w), vec![(1, 0, (*o.xi_bar_default(v, w)).clone())])
    }

    /// `𝔡̃(x, y) = (d̄x, −d̄y)`.
    pub fn d_tilde(&self, v: i64, w: i64) -> SparseMatrix<S> {
        let q = &self.ops.quotient;
        blocks(
            &self.ops.layout(v, w - 1),
            &self.ops.layout(v, w),
            vec![(0, 0, (*q.bar_d(v, w)).clone()), (1, 1, q.bar_d(v, w - 1).neg())],
        )
    }

    /// `s(x) = (x, 0)`.
    pub fn section(&self, v: i64, w: i64) -> SparseMatrix<S> {
        let o = &self.ops;
        blocks(&o.layout(v, w), &Layout::new([(BlockKey::Bar(v, w), o.bar_dim(v, w))]), vec![(0, 0, SparseMatrix::identity(o.bar_dim(v, w)))])
    }

    /// `i(y) = (0, y)`.
    pub fn inclusion(&self, v: i64, w: i64) -> SparseMatrix<S> {
        let o = &self.ops;
        blocks(
            &o.layout(v, w),
            &Layout::new([(BlockKey::Bar(v, w - 1), o.bar_dim(v, w - 1))]),
            vec![(1, 0, SparseMatrix::identity(o.bar_dim(v, w - 1)))],
        )
    }

    /// `π(x, y) = x`.
    pub fn projection(&self, v: i64, w: i64) -> SparseMatrix<S> {
        self.section(v, w).transpose()
    }
}

impl<S: Field> DoubleMixed<S> for Tilde<S> {
    fn name(&self) -> &'static str {
        if self.with_xi {
            "tilde"
        } else {
            "tilde-without-xi"
        }
    }

    fn layout(&self, v: i64, w: i64) -> Layout {
        self.ops.layout(v, w)
    }

    /// `𝔟̃(x, y) = (b̄x, −b̄y)`.
    fn b(&self, v: i64, w: i64) -> Mat<S> {
        self.memo.get_or((0, v, w), || {
            let q = &self.ops.quotient;
            blocks(
                &self.ops.layout(v - 1, w),
                &self.ops.layout(v, w),
                vec![(0, 0, (*q.bar_b(v, w)).clone()), (1, 1, q.bar_b(v, w - 1).neg())],
            )
        })
    }

    fn beta(&self, v: i64, w: i64) -> Mat<S> {
        self.memo.get_or((1, v, w), || {
            let d = self.d_tilde(v, w);
            if self.with_xi {
                d.add(&self.xi_tilde(v, w))
            } else {
                d
            }
        })
    }

    fn b_shift(&self) -> Option<(i64, i64)> {
        Some((0, 1))
    }

    /// `𝔅̃(x, y) = (0, x)`.
    fn big_b(&self, v: i64, w: i64) -> Mat<S> {
        self.memo.get_or((2, v, w), || {
            let o = &self.ops;
            blocks(&o.layout(v, w + 1), &o.layout(v, w), vec![(1, 0, SparseMatrix::identity(o.bar_dim(v, w)))])
        })
    }

    fn weights(&self, v: i64, w: i64) -> Vec<i64> {
        let q = &self.ops.quotient;
        let mut out = q.weights(v, w);
        out.extend(q.weights(v, w - 1));
        out
    }
}
