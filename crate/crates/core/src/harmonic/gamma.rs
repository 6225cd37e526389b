//! The equivalence between `Tot(X̄)` and `Tot BC(X̃)` and the retract it comes from.

use crate::complexes::double::{bc_diff, bc_layout, tot_diff, tot_layout};
use crate::complexes::perturbation::Retract;
use crate::complexes::{BlockKey, Layout};
use crate::field::{sign, Field};
use crate::harmonic::tilde::Tilde;
use crate::linalg::{assemble, SparseMatrix};

/// `ξ̄^k : X̄_{vw} → X̄_{v,w−2k}`.
fn xi_power<S: Field>(t: &Tilde<S>, v: i64, w: i64, k: i64) -> SparseMatrix<S> {
    let mut acc = SparseMatrix::identity(t.ops.bar_dim(v, w));
    for s in 0..k {
        acc = t.ops.xi_bar_default(v, w - 2 * s).mul(&acc);
    }
    acc
}

fn place<S: Field>(tgt: &Layout, src: &Layout, pieces: Vec<(BlockKey, BlockKey, SparseMatrix<S>)>) -> SparseMatrix<S> {
    let located = pieces
        .into_iter()
        .filter_map(|(tk, sk, m)| Some((tgt.position(&tk)?, src.position(&sk)?, m)))
        .collect::<Vec<_>>();
    assemble(&tgt.dims, &src.dims, located)
}

/// `Γ(x) = ((x,0), (−ξ̄x,0), (ξ̄²x,0), …)` in degree `n`; `full = false` keeps only the first term.
pub fn gamma<S: Field>(t: &Tilde<S>, n: i64, full: bool) -> SparseMatrix<S> {
    let src = tot_layout(&*t.ops.quotient, n);
    let tgt = bc_layout(t, n);
    let mut pieces = Vec::new();
    for w in 0..=n {
        let v = n - w;
        let top = if full { w / 2 } else { 0 };
        for k in 0..=top {
            pieces.push((BlockKey::Bar(v, w - 2 * k), BlockKey::Bar(v, w), xi_power(t, v, w, k).scale(&sign(k as usize))));
        }
    }
    place(&tgt, &src, pieces)
}

/// `Π(z) = x_0`.
pub fn pi<S: Field>(t: &Tilde<S>, n: i64) -> SparseMatrix<S> {
    let src = bc_layout(t, n);
    let tgt = tot_layout(&*t.ops.quotient, n);
    let pieces = (0..=n).map(|w| (BlockKey::Bar(n - w, w), BlockKey::Bar(n - w, w), SparseMatrix::identity(t.ops.bar_dim(n - w, w)))).collect();
    place(&tgt, &src, pieces)
}

/// `Ξ(z)_{i+1} = (−Σ_j (−1)^j ξ̄^j y_{i−j}, 0)` from degree `n` to `n + 1`; `full = false` keeps `j = 0`.
pub fn xi_homotopy<S: Field>(t: &Tilde<S>, n: i64, full: bool) -> SparseMatrix<S> {
    let src = bc_layout(t, n);
    let tgt = bc_layout(t, n + 1);
    let mut pieces = Vec::new();
    for c in 0..=n / 2 {
        let m = n - 2 * c;
        for w in 0..=m {
            let v = m - w;
            let u = w - 1;
            if u < 0 {
                continue;
            }
            let top = if full { u / 2 } else { 0 };
            for j in 0..=top {
                pieces.push((BlockKey::Bar(v, u - 2 * j), BlockKey::Bar(v, u), xi_power(t, v, u, j).scale(&-sign::<S>(j as usize))));
            }
        }
    }
    place(&tgt, &src, pieces)
}

/// `(Γ', Π', Ξ')` between `Tot(X̄)` and `Tot BC(X̃)` without `ξ̃`, in degrees `0..=top`.
pub fn prime_retract<S: Field>(plain: &Tilde<S>, top: i64) -> Retract<S> {
    assert!(!plain.with_xi);
    Retract {
        dy: (0..=top).map(|n| tot_diff(&*plain.ops.quotient, n)).collect(),
        dx: (0..=top).map(|n| bc_diff(plain, n)).collect(),
        p: (0..=top).map(|n| pi(plain, n)).collect(),
        i: (0..=top).map(|n| gamma(plain, n, false)).collect(),
        h: (0..top).map(|n| xi_homotopy(plain, n, false)).collect(),
    }
}

/// `(Γ, Π, Ξ)` for `Tot BC(X̃)` with `ξ̃`.
pub fn full_retract<S: Field>(with_xi: &Tilde<S>, top: i64) -> Retract<S> {
    assert!(with_xi.with_xi);
    Retract {
        dy: (0..=top).map(|n| tot_diff(&*with_xi.ops.quotient, n)).collect(),
        dx: (0..=top).map(|n| bc_diff(with_xi, n)).collect(),
        p: (0..=top).map(|n| pi(with_xi, n)).collect(),
        i: (0..=top).map(|n| gamma(with_xi, n, true)).collect(),
        h: (0..top).map(|n| xi_homotopy(with_xi, n, true)).collect(),
    }
}

/// `Ω'`: the `ξ̃` part of the differential of `Tot BC(X̃)`.
pub fn omega_prime<S: Field>(plain: &Tilde<S>, with_xi: &Tilde<S>, top: i64) -> Vec<SparseMatrix<S>> {
    (0..=top).map(|n| bc_diff(with_xi, n).sub(&bc_diff(plain, n))).collect()
}
