//! The triple complex `𝒳`: columns of `X` alternating `(b, d)` and `(−b, −d')`.
//!
//! The horizontal map out of an odd column is `id − t`, out of an even column `N`.

use crate::complexes::double::{tot_diff, tot_layout};
use crate::complexes::engine::Engine;
use crate::complexes::families::HatX;
use crate::complexes::layout::{BlockKey, Layout};
use crate::field::Field;
use crate::linalg::{assemble, SparseMatrix};
use crate::tensor::SpaceId;

/// Blocks of total degree `n` in columns `lo..=hi`.
pub fn layout<S: Field>(e: &Engine<S>, n: i64, lo: i64, hi: i64) -> Layout {
    let mut blocks = Vec::new();
    for c in lo..=hi.min(n) {
        let m = n - c;
        for w in 0..=m {
            blocks.push((BlockKey::Space(SpaceId::x(m - w, w)), e.dim_x(m - w, w)));
        }
    }
    Layout::new(blocks)
}

pub fn diff<S: Field>(e: &Engine<S>, n: i64, lo: i64, hi: i64) -> SparseMatrix<S> {
    let src = layout(e, n, lo, hi);
    let tgt = layout(e, n - 1, lo, hi);
    let mut pieces = Vec::new();
    let mut put = |tk: BlockKey, sk: BlockKey, m: SparseMatrix<S>| {
        if let (Some(i), Some(j)) = (tgt.position(&tk), src.position(&sk)) {
            pieces.push((i, j, m));
        }
    };
    for c in lo..=hi.min(n) {
        let m = n - c;
        for w in 0..=m {
            let v = m - w;
            let sk = BlockKey::Space(SpaceId::x(v, w));
            let odd = c.rem_euclid(2) == 1;
            let b = e.b(v, w);
            put(BlockKey::Space(SpaceId::x(v - 1, w)), sk, if odd { b.neg() } else { (*b).clone() });
            let beta = if odd { e.d_prime(v, w).neg() } else { (*e.d(v, w)).clone() };
            put(BlockKey::Space(SpaceId::x(v, w - 1)), sk, beta);
            if c - 1 >= lo {
                let h = if odd { e.id(v, w).sub(&e.t(v, w)) } else { (*e.n(v, w)).clone() };
                put(sk, sk, h);
            }
        }
    }
    assemble(&tgt.dims, &src.dims, pieces)
}

/// Degree `n` of `Tot BP(X̆)` keeping the powers `u^p` with `p ≥ −k`.
pub fn bp_layout<S: Field>(h: &HatX<S>, n: i64, k: i64) -> Layout {
    Layout::concat((-k..=n.div_euclid(2)).map(|p| tot_layout(h, n - 2 * p)))
}

pub fn bp_diff<S: Field>(h: &HatX<S>, n: i64, k: i64) -> SparseMatrix<S> {
    let ps: Vec<i64> = (-k..=n.div_euclid(2)).collect();
    let pt: Vec<i64> = (-k..=(n - 1).div_euclid(2)).collect();
    let sd: Vec<usize> = ps.iter().map(|p| tot_layout(h, n - 2 * p).total()).collect();
    let td: Vec<usize> = pt.iter().map(|p| tot_layout(h, n - 1 - 2 * p).total()).collect();
    let mut pieces = Vec::new();
    for (j, p) in ps.iter().enumerate() {
        let m = n - 2 * p;
        if let Some(i) = pt.iter().position(|q| q == p) {
            pieces.push((i, j, tot_diff(h, m)));
        }
        if let Some(i) = pt.iter().position(|q| *q == p - 1) {
            pieces.push((i, j, crate::complexes::double::tot_connes(h, m)));
        }
    }
    assemble(&td, &sd, pieces)
}

/// Whether `Tot(τ₀ 𝒳)` equals `Tot BC(X̆)` in degree `n`, after matching blocks.
pub fn matches_bc<S: Field>(e: &Engine<S>, h: &HatX<S>, n: i64) -> bool {
    let src_t = layout(e, n, 0, n);
    let tgt_t = layout(e, n - 1, 0, n - 1);
    let src_b = crate::complexes::double::bc_layout(h, n);
    let tgt_b = crate::complexes::double::bc_layout(h, n - 1);
    let bc = crate::complexes::double::bc_diff(h, n);
    match crate::complexes::double::reorder(&bc, &src_b, &tgt_b, &src_t, &tgt_t) {
        Some(m) => m == diff(e, n, 0, n),
        None => false,
    }
}

/// Whether `Tot(τ^1 𝒳)` restricted to columns `0, 1` equals `(X̆, b̆)` in degree `n`.
pub fn matches_hatx<S: Field>(e: &Engine<S>, h: &HatX<S>, n: i64) -> bool {
    let ts = layout(e, n, 0, 1);
    let tt = layout(e, n - 1, 0, 1);
    let m = tot_diff(h, n);
    match crate::complexes::double::reorder(&m, &tot_layout(h, n), &tot_layout(h, n - 1), &ts, &tt) {
        Some(m) => m == diff(e, n, 0, 1),
        None => false,
    }
}

/// Whether the column-truncated `BP` agrees with the truncated triple total and squares to zero.
pub fn matches_bp<S: Field>(e: &Engine<S>, h: &HatX<S>, n: i64, k: i64) -> bool {
    let d = bp_diff(h, n, k);
    let d2 = bp_diff(h, n - 1, k).mul(&d);
    let ts = layout(e, n, -2 * k, n);
    let tt = layout(e, n - 1, -2 * k, n - 1);
    let same = match crate::complexes::double::reorder(&d, &bp_layout(h, n, k), &bp_layout(h, n - 1, k), &ts, &tt) {
        Some(m) => m == diff(e, n, -2 * k, n),
        None => false,
    };
    same && d2.is_zero()
}
