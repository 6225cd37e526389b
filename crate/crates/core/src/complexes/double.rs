//! Double mixed complexes, their total complexes and Tot BC.

use crate::complexes::engine::Mat;
use crate::complexes::layout::Layout;
use crate::field::Field;
use crate::linalg::{assemble, SparseMatrix};

/// `b : (v,w) → (v−1,w)`, `β : (v,w) → (v,w−1)` and optionally `B` of total degree `+1`.
pub trait DoubleMixed<S: Field>: Sync {
    fn name(&self) -> &'static str;
    fn layout(&self, v: i64, w: i64) -> Layout;
    fn b(&self, v: i64, w: i64) -> Mat<S>;
    fn beta(&self, v: i64, w: i64) -> Mat<S>;
    /// Bidegree shift of `B`, `(1, 0)` or `(0, 1)`.
    fn b_shift(&self) -> Option<(i64, i64)>;
    fn big_b(&self, v: i64, w: i64) -> Mat<S>;
    /// Weight of every coordinate of `layout(v, w)`.
    fn weights(&self, v: i64, w: i64) -> Vec<i64>;

    fn dim(&self, v: i64, w: i64) -> usize {
        self.layout(v, w).total()
    }
}

pub fn tot_layout<S: Field, C: DoubleMixed<S> + ?Sized>(c: &C, n: i64) -> Layout {
    if n < 0 {
        return Layout::default();
    }
    Layout::concat((0..=n).map(|w| c.layout(n - w, w)))
}

fn tot_dims<S: Field, C: DoubleMixed<S> + ?Sized>(c: &C, n: i64) -> Vec<usize> {
    if n < 0 {
        return Vec::new();
    }
    (0..=n).map(|w| c.dim(n - w, w)).collect()
}

pub fn tot_weights<S: Field, C: DoubleMixed<S> + ?Sized>(c: &C, n: i64) -> Vec<i64> {
    if n < 0 {
        return Vec::new();
    }
    (0..=n).flat_map(|w| c.weights(n - w, w)).collect()
}

/// `b + β : Tot_n → Tot_{n−1}`.
pub fn tot_diff<S: Field, C: DoubleMixed<S> + ?Sized>(c: &C, n: i64) -> SparseMatrix<S> {
    let src = tot_dims(c, n);
    let tgt = tot_dims(c, n - 1);
    let mut pieces = Vec::new();
    for w in 0..=n.max(-1) {
        let v = n - w;
        if w <= n - 1 {
            pieces.push((w as usize, w as usize, (*c.b(v, w)).clone()));
        }
        if w >= 1 {
            pieces.push(((w - 1) as usize, w as usize, (*c.beta(v, w)).clone()));
        }
    }
    assemble(&tgt, &src, pieces)
}

/// `B : Tot_n → Tot_{n+1}`.
pub fn tot_connes<S: Field, C: DoubleMixed<S> + ?Sized>(c: &C, n: i64) -> SparseMatrix<S> {
    let src = tot_dims(c, n);
    let tgt = tot_dims(c, n + 1);
    let (_, sw) = c.b_shift().expect("complex without B");
    let mut pieces = Vec::new();
    for w in 0..=n.max(-1) {
        let tw = w + sw;
        if tw <= n + 1 {
            pieces.push((tw as usize, w as usize, (*c.big_b(n - w, w)).clone()));
        }
    }
    assemble(&tgt, &src, pieces)
}

/// Column `p` of Tot BC in degree `n` is `Tot_{n−2p}`.
pub fn bc_layout<S: Field, C: DoubleMixed<S> + ?Sized>(c: &C, n: i64) -> Layout {
    if n < 0 {
        return Layout::default();
    }
    Layout::concat((0..=n / 2).map(|p| tot_layout(c, n - 2 * p)))
}

pub fn bc_weights<S: Field, C: DoubleMixed<S> + ?Sized>(c: &C, n: i64) -> Vec<i64> {
    if n < 0 {
        return Vec::new();
    }
    (0..=n / 2).flat_map(|p| tot_weights(c, n - 2 * p)).collect()
}

fn bc_dims<S: Field, C: DoubleMixed<S> + ?Sized>(c: &C, n: i64) -> Vec<usize> {
    if n < 0 {
        return Vec::new();
    }
    (0..=n / 2).map(|p| tot_layout(c, n - 2 * p).total()).collect()
}

/// `D(z)_p = ∂ z_p + B z_{p+1}` on Tot BC.
pub fn bc_diff<S: Field, C: DoubleMixed<S> + ?Sized>(c: &C, n: i64) -> SparseMatrix<S> {
    let src = bc_dims(c, n);
    let tgt = bc_dims(c, n - 1);
    let mut pieces = Vec::new();
    for p in 0..src.len() as i64 {
        let m = n - 2 * p;
        if m - 1 >= 0 {
            pieces.push((p as usize, p as usize, tot_diff(c, m)));
        }
        if p >= 1 {
            pieces.push(((p - 1) as usize, p as usize, tot_connes(c, m)));
        }
    }
    assemble(&tgt, &src, pieces)
}

/// The identities of a double mixed complex at bidegree `(v, w)`, as `(name, holds)`.
pub fn axiom_checks<S: Field, C: DoubleMixed<S> + ?Sized>(c: &C, v: i64, w: i64) -> Vec<(&'static str, bool)> {
    let mut out = vec![
        ("b∘b", c.b(v - 1, w).mul(&c.b(v, w)).is_zero()),
        ("β∘β", c.beta(v, w - 1).mul(&c.beta(v, w)).is_zero()),
        ("bβ+βb", c.b(v, w - 1).mul(&c.beta(v, w)).add(&c.beta(v - 1, w).mul(&c.b(v, w))).is_zero()),
    ];
    if let Some((sv, sw)) = c.b_shift() {
        let (tv, tw) = (v + sv, w + sw);
        out.push(("B∘B", c.big_b(tv, tw).mul(&c.big_b(v, w)).is_zero()));
        out.push(("bB+Bb", c.b(tv, tw).mul(&c.big_b(v, w)).add(&c.big_b(v - 1, w).mul(&c.b(v, w))).is_zero()));
        out.push(("βB+Bβ", c.beta(tv, tw).mul(&c.big_b(v, w)).add(&c.big_b(v, w - 1).mul(&c.beta(v, w))).is_zero()));
    }
    out
}

/// Reorder a matrix between layouts with equal block sets.
pub fn reorder<S: Field>(m: &SparseMatrix<S>, src: &Layout, tgt: &Layout, new_src: &Layout, new_tgt: &Layout) -> Option<SparseMatrix<S>> {
    let ps = src.permutation_to(new_src)?;
    let pt = tgt.permutation_to(new_tgt)?;
    Some(SparseMatrix::from_triplets(
        new_tgt.total(),
        new_src.total(),
        m.entries().map(|(i, j, v)| (pt[i], ps[j], v.clone())),
    ))
}
