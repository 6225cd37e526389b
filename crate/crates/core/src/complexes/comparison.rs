//! Comparison maps between `𝔛̂` and `X̂`, and the total retract they assemble into.

use crate::complexes::double::{tot_diff, DoubleMixed};
use crate::complexes::families::{blocks, Canonical, HatX};
use crate::complexes::perturbation::Retract;
use crate::field::Field;
use crate::linalg::{assemble, SparseMatrix};

/// `θ̂(x, y) = (x + t(y), μ_0^M(y))`.
pub fn theta_hat<S: Field>(c: &Canonical<S>, h: &HatX<S>, v: i64, w: i64) -> SparseMatrix<S> {
    let e = &h.engine;
    blocks(
        &h.layout(v, w),
        &c.layout(v, w),
        vec![(0, 0, (*e.id(v, w)).clone()), (0, 1, (*e.t_canon(v, w)).clone()), (1, 1, (*e.mu0_m(v, w)).clone())],
    )
}

/// `ϑ̂(x, y) = (x, ϑ¹(y))`.
pub fn vartheta_hat<S: Field>(c: &Canonical<S>, h: &HatX<S>, v: i64, w: i64) -> SparseMatrix<S> {
    let e = &h.engine;
    blocks(&c.layout(v, w), &h.layout(v, w), vec![(0, 0, (*e.id(v, w)).clone()), (1, 1, (*e.theta1(v, w)).clone())])
}

/// `ε̂(x, y) = (0, ε(y)) : 𝔛̂_{vw} → 𝔛̂_{v+1,w}`.
pub fn epsilon_hat<S: Field>(c: &Canonical<S>, v: i64, w: i64) -> SparseMatrix<S> {
    blocks(&c.layout(v + 1, w), &c.layout(v, w), vec![(1, 1, (*c.engine.epsilon(v, w)).clone())])
}

/// Total-degree map built from bidegree pieces `(v, w) ↦ (v + dv, w)`.
fn tot_map<S: Field>(
    src: &dyn Fn(i64, i64) -> usize,
    tgt: &dyn Fn(i64, i64) -> usize,
    n: i64,
    dv: i64,
    piece: &dyn Fn(i64, i64) -> SparseMatrix<S>,
) -> SparseMatrix<S> {
    let sd: Vec<usize> = (0..=n).map(|w| src(n - w, w)).collect();
    let tn = n + dv;
    let td: Vec<usize> = if tn < 0 { Vec::new() } else { (0..=tn).map(|w| tgt(tn - w, w)).collect() };
    let pieces = (0..=n).filter(|w| *w <= tn).map(|w| (w as usize, w as usize, piece(n - w, w))).collect::<Vec<_>>();
    assemble(&td, &sd, pieces)
}

/// Total differential with only the `b`-direction.
pub fn tot_b_only<S: Field, C: DoubleMixed<S> + ?Sized>(c: &C, n: i64) -> SparseMatrix<S> {
    tot_map(&|v, w| c.dim(v, w), &|v, w| c.dim(v, w), n, -1, &|v, w| (*c.b(v, w)).clone())
}

/// Total differential with only the `β`-direction.
pub fn tot_beta_only<S: Field, C: DoubleMixed<S> + ?Sized>(c: &C, n: i64) -> SparseMatrix<S> {
    let sd: Vec<usize> = (0..=n).map(|w| c.dim(n - w, w)).collect();
    let td: Vec<usize> = if n < 1 { Vec::new() } else { (0..n).map(|w| c.dim(n - 1 - w, w)).collect() };
    let pieces = (1..=n).map(|w| ((w - 1) as usize, w as usize, (*c.beta(n - w, w)).clone())).collect::<Vec<_>>();
    assemble(&td, &sd, pieces)
}

pub fn tot_theta<S: Field>(c: &Canonical<S>, h: &HatX<S>, n: i64) -> SparseMatrix<S> {
    tot_map(&|v, w| c.dim(v, w), &|v, w| h.dim(v, w), n, 0, &|v, w| theta_hat(c, h, v, w))
}

pub fn tot_vartheta<S: Field>(c: &Canonical<S>, h: &HatX<S>, n: i64) -> SparseMatrix<S> {
    tot_map(&|v, w| h.dim(v, w), &|v, w| c.dim(v, w), n, 0, &|v, w| vartheta_hat(c, h, v, w))
}

pub fn tot_epsilon<S: Field>(c: &Canonical<S>, n: i64) -> SparseMatrix<S> {
    tot_map(&|v, w| c.dim(v, w), &|v, w| c.dim(v, w), n, 1, &|v, w| epsilon_hat(c, v, w))
}

/// Column-wise retract of `(𝔛̂, 𝔟̂)` onto `(X̂, b̂)` in degrees `0..=top`.
pub fn column_retract<S: Field>(c: &Canonical<S>, h: &HatX<S>, top: i64) -> Retract<S> {
    let mut r = Retract { dy: Vec::new(), dx: Vec::new(), p: Vec::new(), i: Vec::new(), h: Vec::new() };
    for n in 0..=top {
        r.dy.push(tot_b_only(h, n));
        r.dx.push(tot_b_only(c, n));
        r.p.push(tot_theta(c, h, n));
        r.i.push(tot_vartheta(c, h, n));
        if n < top {
            r.h.push(tot_epsilon(c, n));
        }
    }
    r
}

/// The retract expected after perturbing by `𝔡̂`: differential `b̆`, maps `θ̆`, `ϑ̆`, `ε̆`.
pub fn total_retract<S: Field>(c: &Canonical<S>, h: &HatX<S>, top: i64) -> Retract<S> {
    let mut r = column_retract(c, h, top);
    r.dy = (0..=top).map(|n| tot_diff(h, n)).collect();
    r.dx = (0..=top).map(|n| tot_diff(c, n)).collect();
    r
}

/// Perturbation `𝔡̂` in degrees `0..=top`.
pub fn canonical_perturbation<S: Field>(c: &Canonical<S>, top: i64) -> Vec<SparseMatrix<S>> {
    (0..=top).map(|n| tot_beta_only(c, n)).collect()
}
