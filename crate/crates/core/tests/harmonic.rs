mod common;

use std::sync::Arc;

use relcyc::complexes::{DdotX, DoubleMixed, Engine};
use relcyc::field::Field;
use relcyc::harmonic::{HarmonicSplit, ProjectionMethod, TildeOps};
use relcyc::linalg::rank;
use relcyc::tensor::{Slot, SpaceId};
use relcyc::{QMatrix, Q};

fn q(n: i64) -> Q {
    Q::from_i64(n)
}

fn engine(name: &str) -> Arc<Engine<Q>> {
    Arc::new(Engine::new(common::load(name)).unwrap())
}

/// `(x, y) ∈ Ẍ_{vw}` from coefficient lists on words of `X_{vw}` and `X_{v,w−1}`.
fn ddot_vec(e: &Engine<Q>, v: i64, w: i64, first: &[(&[Slot], i64)], second: &[(&[Slot], i64)]) -> QMatrix {
    let b0 = e.basis(SpaceId::x(v, w));
    let b1 = e.basis(SpaceId::x(v, w - 1));
    let mut entries: Vec<(usize, usize, Q)> = first.iter().map(|(s, c)| (b0.index_of(s).unwrap(), 0, q(*c))).collect();
    entries.extend(second.iter().map(|(s, c)| (b0.len() + b1.index_of(s).unwrap(), 0, q(*c))));
    QMatrix::from_triplets(b0.len() + b1.len(), 1, entries)
}

const X: Slot = Slot::M(0);
const Y: Slot = Slot::M(1);

#[test]
fn projection_is_identity_in_row_zero() {
    for name in ["T", "TP3", "AX"] {
        let e = engine(name);
        let split = HarmonicSplit::new(e.clone());
        for v in 0..4 {
            assert_eq!(*split.p(v, 0), QMatrix::identity(split.dim(v, 0)), "{name} ({v},0)");
            assert!(split.green(v, 0).unwrap().is_zero());
        }
    }
}

#[test]
fn projection_examples() {
    let e = engine("DN");
    let split = HarmonicSplit::new(e.clone());
    let eps = Slot::M(0);
    let u = ddot_vec(&e, 0, 2, &[], &[(&[eps, eps], 1)]);
    assert!(split.p(0, 2).mul(&u).is_zero());

    let e = engine("TP3");
    let split = HarmonicSplit::new(e.clone());
    let u = ddot_vec(&e, 0, 2, &[], &[(&[Y, X], 1)]);
    let expected = ddot_vec(&e, 0, 2, &[], &[(&[Y, X], 1), (&[X, Y], -1)]).scale(&Q::ratio(1, 2));
    assert_eq!(split.p(0, 2).mul(&u), expected);
    for (v, w) in [(0, 1), (0, 2), (0, 3), (1, 1), (1, 2)] {
        assert_eq!(split.projection(v, w, ProjectionMethod::Corollary), split.projection(v, w, ProjectionMethod::Formulas));
    }
}

#[test]
fn karoubi_minimal_polynomial_and_green_operator() {
    let e = engine("T");
    let split = HarmonicSplit::new(e.clone());
    for n in 0..=5 {
        for w in 0..=n {
            let v = n - w;
            let id = split.identity(v, w);
            let k = split.kappa(v, w);
            let wu = w as usize;
            let poly = split.kappa_pow(v, w, wu + 1).sub(&id).mul(&split.kappa_pow(v, w, wu).sub(&id));
            assert!(poly.is_zero(), "P_w(κ̈) at ({v},{w})");
            let g = split.green(v, w).unwrap();
            assert_eq!(g.mul(&id.sub(&k)).add(&split.p(v, w)), id, "G(1−κ̈) + P at ({v},{w})");
        }
    }
}

#[test]
fn de_rham_differential_is_exact() {
    let e = engine("T");
    let dd = DdotX::new(e.clone());
    for n in 0..=5 {
        for w in 0..=n {
            let v = n - w;
            let r = dd.d_r(v, w);
            assert!(dd.d_r(v, w + 1).mul(&r).is_zero());
            assert_eq!(rank(&r) + rank(&dd.d_r(v, w - 1)), dd.dim(v, w), "rank identity at ({v},{w})");
        }
    }
}

#[test]
fn psi_examples() {
    let e = engine("TP3");
    let ops = TildeOps::new(e.clone());
    let b = e.basis(SpaceId::x(0, 1));
    let class = ops.quotient.q(0, 1).block(0, 1, b.index_of(&[X, Y]).unwrap(), 1);
    let input = class.vstack(&QMatrix::zeros(ops.bar_dim(0, 0), 1));
    let expected = ddot_vec(&e, 0, 1, &[(&[X, Y], 1), (&[Y, X], -1)], &[]).scale(&Q::ratio(1, 2));
    assert_eq!(ops.psi(0, 1).mul(&input), expected);

    let e = engine("T");
    let ops = TildeOps::new(e.clone());
    for n in 1..=5 {
        for w in 1..=n {
            let v = n - w;
            let psi = ops.psi(v, w);
            let (top, bottom) = (ops.bar_dim(v, w), ops.bar_dim(v, w - 1));
            let second = psi.block(0, psi.rows(), top, bottom);
            let nbar = ops.quotient.nbar(v, w - 1);
            assert_eq!(second, QMatrix::zeros(e.dim_x(v, w), bottom).vstack(&nbar), "Ψ(0, ȳ) at ({v},{w})");
            assert_eq!(rank(&psi), rank(&ops.split.p(v, w)), "rank Ψ = rank P at ({v},{w})");
        }
    }
}

#[test]
fn p_tilde_examples() {
    let e = engine("T");
    let ops = TildeOps::new(e.clone());
    for n in 1..=4 {
        for w in 1..=n {
            let v = n - w;
            let f = ops.p_tilde_formula(v, w);
            let off = e.dim_x(v, w);
            let y = f.block(0, f.rows(), off, e.dim_x(v, w - 1));
            let expected = QMatrix::zeros(ops.bar_dim(v, w), e.dim_x(v, w - 1)).vstack(&ops.quotient.q(v, w - 1).scale(&Q::ratio(1, w)));
            assert_eq!(y, expected, "P̃(0, y) at ({v},{w})");
            assert_eq!(*ops.p_tilde(v, w).unwrap(), *f);
        }
        assert_eq!(ops.p_tilde_formula(n, 0).block(0, ops.bar_dim(n, 0), 0, e.dim_x(n, 0)), *ops.quotient.q(n, 0));
    }

    let e = engine("TP5");
    let ops = TildeOps::new(e.clone());
    let xxx = ddot_vec(&e, 0, 2, &[(&[X; 3], 1)], &[]);
    let b = e.basis(SpaceId::x(0, 2));
    let class = ops.quotient.q(0, 2).block(0, ops.bar_dim(0, 2), b.index_of(&[X; 3]).unwrap(), 1);
    let expected = class.vstack(&QMatrix::zeros(ops.bar_dim(0, 1), 1));
    assert_eq!(ops.p_tilde_formula(0, 2).mul(&xxx), expected);
    assert_eq!(ops.p_tilde(0, 2).unwrap().mul(&xxx), expected);
}

#[test]
fn tilde_complex_degrees() {
    let e = engine("TP3");
    let ops = Arc::new(TildeOps::new(e));
    let t = relcyc::harmonic::Tilde::new(ops.clone(), true);
    assert_eq!(t.dim(0, 3), ops.bar_dim(0, 3) + ops.bar_dim(0, 2));
    assert_eq!(t.b_shift(), Some((0, 1)));
    assert_eq!(t.name(), "tilde");
    assert_eq!(relcyc::harmonic::Tilde::new(ops, false).name(), "tilde-without-xi");
}
