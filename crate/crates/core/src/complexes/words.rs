//! Word-level formulas: contractions, rotations and the canonical Hochschild operators.

use crate::algebra::{CleftDatum, CleftExtension};
use crate::field::{sign, Field};
use crate::tensor::{LinComb, Slot, Word};

/// Product of two factors: A-product, a left or right action, and zero on `M × M`.
pub fn product<S: Field>(d: &CleftDatum<S>, x: Slot, y: Slot) -> Vec<(Slot, S)> {
    match (x, y) {
        (Slot::A(i), Slot::A(j)) => d.algebra.mult.get(i as usize, j as usize).iter().map(|(k, c)| (Slot::A(*k as u32), c.clone())).collect(),
        (Slot::A(i), Slot::M(m)) => d.module.left.get(i as usize, m as usize).iter().map(|(k, c)| (Slot::M(*k as u32), c.clone())).collect(),
        (Slot::M(m), Slot::A(i)) => d.module.right.get(m as usize, i as usize).iter().map(|(k, c)| (Slot::M(*k as u32), c.clone())).collect(),
        (Slot::M(_), Slot::M(_)) => Vec::new(),
    }
}

/// `▽` on two `M` factors, zero otherwise.
pub fn nabla<S: Field>(d: &CleftDatum<S>, x: Slot, y: Slot) -> Vec<(Slot, S)> {
    match (x, y) {
        (Slot::M(a), Slot::M(b)) => d.nabla.get(a as usize, b as usize).iter().map(|(k, c)| (Slot::M(*k as u32), c.clone())).collect(),
        _ => Vec::new(),
    }
}

/// Multiplication of `E` on factors, via the extension's structure constants.
pub fn e_product<S: Field>(e: &CleftExtension<S>, x: Slot, y: Slot) -> Vec<(Slot, S)> {
    let idx = |s: Slot| match s {
        Slot::A(i) => i as usize,
        Slot::M(m) => e.dim_a + m as usize,
    };
    e.mult
        .get(idx(x), idx(y))
        .iter()
        .map(|(k, c)| (if *k < e.dim_a { Slot::A(*k as u32) } else { Slot::M((*k - e.dim_a) as u32) }, c.clone()))
        .collect()
}

/// Contract factors `j, j+1` (or `n, 0` when `j = n`) with `op`, sign `(−1)^j`.
///
/// A unit landing past slot 0 is zero in `Ā`.
pub fn contract<S: Field>(word: &[Slot], j: usize, op: impl Fn(Slot, Slot) -> Vec<(Slot, S)>) -> LinComb<S> {
    let n = word.len() - 1;
    let sg: S = sign(j);
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    if j < n {
        for (s, c) in op(word[j], word[j + 1]) {
            if j >= 1 && s == Slot::A(0) {
                continue;
            }
            let mut w = Vec::with_capacity(n);
            w.extend_from_slice(&word[..j]);
            w.push(s);
            w.extend_from_slice(&word[j + 2..]);
            out.push((w, sg.clone() * c));
        }
    } else {
        for (s, c) in op(word[n], word[0]) {
            let mut w = Vec::with_capacity(n);
            w.push(s);
            w.extend_from_slice(&word[1..n]);
            out.push((w, sg.clone() * c));
        }
    }
    out
}

pub fn mu<S: Field>(d: &CleftDatum<S>, word: &[Slot], j: usize) -> LinComb<S> {
    contract(word, j, |x, y| product(d, x, y))
}

pub fn rho<S: Field>(d: &CleftDatum<S>, word: &[Slot], j: usize) -> LinComb<S> {
    contract(word, j, |x, y| nabla(d, x, y))
}

/// `b = Σ_{j=0}^{n} μ_j`.
pub fn b<S: Field>(d: &CleftDatum<S>, word: &[Slot]) -> LinComb<S> {
    (0..word.len()).flat_map(|j| mu(d, word, j)).collect()
}

/// `d' = Σ_{j<n} ϱ_j`.
pub fn d_prime<S: Field>(d: &CleftDatum<S>, word: &[Slot]) -> LinComb<S> {
    (0..word.len() - 1).flat_map(|j| rho(d, word, j)).collect()
}

/// `d = d' + ϱ_n`.
pub fn d_full<S: Field>(d: &CleftDatum<S>, word: &[Slot]) -> LinComb<S> {
    (0..word.len()).flat_map(|j| rho(d, word, j)).collect()
}

pub fn rho_last<S: Field>(d: &CleftDatum<S>, word: &[Slot]) -> LinComb<S> {
    rho(d, word, word.len() - 1)
}

/// `μ_0` followed by the projection onto the `M` or the `A` part of slot 0.
pub fn mu0_part<S: Field>(d: &CleftDatum<S>, word: &[Slot], to_m: bool) -> LinComb<S> {
    mu(d, word, 0).into_iter().filter(|(w, _)| w[0].is_m() == to_m).collect()
}

/// `t(x) = (−1)^{i n} x_i ⊗ … ⊗ x_n ⊗ x_0 ⊗ … ⊗ x_{i−1}`, `i` the last `M` position.
pub fn t<S: Field>(word: &[Slot]) -> Option<(Word, S)> {
    let n = word.len() - 1;
    let i = word.iter().rposition(|s| s.is_m())?;
    if i == 0 {
        return Some((word.to_vec(), S::one()));
    }
    if word[0] == Slot::A(0) {
        return None;
    }
    let mut w = Vec::with_capacity(n + 1);
    w.extend_from_slice(&word[i..]);
    w.extend_from_slice(&word[..i]);
    Some((w, sign(i * n)))
}

/// Rotate the last factor to the front, sign `(−1)^{#factors − 1}`.
pub fn rotate_last<S: Field>(word: &[Slot]) -> (Word, S) {
    let k = word.len();
    let mut w = Vec::with_capacity(k);
    w.push(word[k - 1]);
    w.extend_from_slice(&word[..k - 1]);
    (w, sign(k - 1))
}

fn trailing_abar(word: &[Slot]) -> usize {
    word.iter().rev().take_while(|s| !s.is_m()).count()
}

/// `Σ_{l} 1 ⊗ 𝔱^l(y)`, `l` running over the `Ā` factors after the last `M`.
pub fn unit_rotations<S: Field>(word: &[Slot]) -> LinComb<S> {
    if word[0] == Slot::A(0) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = word.to_vec();
    let mut c = S::one();
    for l in 0..=trailing_abar(word) {
        if l > 0 {
            let (w, s) = rotate_last::<S>(&cur);
            cur = w;
            c = c * s;
        }
        let mut w = Vec::with_capacity(cur.len() + 1);
        w.push(Slot::A(0));
        w.extend_from_slice(&cur);
        out.push((w, c.clone()));
    }
    out
}

/// Summand of the normalised Hochschild boundary of `E` at position `j`.
pub fn canonical_face<S: Field>(e: &CleftExtension<S>, word: &[Slot], j: usize) -> LinComb<S> {
    contract(word, j, |x, y| e_product(e, x, y))
}

/// Normalised Hochschild boundary of `E` on `E ⊗ Ē^{⊗n}`.
pub fn canonical_b<S: Field>(e: &CleftExtension<S>, word: &[Slot]) -> LinComb<S> {
    (0..word.len()).flat_map(|j| canonical_face(e, word, j)).collect()
}

/// Connes' operator `B(c_0 ⊗ … ⊗ c_r) = Σ_i (−1)^{ir} 1 ⊗ c_i ⊗ … ⊗ c_r ⊗ c_0 ⊗ … ⊗ c_{i−1}`.
pub fn connes_b<S: Field>(word: &[Slot]) -> LinComb<S> {
    if word[0] == Slot::A(0) {
        return Vec::new();
    }
    let r = word.len() - 1;
    (0..=r)
        .map(|i| {
            let mut w = Vec::with_capacity(r + 2);
            w.push(Slot::A(0));
            w.extend_from_slice(&word[i..]);
            w.extend_from_slice(&word[..i]);
            (w, sign(i * r))
        })
        .collect()
}

pub fn m_count(word: &[Slot]) -> usize {
    word.iter().filter(|s| s.is_m()).count()
}
