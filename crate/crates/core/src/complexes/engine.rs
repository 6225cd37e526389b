use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex};

use crate::algebra::{build_cleft_extension, CleftDatum, CleftExtension, Violation};
use crate::complexes::words;
use crate::field::Field;
use crate::linalg::SparseMatrix;
use crate::tensor::{materialize, Basis, Bases, LinComb, Slot, SpaceId};

/// Thread-safe memo table.
#[derive(Debug)]
pub struct Memo<K, V> {
    map: Mutex<HashMap<K, Arc<V>>>,
}

impl<K: Eq + Hash + Clone, V> Default for Memo<K, V> {
    fn default() -> Self {
        Memo { map: Mutex::new(HashMap::new()) }
    }
}

impl<K: Eq + Hash + Clone, V> Memo<K, V> {
    pub fn get_or(&self, key: K, f: impl FnOnce() -> V) -> Arc<V> {
        if let Some(v) = self.map.lock().unwrap().get(&key) {
            return v.clone();
        }
        let v = Arc::new(f());
        self.map.lock().unwrap().entry(key).or_insert(v).clone()
    }

    /// Like `get_or`, caching only successes.
    pub fn try_get_or<E>(&self, key: K, f: impl FnOnce() -> Result<V, E>) -> Result<Arc<V>, E> {
        if let Some(v) = self.map.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = Arc::new(f()?);
        Ok(self.map.lock().unwrap().entry(key).or_insert(v).clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum XOp {
    B,
    D,
    DPrime,
    RhoLast,
    T,
    N,
    SigmaPrime,
    Id,
    Mu0M,
    TCanon,
    Theta1,
    Epsilon,
    CanonB,
    CanonBeta,
    CanonConnes,
}

pub type Mat<S> = Arc<SparseMatrix<S>>;

/// Bases, the cleft extension and memoised operator matrices of one datum.
pub struct Engine<S: Field> {
    pub datum: Arc<CleftDatum<S>>,
    pub ext: CleftExtension<S>,
    pub bases: Bases<S>,
    ops: Memo<(XOp, i64, i64), SparseMatrix<S>>,
}

impl<S: Field> Engine<S> {
    pub fn new(datum: CleftDatum<S>) -> Result<Self, Vec<Violation>> {
        let ext = build_cleft_extension(&datum)?;
        let datum = Arc::new(datum);
        Ok(Engine { bases: Bases::new(datum.clone()), datum, ext, ops: Memo::default() })
    }

    pub fn basis(&self, id: SpaceId) -> Arc<Basis> {
        self.bases.get(id)
    }

    pub fn dim_x(&self, v: i64, w: i64) -> usize {
        self.bases.dim(SpaceId::x(v, w))
    }

    fn word_op(&self, src: SpaceId, tgt: SpaceId, f: impl Fn(&[Slot]) -> LinComb<S> + Sync) -> SparseMatrix<S> {
        let s = self.basis(src);
        let t = self.basis(tgt);
        materialize(&s, &t, f).unwrap_or_else(|e| panic!("{src} -> {tgt}: {e}"))
    }

    fn memo(&self, op: XOp, v: i64, w: i64, f: impl FnOnce() -> SparseMatrix<S>) -> Mat<S> {
        self.ops.get_or((op, v, w), f)
    }

    /// `b : X_{vw} → X_{v−1,w}`.
    pub fn b(&self, v: i64, w: i64) -> Mat<S> {
        self.memo(XOp::B, v, w, || self.word_op(SpaceId::x(v, w), SpaceId::x(v - 1, w), |x| words::b(&self.datum, x)))
    }

    /// `d : X_{vw} → X_{v,w−1}`.
    pub fn d(&self, v: i64, w: i64) -> Mat<S> {
        self.memo(XOp::D, v, w, || self.word_op(SpaceId::x(v, w), SpaceId::x(v, w - 1), |x| words::d_full(&self.datum, x)))
    }

    pub fn d_prime(&self, v: i64, w: i64) -> Mat<S> {
        self.memo(XOp::DPrime, v, w, || self.word_op(SpaceId::x(v, w), SpaceId::x(v, w - 1), |x| words::d_prime(&self.datum, x)))
    }

    /// `ϱ_n` on `X_{vw}`, `n = v + w`.
    pub fn rho_last(&self, v: i64, w: i64) -> Mat<S> {
        self.memo(XOp::RhoLast, v, w, || self.word_op(SpaceId::x(v, w), SpaceId::x(v, w - 1), |x| words::rho_last(&self.datum, x)))
    }

    pub fn t(&self, v: i64, w: i64) -> Mat<S> {
        self.memo(XOp::T, v, w, || self.word_op(SpaceId::x(v, w), SpaceId::x(v, w), |x| words::t(x).into_iter().collect()))
    }

    pub fn id(&self, v: i64, w: i64) -> Mat<S> {
        self.memo(XOp::Id, v, w, || SparseMatrix::identity(self.dim_x(v, w)))
    }

    /// `N = Σ_{l=0}^{w} t^l`.
    pub fn n(&self, v: i64, w: i64) -> Mat<S> {
        self.memo(XOp::N, v, w, || {
            self.word_op(SpaceId::x(v, w), SpaceId::x(v, w), |x| {
                let mut out = Vec::new();
                let mut cur = (x.to_vec(), S::one());
                for _ in 0..=w.max(0) {
                    out.push(cur.clone());
                    let (nw, s) = words::t::<S>(&cur.0).expect("X words start in M");
                    cur = (nw, s * cur.1);
                }
                out
            })
        })
    }

    /// `σ' = Σ_{j=0}^{w−1} (w−j)/(w+1) t^j`.
    pub fn sigma_prime(&self, v: i64, w: i64) -> Mat<S> {
        self.memo(XOp::SigmaPrime, v, w, || {
            self.word_op(SpaceId::x(v, w), SpaceId::x(v, w), |x| {
                let mut out = Vec::new();
                let mut cur = (x.to_vec(), S::one());
                for j in 0..w.max(0) {
                    out.push((cur.0.clone(), cur.1.clone() * S::ratio(w - j, w + 1)));
                    let (nw, s) = words::t::<S>(&cur.0).expect("X words start in M");
                    cur = (nw, s * cur.1);
                }
                out
            })
        })
    }

    /// `t^k` as a matrix.
    pub fn t_pow(&self, v: i64, w: i64, k: usize) -> SparseMatrix<S> {
        self.t(v, w).pow(k % (w.max(0) as usize + 1))
    }

    /// `μ_0^M : A ⊗ B^n_{w+1} → X_{v−1,w}`.
    pub fn mu0_m(&self, v: i64, w: i64) -> Mat<S> {
        self.memo(XOp::Mu0M, v, w, || {
            self.word_op(SpaceId::canon(v, w), SpaceId::x(v - 1, w), |x| words::mu0_part(&self.datum, x, true))
        })
    }

    /// `t : A ⊗ B^n_{w+1} → X_{vw}`.
    pub fn t_canon(&self, v: i64, w: i64) -> Mat<S> {
        self.memo(XOp::TCanon, v, w, || self.word_op(SpaceId::canon(v, w), SpaceId::x(v, w), |x| words::t(x).into_iter().collect()))
    }

    /// `ϑ¹ : X_{v−1,w} → A ⊗ B^n_{w+1}`.
    pub fn theta1(&self, v: i64, w: i64) -> Mat<S> {
        self.memo(XOp::Theta1, v, w, || self.word_op(SpaceId::x(v - 1, w), SpaceId::canon(v, w), words::unit_rotations))
    }

    /// `ε : A ⊗ B^n_{w+1} → A ⊗ B^{n+1}_{w+1}`.
    pub fn epsilon(&self, v: i64, w: i64) -> Mat<S> {
        self.memo(XOp::Epsilon, v, w, || {
            self.word_op(SpaceId::canon(v, w), SpaceId::canon(v + 1, w), |x| {
                words::unit_rotations::<S>(x).into_iter().map(|(w, c)| (w, -c)).collect()
            })
        })
    }

    fn canon_pair(&self, v: i64, w: i64) -> [SpaceId; 2] {
        [SpaceId::x(v, w), SpaceId::canon(v, w)]
    }

    fn canonical_op(
        &self,
        op: XOp,
        v: i64,
        w: i64,
        tv: i64,
        tw: i64,
        f: impl Fn(&[Slot]) -> LinComb<S> + Sync,
    ) -> Mat<S> {
        self.memo(op, v, w, || {
            let src = self.canon_pair(v, w);
            let tgt = self.canon_pair(tv, tw);
            let mut words = Vec::new();
            for id in tgt {
                words.extend(self.basis(id).words.iter().cloned());
            }
            let tb = Basis::new(SpaceId::x(tv, tw), words);
            let cols: Vec<SparseMatrix<S>> = src
                .iter()
                .map(|id| materialize(&self.basis(*id), &tb, &f).unwrap_or_else(|e| panic!("canonical {op:?}: {e}")))
                .collect();
            cols[0].hstack(&cols[1])
        })
    }

    /// `𝔟̂ : 𝔛̂_{vw} → 𝔛̂_{v−1,w}`, the part of the Hochschild boundary of `E` keeping the number of `M` factors.
    pub fn canon_b(&self, v: i64, w: i64) -> Mat<S> {
        self.canonical_op(XOp::CanonB, v, w, v - 1, w, |x| {
            let m = words::m_count(x);
            words::canonical_b(&self.ext, x).into_iter().filter(|(y, _)| words::m_count(y) == m).collect()
        })
    }

    /// `𝔡̂ : 𝔛̂_{vw} → 𝔛̂_{v,w−1}`, the part lowering the number of `M` factors.
    pub fn canon_beta(&self, v: i64, w: i64) -> Mat<S> {
        self.canonical_op(XOp::CanonBeta, v, w, v, w - 1, |x| {
            let m = words::m_count(x);
            words::canonical_b(&self.ext, x).into_iter().filter(|(y, _)| words::m_count(y) + 1 == m).collect()
        })
    }

    /// `𝔅̂ : 𝔛̂_{vw} → 𝔛̂_{v+1,w}`.
    pub fn canon_connes(&self, v: i64, w: i64) -> Mat<S> {
        self.canonical_op(XOp::CanonConnes, v, w, v + 1, w, words::connes_b)
    }
}
