//! Simple tensors, the spaces they span, and operator materialisation.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::CleftDatum;
use crate::field::Field;
use crate::linalg::{collect_vec, SparseMatrix};

/// One tensor factor: a basis element of `A` (of `Ā` past slot 0) or of `M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    A(u32),
    M(u32),
}

impl Slot {
    pub fn is_m(self) -> bool {
        matches!(self, Slot::M(_))
    }
}

pub type Word = Vec<Slot>;

/// Linear combination of words.
pub type LinComb<S> = Vec<(Word, S)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    /// `X_{vw} = M ⊗ B^n_w`: slot 0 in `M`, `w` further `M` slots and `v` slots in `Ā`.
    X,
    /// `A ⊗ B^n_{w+1}`: slot 0 in `A`, `w + 1` slots in `M` and `v − 1` slots in `Ā`.
    Canon,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SpaceId {
    pub family: Family,
    pub v: i64,
    pub w: i64,
}

impl SpaceId {
    pub fn x(v: i64, w: i64) -> Self {
        SpaceId { family: Family::X, v, w }
    }

    pub fn canon(v: i64, w: i64) -> Self {
        SpaceId { family: Family::Canon, v, w }
    }

    pub fn degree(&self) -> i64 {
        self.v + self.w
    }

    fn is_empty_range(&self) -> bool {
        match self.family {
            Family::X => self.v < 0 || self.w < 0,
            Family::Canon => self.v < 1 || self.w < 0,
        }
    }
}

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::X => write!(f, "X({},{})", self.v, self.w),
            Family::Canon => write!(f, "C({},{})", self.v, self.w),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TensorError {
    #[error("operator produced a word outside {0}: {1:?}")]
    TargetMismatch(String, Word),
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim X_{vw} = dM^{w+1} · dĀ^v · C(n, w)`; zero for negative bidegrees.
pub fn dim_x(dm: usize, dabar: usize, v: i64, w: i64) -> usize {
    if v < 0 || w < 0 {
        return 0;
    }
    let n = (v + w) as u64;
    (dm as u64).pow(w as u32 + 1) as usize * (dabar as u64).pow(v as u32) as usize * binomial(n, w as u64) as usize
}

pub fn dim_space<S: Field>(datum: &CleftDatum<S>, id: SpaceId) -> usize {
    if id.is_empty_range() {
        return 0;
    }
    match id.family {
        Family::X => dim_x(datum.dim_m(), datum.dim_abar(), id.v, id.w),
        Family::Canon => {
            let n = (id.v + id.w) as u64;
            datum.dim_a()
                * datum.dim_m().pow(id.w as u32 + 1)
                * datum.dim_abar().pow(id.v as u32 - 1)
                * binomial(n, id.w as u64 + 1) as usize
        }
    }
}

/// `k`-subsets of `{1..=n}` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - (k - 1 - i) {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Words ordered by the set of `M` positions, then lexicographically by slot indices.
pub fn enumerate<S: Field>(datum: &CleftDatum<S>, id: SpaceId) -> Vec<Word> {
    if id.is_empty_range() {
        return Vec::new();
    }
    let n = (id.v + id.w) as usize;
    let (first, m_count): (Vec<Slot>, usize) = match id.family {
        Family::X => ((0..datum.dim_m() as u32).map(Slot::M).collect(), id.w as usize),
        Family::Canon => ((0..datum.dim_a() as u32).map(Slot::A).collect(), id.w as usize + 1),
    };
    let ms: Vec<Slot> = (0..datum.dim_m() as u32).map(Slot::M).collect();
    let abar: Vec<Slot> = (1..datum.dim_a() as u32).map(Slot::A).collect();
    let mut out = Vec::new();
    for pos in subsets(n, m_count) {
        let mut choices: Vec<&[Slot]> = vec![&first];
        for j in 1..=n {
            choices.push(if pos.binary_search(&j).is_ok() { &ms } else { &abar });
        }
        if choices.iter().any(|c| c.is_empty()) {
            continue;
        }
        let mut idx = vec![0usize; n + 1];
        loop {
            out.push(idx.iter().zip(&choices).map(|(i, c)| c[*i]).collect());
            let mut j = n + 1;
            loop {
                if j == 0 {
                    break;
                }
                j -= 1;
                idx[j] += 1;
                if idx[j] < choices[j].len() {
                    break;
                }
                idx[j] = 0;
            }
            if idx.iter().all(|i| *i == 0) {
                break;
            }
        }
    }
    out
}

/// Space of a relative canonical word, if it is one.
pub fn signature(word: &[Slot]) -> Option<SpaceId> {
    let ms = word[1..].iter().filter(|s| s.is_m()).count() as i64;
    let abar = word.len() as i64 - 1 - ms;
    match word[0] {
        Slot::M(_) => Some(SpaceId::x(abar, ms)),
        Slot::A(_) if ms > 0 => Some(SpaceId::canon(abar + 1, ms - 1)),
        Slot::A(_) => None,
    }
}

#[derive(Clone, Debug)]
pub struct Basis {
    pub id: SpaceId,
    pub words: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl Basis {
    pub fn new(id: SpaceId, words: Vec<Word>) -> Self {
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        Basis { id, words, index }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn index_of(&self, w: &[Slot]) -> Option<usize> {
        self.index.get(w).copied()
    }
}

/// Memoised bases of the spaces of one datum.
#[derive(Debug)]
pub struct Bases<S> {
    pub datum: Arc<CleftDatum<S>>,
    cache: Mutex<HashMap<SpaceId, Arc<Basis>>>,
}

impl<S: Field> Bases<S> {
    pub fn new(datum: Arc<CleftDatum<S>>) -> Self {
        Bases { datum, cache: Mutex::new(HashMap::new()) }
    }

    pub fn get(&self, id: SpaceId) -> Arc<Basis> {
        if let Some(b) = self.cache.lock().unwrap().get(&id) {
            return b.clone();
        }
        let b = Arc::new(Basis::new(id, enumerate(&self.datum, id)));
        self.cache.lock().unwrap().entry(id).or_insert(b).clone()
    }

    pub fn dim(&self, id: SpaceId) -> usize {
        dim_space(&self.datum, id)
    }

    pub fn word_weight(&self, w: &[Slot]) -> i64 {
        w.iter()
            .map(|s| match s {
                Slot::A(i) => self.datum.weight_a(*i as usize),
                Slot::M(i) => self.datum.weight_m(*i as usize),
            })
            .sum()
    }

    pub fn weights(&self, id: SpaceId) -> Vec<i64> {
        self.get(id).words.iter().map(|w| self.word_weight(w)).collect()
    }
}

/// Matrix of a word-level operator between two bases.
pub fn materialize<S, F>(src: &Basis, tgt: &Basis, f: F) -> Result<SparseMatrix<S>, TensorError>
where
    S: Field,
    F: Fn(&[Slot]) -> LinComb<S> + Sync,
{
    let cols: Result<Vec<_>, TensorError> = src
        .words
        .par_iter()
        .map(|w| {
            let mut entries = Vec::new();
            for (out, c) in f(w) {
                match tgt.index_of(&out) {
                    Some(i) => entries.push((i, c)),
                    None => return Err(TensorError::TargetMismatch(tgt.id.to_string(), out)),
                }
            }
            Ok(collect_vec(entries))
        })
        .collect();
    Ok(SparseMatrix::from_columns(tgt.len(), cols?))
}

pub fn format_word<S: Field>(datum: &CleftDatum<S>, w: &[Slot]) -> String {
    w.iter()
        .map(|s| match s {
            Slot::A(i) => datum.algebra.labels[*i as usize].clone(),
            Slot::M(i) => datum.module.labels[*i as usize].clone(),
        })
        .collect::<Vec<_>>()
        .join("⊗")
}
