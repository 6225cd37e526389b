//! Relative Hochschild and cyclic homology through independent pipelines, and the SBI sequence.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::complexes::double::{bc_diff, bc_weights, tot_diff, tot_weights};
use crate::complexes::layout::BlockKey;
use crate::complexes::{Canonical, DoubleMixed, Engine, HatX, Layout};
use crate::field::Field;
use crate::harmonic::{Tilde, TildeOps};
use crate::linalg::{assemble, homology_dimension, kernel_basis, rank, LinalgError, SparseMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Kind {
    #[serde(rename = "HH")]
    Hh,
    #[serde(rename = "HC")]
    Hc,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Hh => "HH",
            Kind::Hc => "HC",
        })
    }
}

impl FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "hh" => Ok(Kind::Hh),
            "hc" => Ok(Kind::Hc),
            _ => Err(format!("unknown homology kind `{s}` (expected hh or hc)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Pipeline {
    /// The canonical relative complex built from the multiplication of `E`.
    Oracle,
    /// `Tot(X̂)`.
    HatX,
    /// `Tot BC(X̆, b̆, B̆)`.
    MixedBc,
    /// `Tot(X̄)`.
    Quotient,
    /// `Tot BC(X̃)`.
    Harmonic,
}

impl Pipeline {
    pub fn name(self) -> &'static str {
        match self {
            Pipeline::Oracle => "oracle",
            Pipeline::HatX => "hatX",
            Pipeline::MixedBc => "mixedBC",
            Pipeline::Quotient => "quotient",
            Pipeline::Harmonic => "harmonic",
        }
    }

    pub fn for_kind(kind: Kind) -> &'static [Pipeline] {
        match kind {
            Kind::Hh => &[Pipeline::Oracle, Pipeline::HatX],
            Kind::Hc => &[Pipeline::Oracle, Pipeline::MixedBc, Pipeline::Quotient, Pipeline::Harmonic],
        }
    }

    pub fn supports(self, kind: Kind) -> bool {
        Pipeline::for_kind(kind).contains(&self)
    }
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pipeline {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "oracle" => Ok(Pipeline::Oracle),
            "hatx" => Ok(Pipeline::HatX),
            "mixedbc" => Ok(Pipeline::MixedBc),
            "quotient" => Ok(Pipeline::Quotient),
            "harmonic" => Ok(Pipeline::Harmonic),
            _ => Err(format!("unknown pipeline `{s}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub instance: String,
    pub kind: Kind,
    pub pipeline: Pipeline,
    /// `dims[n]` for `n = 0..=bound`.
    pub dims: Vec<usize>,
    /// Weight ↦ dimensions per degree, when the datum is graded.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_weight: Option<BTreeMap<i64, Vec<usize>>>,
}

/// A chain complex given by its differentials and coordinate weights per degree.
pub struct ChainComplex<S> {
    /// `diffs[n] : C_n → C_{n−1}` for `n = 0..=top`.
    pub diffs: Vec<SparseMatrix<S>>,
    pub weights: Vec<Vec<i64>>,
}

impl<S: Field> ChainComplex<S> {
    fn from_fn(top: i64, diff: impl Fn(i64) -> SparseMatrix<S> + Sync, weights: impl Fn(i64) -> Vec<i64> + Sync) -> Self {
        let diffs = (0..=top).into_par_iter().map(&diff).collect();
        let weights = (0..=top).into_par_iter().map(&weights).collect();
        ChainComplex { diffs, weights }
    }

    pub fn dim(&self, n: usize) -> usize {
        self.diffs[n].cols()
    }

    fn incoming(&self, n: usize) -> &SparseMatrix<S> {
        &self.diffs[n + 1]
    }

    /// Homology dimensions in degrees `0..top`.
    pub fn homology(&self) -> Result<Vec<usize>, LinalgError> {
        (0..self.diffs.len() - 1).into_par_iter().map(|n| homology_dimension(&self.diffs[n], self.incoming(n))).collect()
    }

    /// Homology dimensions of each weight component; weights with no homology are omitted.
    pub fn homology_by_weight(&self) -> Result<BTreeMap<i64, Vec<usize>>, LinalgError> {
        let top = self.diffs.len() - 1;
        let mut all: Vec<i64> = self.weights[..top].iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        let sel = |ws: &[i64], k: i64| ws.iter().enumerate().filter(|(_, x)| **x == k).map(|(i, _)| i).collect::<Vec<_>>();
        let mut out = BTreeMap::new();
        for k in all {
            let dims = (0..top)
                .into_par_iter()
                .map(|n| {
                    let here = sel(&self.weights[n], k);
                    let below = if n == 0 { Vec::new() } else { sel(&self.weights[n - 1], k) };
                    let above = sel(&self.weights[n + 1], k);
                    let out_m = self.diffs[n].select_columns(&here).select_rows(&below);
                    let in_m = self.diffs[n + 1].select_columns(&above).select_rows(&here);
                    homology_dimension(&out_m, &in_m)
                })
                .collect::<Result<Vec<_>, _>>()?;
            if dims.iter().any(|d| *d > 0) {
                out.insert(k, dims);
            }
        }
        Ok(out)
    }
}

fn tot_complex<S: Field, C: DoubleMixed<S>>(c: &C, top: i64) -> ChainComplex<S> {
    ChainComplex::from_fn(top, |n| tot_diff(c, n), |n| tot_weights(c, n))
}

fn bc_complex<S: Field, C: DoubleMixed<S>>(c: &C, top: i64) -> ChainComplex<S> {
    ChainComplex::from_fn(top, |n| bc_diff(c, n), |n| bc_weights(c, n))
}

/// All complexes of one datum, sharing one operator cache.
pub struct Pipelines<S: Field> {
    pub name: String,
    pub engine: Arc<Engine<S>>,
    pub canonical: Canonical<S>,
    pub hatx: HatX<S>,
    pub tilde_ops: Arc<TildeOps<S>>,
    pub tilde: Tilde<S>,
}

impl<S: Field> Pipelines<S> {
    pub fn new(name: impl Into<String>, engine: Arc<Engine<S>>) -> Self {
        let tilde_ops = Arc::new(TildeOps::new(engine.clone()));
        Pipelines {
            name: name.into(),
            canonical: Canonical { engine: engine.clone() },
            hatx: HatX::new(engine.clone()),
            tilde: Tilde::new(tilde_ops.clone(), true),
            tilde_ops,
            engine,
        }
    }

    /// The chain complex whose homology in degrees `0..=bound` the pipeline reports.
    pub fn complex(&self, kind: Kind, pipeline: Pipeline, bound: i64) -> ChainComplex<S> {
        let top = bound + 1;
        match (kind, pipeline) {
            (Kind::Hh, Pipeline::Oracle) => tot_complex(&self.canonical, top),
            (Kind::Hh, Pipeline::HatX) => tot_complex(&self.hatx, top),
            (Kind::Hc, Pipeline::Oracle) => bc_complex(&self.canonical, top),
            (Kind::Hc, Pipeline::MixedBc) => bc_complex(&self.hatx, top),
            (Kind::Hc, Pipeline::Quotient) => tot_complex(&*self.tilde_ops.quotient, top),
            (Kind::Hc, Pipeline::Harmonic) => bc_complex(&self.tilde, top),
            (k, p) => panic!("pipeline {p} does not compute {k}"),
        }
    }

    pub fn report(&self, kind: Kind, pipeline: Pipeline, bound: i64) -> Result<HomologyReport, LinalgError> {
        let c = self.complex(kind, pipeline, bound);
        let dims = c.homology()?;
        let per_weight = if self.engine.datum.grading.is_some() { Some(c.homology_by_weight()?) } else { None };
        Ok(HomologyReport { instance: self.name.clone(), kind, pipeline, dims, per_weight })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub instance: String,
    pub bound: i64,
    pub reports: Vec<HomologyReport>,
    /// `(kind, degree)` pairs where the pipelines differ.
    pub disagreements: Vec<(Kind, usize)>,
}

impl Comparison {
    pub fn agree(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Run every requested pipeline and record disagreements.
pub fn compare<S: Field>(p: &Pipelines<S>, bound: i64, kinds: &[Kind]) -> Result<Comparison, LinalgError> {
    let jobs: Vec<(Kind, Pipeline)> = kinds.iter().flat_map(|k| Pipeline::for_kind(*k).iter().map(move |q| (*k, *q))).collect();
    let reports = jobs.par_iter().map(|(k, q)| p.report(*k, *q, bound)).collect::<Result<Vec<_>, _>>()?;
    Ok(Comparison { instance: p.name.clone(), bound, disagreements: disagreements(&reports), reports })
}

pub fn disagreements(reports: &[HomologyReport]) -> Vec<(Kind, usize)> {
    let mut out = Vec::new();
    for kind in [Kind::Hh, Kind::Hc] {
        let rs: Vec<_> = reports.iter().filter(|r| r.kind == kind).collect();
        let Some(first) = rs.first() else { continue };
        for n in 0..first.dims.len() {
            let weights_differ = rs.iter().any(|r| {
                r.per_weight.as_ref().zip(first.per_weight.as_ref()).is_some_and(|(a, b)| {
                    a.keys().chain(b.keys()).any(|k| a.get(k).map_or(0, |d| d[n]) != b.get(k).map_or(0, |d| d[n]))
                })
            });
            if weights_differ || rs.iter().any(|r| r.dims.get(n) != first.dims.get(n)) {
                out.push((kind, n));
            }
        }
    }
    out
}

/// Rank of the map induced in homology by `f : C_a → D_b`.
///
/// `z` spans the cycles of `C_a` and `bd` the boundaries of `D_b`.
fn induced_rank<S: Field>(f: &SparseMatrix<S>, z: &SparseMatrix<S>, bd: &SparseMatrix<S>) -> usize {
    rank(&f.mul(z).hstack(bd)) - rank(bd)
}

/// Groups `HC_m` and `HH_m` with their cycles and boundaries.
struct Groups<S> {
    hc: Vec<(SparseMatrix<S>, SparseMatrix<S>)>,
    hh: Vec<(SparseMatrix<S>, SparseMatrix<S>)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SbiSlot {
    pub level: i64,
    /// `HH_n`, `HC_n` or `HC_{n−2}` in the long sequence at level `n`.
    pub group: String,
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub composite_zero: bool,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SbiReport {
    pub instance: String,
    pub bound: i64,
    pub hh: Vec<usize>,
    pub hc: Vec<usize>,
    /// Chain-level maps commute with the differentials.
    pub chain_maps: bool,
    pub slots: Vec<SbiSlot>,
    /// `rank S_n` for `n = 0..=bound`.
    pub s_ranks: Vec<usize>,
}

impl SbiReport {
    pub fn exact(&self) -> bool {
        self.chain_maps && self.slots.iter().all(|s| s.exact)
    }
}

/// Chain maps of the long exact sequence, all built on `X̄` and `X̃`.
struct SbiMaps<'a, S: Field> {
    t: &'a Tilde<S>,
}

impl<S: Field> SbiMaps<'_, S> {
    fn tot_bar(&self, n: i64) -> Layout {
        crate::complexes::double::tot_layout(&*self.t.ops.quotient, n)
    }

    fn tot_tilde(&self, n: i64) -> Layout {
        crate::complexes::double::tot_layout(self.t, n)
    }

    fn place(&self, tgt: &Layout, src: &Layout, pieces: Vec<(BlockKey, BlockKey, SparseMatrix<S>)>) -> SparseMatrix<S> {
        let located =
            pieces.into_iter().filter_map(|(tk, sk, m)| Some((tgt.position(&tk)?, src.position(&sk)?, m))).collect::<Vec<_>>();
        assemble(&tgt.dims, &src.dims, located)
    }

    /// `π : Tot(X̃)_n → Tot(X̄)_n`; the first slot of `X̃_{vw}` carries key `Bar(v, w)`.
    fn i_map(&self, n: i64) -> SparseMatrix<S> {
        let tgt = self.tot_bar(n);
        let src = self.tot_tilde(n);
        let mut rows = vec![Vec::new(); src.total()];
        let mut off = 0;
        let mut toff = 0;
        for w in 0..=n.max(-1) {
            let v = n - w;
            let a = self.t.ops.bar_dim(v, w);
            let b = self.t.ops.bar_dim(v, w - 1);
            for k in 0..a {
                rows[off + k].push((toff + k, S::one()));
            }
            off += a + b;
            toff += a;
        }
        SparseMatrix::from_columns(tgt.total(), rows)
    }

    /// `−ξ̄ : Tot(X̄)_n → Tot(X̄)_{n−2}`.
    fn s_map(&self, n: i64) -> SparseMatrix<S> {
        let pieces = (0..=n.max(-1))
            .filter(|w| *w >= 2)
            .map(|w| (BlockKey::Bar(n - w, w - 2), BlockKey::Bar(n - w, w), self.t.ops.xi_bar_default(n - w, w).neg()))
            .collect();
        self.place(&self.tot_bar(n - 2), &self.tot_bar(n), pieces)
    }

    /// `y ↦ (0, y) : Tot(X̄)_{n} → Tot(X̃)_{n+1}`.
    fn b_map(&self, n: i64) -> SparseMatrix<S> {
        let tgt = self.tot_tilde(n + 1);
        let src = self.tot_bar(n);
        let mut cols = Vec::with_capacity(src.total());
        // Source block `X̄_{v,u}` is the second slot of `X̃_{v,u+1}`.
        let mut offsets = std::collections::HashMap::new();
        let mut off = 0;
        for w in 0..=n + 1 {
            let v = n + 1 - w;
            let a = self.t.ops.bar_dim(v, w);
            offsets.insert((v, w - 1), off + a);
            off += a + self.t.ops.bar_dim(v, w - 1);
        }
        for u in 0..=n.max(-1) {
            let v = n - u;
            let base = offsets[&(v, u)];
            for k in 0..self.t.ops.bar_dim(v, u) {
                cols.push(vec![(base + k, S::one())]);
            }
        }
        SparseMatrix::from_columns(tgt.total(), cols)
    }
}

/// Exactness of `… → HH_n → HC_n → HC_{n−2} → HH_{n−1} → …` for `n ≤ bound`, by ranks of induced maps.
pub fn sbi<S: Field>(p: &Pipelines<S>, bound: i64) -> Result<SbiReport, LinalgError> {
    let t = &p.tilde;
    let maps = SbiMaps { t };
    let top = bound + 1;
    let bar = tot_complex(&*t.ops.quotient, top);
    let til = tot_complex(t, top);
    let hc = bar.homology()?;
    let hh = til.homology()?;
    let cycles_bounds = |c: &ChainComplex<S>| -> Vec<(SparseMatrix<S>, SparseMatrix<S>)> {
        (0..top as usize).into_par_iter().map(|n| (kernel_basis(&c.diffs[n]), c.diffs[n + 1].clone())).collect()
    };
    let g = Groups { hc: cycles_bounds(&bar), hh: cycles_bounds(&til) };
    let mut chain_maps = true;
    for n in 1..=top {
        let i = maps.i_map(n);
        chain_maps &= bar.diffs[n as usize].mul(&i) == maps.i_map(n - 1).mul(&til.diffs[n as usize]);
        if n >= 2 {
            let s = maps.s_map(n);
            let lower = if n >= 3 { bar.diffs[(n - 2) as usize].clone() } else { SparseMatrix::zeros(0, s.rows()) };
            chain_maps &= lower.mul(&s) == maps.s_map(n - 1).mul(&bar.diffs[n as usize]);
        }
        if n < top {
            let b = maps.b_map(n);
            chain_maps &= til.diffs[(n + 1) as usize].mul(&b) == maps.b_map(n - 1).mul(&bar.diffs[n as usize]).neg();
        }
    }
    let zero = |v: i64| v < 0;
    // Induced ranks; groups in negative degrees vanish.
    let r_i = |n: i64| if zero(n) { 0 } else { induced_rank(&maps.i_map(n), &g.hh[n as usize].0, &g.hc[n as usize].1) };
    let r_s = |n: i64| if zero(n - 2) { 0 } else { induced_rank(&maps.s_map(n), &g.hc[n as usize].0, &g.hc[(n - 2) as usize].1) };
    let r_b = |m: i64| if zero(m) { 0 } else { induced_rank(&maps.b_map(m), &g.hc[m as usize].0, &g.hh[(m + 1) as usize].1) };
    let comp = |f: SparseMatrix<S>, z: &SparseMatrix<S>, bd: &SparseMatrix<S>| induced_rank(&f, z, bd) == 0;
    let mut slots = Vec::new();
    for n in 0..=bound {
        let nu = n as usize;
        // HH_n: in from HC_{n−1} via B, out to HC_n via I.
        let rb = r_b(n - 1);
        let ri = r_i(n);
        let c1 = n < 1 || comp(maps.i_map(n).mul(&maps.b_map(n - 1)), &g.hc[nu - 1].0, &g.hc[nu].1);
        slots.push(SbiSlot { level: n, group: format!("HH_{n}"), dim: hh[nu], rank_in: rb, rank_out: ri, composite_zero: c1, exact: c1 && hh[nu] == rb + ri });
        // HC_n: in from HH_n via I, out to HC_{n−2} via S.
        let rs = r_s(n);
        let c2 = n < 2 || comp(maps.s_map(n).mul(&maps.i_map(n)), &g.hh[nu].0, &g.hc[nu - 2].1);
        slots.push(SbiSlot { level: n, group: format!("HC_{n}"), dim: hc[nu], rank_in: ri, rank_out: rs, composite_zero: c2, exact: c2 && hc[nu] == ri + rs });
        // HC_{n−2}: in from HC_n via S, out to HH_{n−1} via B.
        if n >= 2 {
            let rb2 = r_b(n - 2);
            let c3 = comp(maps.b_map(n - 2).mul(&maps.s_map(n)), &g.hc[nu].0, &g.hh[nu - 1].1);
            let d = hc[nu - 2];
            slots.push(SbiSlot { level: n, group: format!("HC_{}", n - 2), dim: d, rank_in: rs, rank_out: rb2, composite_zero: c3, exact: c3 && d == rs + rb2 });
        }
    }
    let s_ranks = (0..=bound).map(r_s).collect();
    Ok(SbiReport { instance: p.name.clone(), bound, hh: hh[..=bound as usize].to_vec(), hc: hc[..=bound as usize].to_vec(), chain_maps, slots, s_ranks })
}
