use std::collections::BTreeMap;

use crate::field::Field;

/// Sorted `(index, value)` pairs with no stored zeros.
pub type SparseVec<S> = Vec<(usize, S)>;

/// `a + c * b` on sorted sparse vectors.
pub fn axpy<S: Field>(a: &[(usize, S)], c: &S, b: &[(usize, S)]) -> SparseVec<S> {
    if c.is_zero() {
        return a.to_vec();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c.clone() * b[j].1.clone()));
            j += 1;
        } else {
            let v = a[i].1.clone() + c.clone() * b[j].1.clone();
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale_vec<S: Field>(v: &[(usize, S)], c: &S) -> SparseVec<S> {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x.clone() * c.clone())).collect()
}

/// Build a sorted vector from unsorted, possibly repeated, entries.
pub fn collect_vec<S: Field>(entries: impl IntoIterator<Item = (usize, S)>) -> SparseVec<S> {
    let mut acc: BTreeMap<usize, S> = BTreeMap::new();
    for (i, v) in entries {
        if v.is_zero() {
            continue;
        }
        match acc.get_mut(&i) {
            Some(x) => *x = x.clone() + v,
            None => {
                acc.insert(i, v);
            }
        }
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// Column-major sparse matrix over an exact field.
///
/// Matrices act on column vectors, so the matrix of `g ∘ f` is `G·F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<S>>,
}

impl<S: Field> SparseMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, S::one())
    }

    pub fn scalar(n: usize, c: S) -> Self {
        if c.is_zero() {
            return Self::zeros(n, n);
        }
        SparseMatrix { rows: n, cols: n, data: (0..n).map(|i| vec![(i, c.clone())]).collect() }
    }

    /// Columns must be sorted and zero-free; `from_columns` normalises them.
    pub fn from_columns(rows: usize, columns: Vec<SparseVec<S>>) -> Self {
        let data: Vec<SparseVec<S>> = columns
            .into_iter()
            .map(|c| {
                let sorted = c.windows(2).all(|w| w[0].0 < w[1].0) && c.iter().all(|(_, v)| !v.is_zero());
                if sorted { c } else { collect_vec(c) }
            })
            .collect();
        debug_assert!(data.iter().all(|c| c.last().map_or(true, |(i, _)| *i < rows)));
        SparseMatrix { rows, cols: data.len(), data }
    }

    pub fn from_triplets(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, S)>) -> Self {
        let mut per: Vec<Vec<(usize, S)>> = vec![Vec::new(); cols];
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "triplet ({r},{c}) outside {rows}x{cols}");
            per[c].push((r, v));
        }
        SparseMatrix { rows, cols, data: per.into_iter().map(collect_vec).collect() }
    }

    pub fn from_dense(rows: &[Vec<S>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_triplets(
            r,
            c,
            rows.iter().enumerate().flat_map(|(i, row)| row.iter().enumerate().map(move |(j, v)| (i, j, v.clone()))),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn column(&self, j: usize) -> &[(usize, S)] {
        &self.data[j]
    }

    pub fn columns(&self) -> &[SparseVec<S>] {
        &self.data
    }

    pub fn into_columns(self) -> Vec<SparseVec<S>> {
        self.data
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_empty())
    }

    pub fn get(&self, r: usize, c: usize) -> S {
        match self.data[c].binary_search_by_key(&r, |(i, _)| *i) {
            Ok(k) => self.data[c][k].1.clone(),
            Err(_) => S::zero(),
        }
    }

    /// Entries in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &S)> + '_ {
        self.data.iter().enumerate().flat_map(|(j, col)| col.iter().map(move |(i, v)| (*i, j, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<S>> {
        let mut out = vec![vec![S::zero(); self.cols]; self.rows];
        for (i, j, v) in self.entries() {
            out[i][j] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut per: Vec<SparseVec<S>> = vec![Vec::new(); self.rows];
        for (j, col) in self.data.iter().enumerate() {
            for (i, v) in col {
                per[*i].push((j, v.clone()));
            }
        }
        SparseMatrix { rows: self.cols, cols: self.rows, data: per }
    }

    pub fn apply(&self, v: &[(usize, S)]) -> SparseVec<S> {
        let mut acc: Vec<(usize, S)> = Vec::new();
        for (k, c) in v {
            debug_assert!(*k < self.cols);
            acc.extend(self.data[*k].iter().map(|(i, x)| (*i, x.clone() * c.clone())));
        }
        collect_vec(acc)
    }

    /// `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "cannot compose {:?} after {:?}", self.shape(), other.shape());
        let data = other.data.iter().map(|col| self.apply(col)).collect();
        SparseMatrix { rows: self.rows, cols: other.cols, data }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.axpy(&S::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.axpy(&-S::one(), other)
    }

    /// `self + c·other`.
    pub fn axpy(&self, c: &S, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sum");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| axpy(a, c, b)).collect();
        SparseMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &S) -> Self {
        SparseMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|col| scale_vec(col, c)).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn pow(&self, k: usize) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = self.mul(&acc);
        }
        acc
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        SparseMatrix { rows: self.rows, cols: idx.len(), data: idx.iter().map(|j| self.data[*j].clone()).collect() }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.rows];
        for (k, i) in idx.iter().enumerate() {
            pos[*i] = k;
        }
        let data = self
            .data
            .iter()
            .map(|col| col.iter().filter(|(i, _)| pos[*i] != usize::MAX).map(|(i, v)| (pos[*i], v.clone())).collect::<Vec<_>>())
            .map(collect_vec)
            .collect();
        SparseMatrix { rows: idx.len(), cols: self.cols, data }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        SparseMatrix { rows: self.rows, cols: data.len(), data }
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut c = a.clone();
                c.extend(b.iter().map(|(i, v)| (i + self.rows, v.clone())));
                c
            })
            .collect();
        SparseMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Embed as a block of a larger matrix.
    pub fn place(&self, rows: usize, cols: usize, row_off: usize, col_off: usize) -> Self {
        assert!(row_off + self.rows <= rows && col_off + self.cols <= cols);
        let mut data = vec![Vec::new(); cols];
        for (j, col) in self.data.iter().enumerate() {
            data[col_off + j] = col.iter().map(|(i, v)| (i + row_off, v.clone())).collect();
        }
        SparseMatrix { rows, cols, data }
    }

    /// Extract the block `rows r0..r0+nr`, `cols c0..c0+nc`.
    pub fn block(&self, r0: usize, nr: usize, c0: usize, nc: usize) -> Self {
        let data = self.data[c0..c0 + nc]
            .iter()
            .map(|col| col.iter().filter(|(i, _)| *i >= r0 && *i < r0 + nr).map(|(i, v)| (i - r0, v.clone())).collect())
            .collect();
        SparseMatrix { rows: nr, cols: nc, data }
    }

    /// Entrywise conversion into another scalar field.
    pub fn map_scalars<T: Field>(&self, f: impl Fn(&S) -> T) -> SparseMatrix<T> {
        SparseMatrix::from_columns(
            self.rows,
            self.data.iter().map(|col| col.iter().map(|(i, v)| (*i, f(v))).filter(|(_, v)| !v.is_zero()).collect()).collect(),
        )
    }
}

/// Assemble a block matrix from pieces placed at block offsets.
pub fn assemble<S: Field>(
    row_dims: &[usize],
    col_dims: &[usize],
    pieces: impl IntoIterator<Item = (usize, usize, SparseMatrix<S>)>,
) -> SparseMatrix<S> {
    let roff = offsets(row_dims);
    let coff = offsets(col_dims);
    let rows = roff[row_dims.len()];
    let cols = coff[col_dims.len()];
    let mut per: Vec<Vec<(usize, S)>> = vec![Vec::new(); cols];
    for (bi, bj, m) in pieces {
        assert_eq!(m.shape(), (row_dims[bi], col_dims[bj]), "block ({bi},{bj}) has the wrong shape");
        for (j, col) in m.data.into_iter().enumerate() {
            per[coff[bj] + j].extend(col.into_iter().map(|(i, v)| (i + roff[bi], v)));
        }
    }
    SparseMatrix::from_columns(rows, per)
}

pub fn offsets(dims: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(dims.len() + 1);
    let mut acc = 0;
    out.push(0);
    for d in dims {
        acc += d;
        out.push(acc);
    }
    out
}
