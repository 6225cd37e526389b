//! Cleft data `(A, M, ▽)` and their cleft extensions `E = A ⋉ M`.

use serde::Serialize;

use crate::field::Field;
use crate::linalg::{collect_vec, SparseMatrix, SparseVec};

/// Bilinear map `U × V → W` given on basis pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bilinear<S> {
    pub left: usize,
    pub right: usize,
    pub out: usize,
    table: Vec<SparseVec<S>>,
}

impl<S: Field> Bilinear<S> {
    pub fn zero(left: usize, right: usize, out: usize) -> Self {
        Bilinear { left, right, out, table: vec![Vec::new(); left * right] }
    }

    pub fn from_entries(
        left: usize,
        right: usize,
        out: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, S)>,
    ) -> Self {
        let mut raw: Vec<Vec<(usize, S)>> = vec![Vec::new(); left * right];
        for (i, j, k, c) in entries {
            raw[i * right + j].push((k, c));
        }
        Bilinear { left, right, out, table: raw.into_iter().map(collect_vec).collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> &[(usize, S)] {
        &self.table[i * self.right + j]
    }

    pub fn apply(&self, x: &[(usize, S)], y: &[(usize, S)]) -> SparseVec<S> {
        let mut acc = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                let ab = a.clone() * b.clone();
                acc.extend(self.get(*i, *j).iter().map(|(k, c)| (*k, c.clone() * ab.clone())));
            }
        }
        collect_vec(acc)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &S)> + '_ {
        self.table.iter().enumerate().flat_map(move |(ij, v)| {
            let (i, j) = (ij / self.right, ij % self.right);
            v.iter().map(move |(k, c)| (i, j, k.to_owned(), c))
        })
    }
}

fn basis<S: Field>(i: usize) -> SparseVec<S> {
    vec![(i, S::one())]
}

/// Finite-dimensional unital algebra with unit at basis index 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra<S> {
    pub labels: Vec<String>,
    pub mult: Bilinear<S>,
}

impl<S: Field> Algebra<S> {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// The ground field itself.
    pub fn ground() -> Self {
        Algebra { labels: vec!["1".into()], mult: Bilinear::from_entries(1, 1, 1, [(0, 0, 0, S::one())]) }
    }
}

/// `A`-bimodule structure on a vector space `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule<S> {
    pub labels: Vec<String>,
    pub left: Bilinear<S>,
    pub right: Bilinear<S>,
}

impl<S: Field> Bimodule<S> {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }
}

/// Weights of the basis elements of `A` and `M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Grading {
    pub a: Vec<i64>,
    pub m: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CleftDatum<S> {
    pub name: String,
    pub algebra: Algebra<S>,
    pub module: Bimodule<S>,
    /// `▽ : M ⊗_A M → M`.
    pub nabla: Bilinear<S>,
    pub grading: Option<Grading>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub indices: Vec<usize>,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} at {:?}", self.axiom, self.indices)
    }
}

impl<S: Field> CleftDatum<S> {
    pub fn dim_a(&self) -> usize {
        self.algebra.dim()
    }

    pub fn dim_abar(&self) -> usize {
        self.algebra.dim() - 1
    }

    pub fn dim_m(&self) -> usize {
        self.module.dim()
    }

    pub fn weight_a(&self, i: usize) -> i64 {
        self.grading.as_ref().map_or(0, |g| g.a[i])
    }

    pub fn weight_m(&self, i: usize) -> i64 {
        self.grading.as_ref().map_or(0, |g| g.m[i])
    }

    /// Every failed axiom instance; empty when the datum is a cleft datum.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let da = self.dim_a();
        let dm = self.dim_m();
        let a = &self.algebra.mult;
        let l = &self.module.left;
        let r = &self.module.right;
        let nb = &self.nabla;
        let shapes = [
            ("algebra.shape", (a.left, a.right, a.out) == (da, da, da)),
            ("bimodule.left.shape", (l.left, l.right, l.out) == (da, dm, dm)),
            ("bimodule.right.shape", (r.left, r.right, r.out) == (dm, da, dm)),
            ("nabla.shape", (nb.left, nb.right, nb.out) == (dm, dm, dm)),
        ];
        for (name, ok) in shapes {
            if !ok {
                out.push(Violation { axiom: name.into(), indices: vec![] });
            }
        }
        if !out.is_empty() || da == 0 {
            return out;
        }
        let e = |i| basis::<S>(i);
        let mut fail = |name: &str, idx: Vec<usize>, lhs: SparseVec<S>, rhs: SparseVec<S>| {
            if lhs != rhs {
                out.push(Violation { axiom: name.into(), indices: idx });
            }
        };
        for i in 0..da {
            fail("algebra.unit.left", vec![i], a.apply(&e(0), &e(i)), e(i));
            fail("algebra.unit.right", vec![i], a.apply(&e(i), &e(0)), e(i));
        }
        for i in 0..da {
            for j in 0..da {
                for k in 0..da {
                    let lhs = a.apply(&a.apply(&e(i), &e(j)), &e(k));
                    let rhs = a.apply(&e(i), &a.apply(&e(j), &e(k)));
                    fail("algebra.associativity", vec![i, j, k], lhs, rhs);
                }
            }
        }
        for m in 0..dm {
            fail("bimodule.unit.left", vec![m], l.apply(&e(0), &e(m)), e(m));
            fail("bimodule.unit.right", vec![m], r.apply(&e(m), &e(0)), e(m));
        }
        for i in 0..da {
            for j in 0..da {
                for m in 0..dm {
                    let lhs = l.apply(&a.apply(&e(i), &e(j)), &e(m));
                    let rhs = l.apply(&e(i), &l.apply(&e(j), &e(m)));
                    fail("bimodule.left.associativity", vec![i, j, m], lhs, rhs);
                    let lhs = r.apply(&e(m), &a.apply(&e(i), &e(j)));
                    let rhs = r.apply(&r.apply(&e(m), &e(i)), &e(j));
                    fail("bimodule.right.associativity", vec![m, i, j], lhs, rhs);
                    let lhs = r.apply(&l.apply(&e(i), &e(m)), &e(j));
                    let rhs = l.apply(&e(i), &r.apply(&e(m), &e(j)));
                    fail("bimodule.compatibility", vec![i, m, j], lhs, rhs);
                }
            }
        }
        for m in 0..dm {
            for n in 0..dm {
                for i in 0..da {
                    let lhs = nb.apply(&r.apply(&e(m), &e(i)), &e(n));
                    let rhs = nb.apply(&e(m), &l.apply(&e(i), &e(n)));
                    fail("nabla.balanced", vec![m, i, n], lhs, rhs);
                    let lhs = l.apply(&e(i), &nb.apply(&e(m), &e(n)));
                    let rhs = nb.apply(&l.apply(&e(i), &e(m)), &e(n));
                    fail("nabla.left_linear", vec![i, m, n], lhs, rhs);
                    let lhs = r.apply(&nb.apply(&e(m), &e(n)), &e(i));
                    let rhs = nb.apply(&e(m), &r.apply(&e(n), &e(i)));
                    fail("nabla.right_linear", vec![m, n, i], lhs, rhs);
                }
                for p in 0..dm {
                    let lhs = nb.apply(&nb.apply(&e(m), &e(n)), &e(p));
                    let rhs = nb.apply(&e(m), &nb.apply(&e(n), &e(p)));
                    fail("nabla.associativity", vec![m, n, p], lhs, rhs);
                }
            }
        }
        if let Some(g) = &self.grading {
            let mut additive = |name: &str, table: &Bilinear<S>, wl: &dyn Fn(usize) -> i64, wr: &dyn Fn(usize) -> i64, wo: &dyn Fn(usize) -> i64| {
                for (i, j, k, _) in table.entries() {
                    if wo(k) != wl(i) + wr(j) {
                        out.push(Violation { axiom: name.into(), indices: vec![i, j, k] });
                    }
                }
            };
            let wa = |i: usize| g.a[i];
            let wm = |i: usize| g.m[i];
            additive("grading.algebra", a, &wa, &wa, &wa);
            additive("grading.bimodule.left", l, &wa, &wm, &wm);
            additive("grading.bimodule.right", r, &wm, &wa, &wm);
            additive("grading.nabla", nb, &wm, &wm, &wm);
            if g.a[0] != 0 {
                out.push(Violation { axiom: "grading.unit".into(), indices: vec![0] });
            }
        }
        out
    }
}

/// `E = A ⋉_▽ M` with basis `A` first, then `M`.
#[derive(Clone, Debug)]
pub struct CleftExtension<S> {
    pub dim_a: usize,
    pub dim_m: usize,
    pub mult: Bilinear<S>,
    pub proj_a: SparseMatrix<S>,
    pub proj_m: SparseMatrix<S>,
    pub incl_a: SparseMatrix<S>,
}

impl<S: Field> CleftExtension<S> {
    pub fn dim(&self) -> usize {
        self.dim_a + self.dim_m
    }

    pub fn is_associative(&self) -> bool {
        let d = self.dim();
        let m = &self.mult;
        (0..d).all(|i| {
            (0..d).all(|j| {
                (0..d).all(|k| {
                    m.apply(&m.apply(&basis(i), &basis(j)), &basis(k)) == m.apply(&basis(i), &m.apply(&basis(j), &basis(k)))
                })
            })
        })
    }

    pub fn is_unital(&self) -> bool {
        (0..self.dim()).all(|i| self.mult.apply(&basis(0), &basis(i)) == basis(i) && self.mult.apply(&basis(i), &basis(0)) == basis(i))
    }
}

/// `(a, m)(a', m') = (aa', am' + ma' + m▽m')`.
pub fn build_cleft_extension<S: Field>(datum: &CleftDatum<S>) -> Result<CleftExtension<S>, Vec<Violation>> {
    let v = datum.validate();
    if !v.is_empty() {
        return Err(v);
    }
    let da = datum.dim_a();
    let dm = datum.dim_m();
    let d = da + dm;
    let mut entries = Vec::new();
    for (i, j, k, c) in datum.algebra.mult.entries() {
        entries.push((i, j, k, c.clone()));
    }
    for (i, m, k, c) in datum.module.left.entries() {
        entries.push((i, da + m, da + k, c.clone()));
    }
    for (m, i, k, c) in datum.module.right.entries() {
        entries.push((da + m, i, da + k, c.clone()));
    }
    for (m, n, k, c) in datum.nabla.entries() {
        entries.push((da + m, da + n, da + k, c.clone()));
    }
    let mult = Bilinear::from_entries(d, d, d, entries);
    let proj_a = SparseMatrix::from_triplets(da, d, (0..da).map(|i| (i, i, S::one())));
    let proj_m = SparseMatrix::from_triplets(dm, d, (0..dm).map(|i| (i, da + i, S::one())));
    let incl_a = proj_a.transpose();
    let ext = CleftExtension { dim_a: da, dim_m: dm, mult, proj_a, proj_m, incl_a };
    if !ext.is_associative() || !ext.is_unital() {
        return Err(vec![Violation { axiom: "extension.associativity".into(), indices: vec![] }]);
    }
    Ok(ext)
}

/// Nonunital algebra `I`, turned into the cleft datum `(k, I, mult)`.
#[derive(Clone, Debug)]
pub struct NonunitalAlgebra<S> {
    pub name: String,
    pub labels: Vec<String>,
    pub mult: Bilinear<S>,
}

pub fn adjoin_unit<S: Field>(alg: &NonunitalAlgebra<S>) -> Result<CleftDatum<S>, Vec<Violation>> {
    let d = alg.labels.len();
    let left = Bilinear::from_entries(1, d, d, (0..d).map(|m| (0, m, m, S::one())));
    let right = Bilinear::from_entries(d, 1, d, (0..d).map(|m| (m, 0, m, S::one())));
    let datum = CleftDatum {
        name: alg.name.clone(),
        algebra: Algebra::ground(),
        module: Bimodule { labels: alg.labels.clone(), left, right },
        nabla: alg.mult.clone(),
        grading: None,
    };
    let v = datum.validate();
    if v.is_empty() {
        Ok(datum)
    } else {
        Err(v)
    }
}
