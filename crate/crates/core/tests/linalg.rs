use num_traits::{One, Zero};
use proptest::prelude::*;
use relcyc::field::Field;
use relcyc::linalg::{
    axpy, column_basis, homology_dimension, kernel_basis, rank, same_span, solve_on_subspace, spans, LinalgError, SparseMatrix,
};
use relcyc::{QMatrix, Q};

fn q(n: i64) -> Q {
    Q::from_i64(n)
}

fn dense(rows: &[&[i64]]) -> QMatrix {
    SparseMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>())
}

/// Reference rank by fraction-exact row reduction on a dense copy.
fn dense_rank(m: &QMatrix) -> usize {
    let mut a = m.to_dense();
    let (rows, cols) = m.shape();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                for k in 0..cols {
                    let d = &f * &a[r][k];
                    a[i][k] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

fn dense_mul(a: &QMatrix, b: &QMatrix) -> Vec<Vec<Q>> {
    let (x, y) = (a.to_dense(), b.to_dense());
    (0..a.rows()).map(|i| (0..b.cols()).map(|j| (0..a.cols()).map(|k| &x[i][k] * &y[k][j]).sum()).collect()).collect()
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = QMatrix> {
    (0..=max_rows, 0..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..=3], r * c).prop_map(move |v| {
            SparseMatrix::from_triplets(r, c, v.iter().enumerate().map(|(k, &x)| (k / c.max(1), k % c.max(1), q(x))))
        })
    })
}

fn shaped(r: usize, c: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(prop_oneof![2 => Just(0i64), 3 => -4i64..=4], r * c)
        .prop_map(move |v| SparseMatrix::from_triplets(r, c, v.iter().enumerate().map(|(k, &x)| (k / c, k % c, q(x)))))
}

#[test]
fn rank_of_small_examples() {
    assert_eq!(rank(&QMatrix::zeros(0, 0)), 0);
    assert_eq!(rank(&QMatrix::identity(5)), 5);
    assert_eq!(rank(&dense(&[&[1, 2], &[2, 4]])), 1);
}

#[test]
fn kernel_of_small_examples() {
    assert_eq!(kernel_basis(&QMatrix::identity(3)).cols(), 0);
    assert_eq!(kernel_basis(&QMatrix::zeros(1, 2)).cols(), 2);
    let k = kernel_basis(&dense(&[&[1, 1]]));
    assert_eq!(k.shape(), (2, 1));
    assert_eq!(k.get(0, 0), -k.get(1, 0));
    assert!(!k.get(0, 0).is_zero());
}

#[test]
fn solve_on_subspace_examples() {
    let e1 = dense(&[&[1]]);
    assert_eq!(solve_on_subspace(&QMatrix::identity(1), &e1, &e1).unwrap(), e1);
    assert_eq!(solve_on_subspace(&QMatrix::zeros(1, 1), &e1, &e1), Err(LinalgError::NoSolution));
    let x = solve_on_subspace(&dense(&[&[2]]), &e1, &e1).unwrap();
    assert_eq!(x.get(0, 0), Q::ratio(1, 2));
    assert!(matches!(solve_on_subspace(&QMatrix::identity(2), &e1, &e1), Err(LinalgError::ShapeMismatch(_))));
}

#[test]
fn homology_dimension_examples() {
    let z = QMatrix::zeros(1, 1);
    assert_eq!(homology_dimension(&z, &z).unwrap(), 1);
    assert_eq!(homology_dimension(&QMatrix::identity(1), &z).unwrap(), 0);
    assert_eq!(homology_dimension(&QMatrix::zeros(2, 2), &dense(&[&[1, 0], &[0, 0]])).unwrap(), 1);
    let bad = homology_dimension(&QMatrix::identity(2), &dense(&[&[1, 0], &[0, 0]]));
    assert_eq!(bad, Err(LinalgError::ComposabilityViolation { nnz: 1 }));
}

#[test]
fn axpy_with_zero_scalar_keeps_storage_canonical() {
    let a = vec![(0, q(1)), (3, q(2))];
    let b = vec![(1, q(5))];
    assert_eq!(axpy(&a, &Q::zero(), &b), a);
    assert_eq!(axpy(&a, &q(-1), &a), vec![]);
    let m = dense(&[&[1, 0], &[0, 2]]);
    let sum = m.axpy(&Q::zero(), &QMatrix::identity(2));
    assert_eq!(sum, m);
    assert_eq!(sum.nnz(), 2);
}

#[test]
fn block_helpers() {
    let m = dense(&[&[1, 2], &[3, 4]]);
    let big = m.place(4, 3, 1, 1);
    assert_eq!(big.block(1, 2, 1, 2), m);
    assert_eq!(big.nnz(), 4);
    assert_eq!(m.hstack(&m).shape(), (2, 4));
    assert_eq!(m.vstack(&m).block(2, 2, 0, 2), m);
    assert_eq!(m.select_rows(&[1]), dense(&[&[3, 4]]));
    assert_eq!(m.select_columns(&[1]), dense(&[&[2], &[4]]));
    assert_eq!(m.pow(0), QMatrix::identity(2));
    assert_eq!(m.pow(2), m.mul(&m));
    assert_eq!(m.scale(&q(0)), QMatrix::zeros(2, 2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rank_matches_dense_reduction(m in matrix(7, 7)) {
        prop_assert_eq!(rank(&m), dense_rank(&m));
        prop_assert_eq!(rank(&m.transpose()), rank(&m));
    }

    #[test]
    fn kernel_basis_is_a_basis_of_the_kernel(m in matrix(6, 7)) {
        let k = kernel_basis(&m);
        prop_assert_eq!(k.rows(), m.cols());
        prop_assert!(m.mul(&k).is_zero());
        prop_assert_eq!(k.cols(), m.cols() - dense_rank(&m));
        prop_assert_eq!(dense_rank(&k), k.cols());
    }

    #[test]
    fn column_basis_spans_the_image(m in matrix(6, 7)) {
        let c = column_basis(&m);
        prop_assert_eq!(c.cols(), dense_rank(&m));
        prop_assert_eq!(dense_rank(&c), c.cols());
        prop_assert!(spans(&c, &m));
        prop_assert!(same_span(&c, &m));
    }

    #[test]
    fn solve_recovers_a_preimage_on_the_subspace(
        (m, sub, coords) in (1usize..6, 1usize..6, 0usize..4).prop_flat_map(|(r, n, k)| (shaped(r, n), shaped(n, k), shaped(k, 2)))
    ) {
        let rhs = m.mul(&sub).mul(&coords);
        let x = solve_on_subspace(&m, &rhs, &sub).unwrap();
        prop_assert_eq!(m.mul(&x), rhs);
        prop_assert!(spans(&sub, &x));
    }

    #[test]
    fn solve_rejects_targets_outside_the_image(m in matrix(5, 5)) {
        let r = m.rows();
        prop_assume!(r > 0 && dense_rank(&m) < r);
        let left = kernel_basis(&m.transpose());
        let rhs = left.select_columns(&[0]);
        prop_assert_eq!(solve_on_subspace(&m, &rhs, &QMatrix::identity(m.cols())), Err(LinalgError::NoSolution));
    }

    #[test]
    fn homology_dimension_counts_cycles_modulo_boundaries(
        (out, mix) in (1usize..6, 1usize..6).prop_flat_map(|(r, n)| (shaped(r, n), shaped(n, 3)))
    ) {
        let k = kernel_basis(&out);
        let inc = k.mul(&mix.block(0, k.cols(), 0, 3));
        let h = homology_dimension(&out, &inc).unwrap();
        prop_assert_eq!(h, out.cols() - dense_rank(&out) - dense_rank(&inc));
    }

    #[test]
    fn products_match_dense_arithmetic(
        (a, b, c) in (0usize..5, 0usize..5, 0usize..5, 0usize..5).prop_flat_map(|(r, s, t, u)| (shaped(r, s), shaped(s, t), shaped(t, u)))
    ) {
        let ab = a.mul(&b);
        prop_assert_eq!(ab.to_dense(), dense_mul(&a, &b));
        prop_assert_eq!(ab.mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(ab.transpose(), b.transpose().mul(&a.transpose()));
        prop_assert!(ab.entries().all(|(_, _, x)| !x.is_zero()));
    }

    #[test]
    fn additive_structure(
        (a, b) in (0usize..5, 0usize..5).prop_flat_map(|(r, c)| (shaped(r, c), shaped(r, c))),
        c in -3i64..=3,
    ) {
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.axpy(&q(c), &b), a.add(&b.scale(&q(c))));
        prop_assert_eq!(a.neg(), a.scale(&-Q::one()));
        if a.rows() > 0 {
            prop_assert_eq!(QMatrix::from_dense(&a.to_dense()), a.clone());
        }
        prop_assert!(a.axpy(&q(c), &b).entries().all(|(_, _, x)| !x.is_zero()));
    }

    #[test]
    fn apply_agrees_with_mul(
        (a, v) in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| (shaped(r, c), shaped(c, 1)))
    ) {
        prop_assert_eq!(a.apply(v.column(0)), a.mul(&v).column(0).to_vec());
    }
}
