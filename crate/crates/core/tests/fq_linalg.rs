mod common;

use mtg::gf::{towers, FieldSpec, Felt};
use mtg::linalg::{FMatrix, LinalgError};
use proptest::prelude::*;

fn spec_for(i: usize) -> FieldSpec {
    [towers::f2_4_16(), towers::f3_9(), towers::f2_8()][i].clone()
}

fn matrix(spec: &FieldSpec, level: usize, rows: usize, cols: usize, raw: &[u64]) -> FMatrix {
    let q = spec.order(level);
    let data = (0..rows).map(|r| (0..cols).map(|c| spec.elem(level, raw[(r * cols + c) % raw.len()] % q).unwrap()).collect()).collect();
    FMatrix::from_rows(data, cols, level)
}

fn arb() -> impl Strategy<Value = (usize, usize, usize, Vec<u64>)> {
    (0usize..3, 1usize..6, 1usize..8, proptest::collection::vec(0u64..16, 1..48))
}

/// Low-rank matrices are much more interesting than uniform ones.
fn sparse(raw: &[u64]) -> Vec<u64> {
    raw.iter().map(|&r| if r < 7 { 0 } else { r }).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn rank_nullity_and_kernel((i, r, c, raw) in arb()) {
        let spec = spec_for(i);
        let top = spec.top();
        let a = matrix(&spec, top, r, c, &sparse(&raw));
        let rank = a.rank(&spec);
        let n = a.null_space_basis(&spec);
        prop_assert_eq!(rank + n.rows(), c);
        prop_assert_eq!(n.rank(&spec), n.rows());
        for v in n.row_vecs() {
            prop_assert!(a.mul_vec(&v, &spec).unwrap().iter().all(|x| x.is_zero()));
        }
        let (rr, pivots) = a.rref(&spec);
        prop_assert_eq!(pivots.len(), rank);
        prop_assert!(rr.row_space_eq(&a, &spec));
        prop_assert_eq!(rr.rref(&spec).0, rr.clone());
        prop_assert_eq!(a.row_basis(&spec).rows(), rank);
        prop_assert_eq!(a.transpose().rank(&spec), rank);
    }

    #[test]
    fn solve_particular_is_consistent((i, r, c, raw) in arb(), x in proptest::collection::vec(0u64..16, 8)) {
        let spec = spec_for(i);
        let top = spec.top();
        let a = matrix(&spec, top, r, c, &sparse(&raw));
        let x: Vec<Felt> = (0..c).map(|j| spec.elem(top, x[j] % spec.order(top)).unwrap()).collect();
        let b = a.mul_vec(&x, &spec).unwrap();
        let y = a.solve_particular(&b, &spec).expect("b is in the column space");
        prop_assert_eq!(a.mul_vec(&y, &spec).unwrap(), b);
    }

    #[test]
    fn inverse_and_products((i, n, raw) in (0usize..3, 1usize..6, proptest::collection::vec(0u64..16, 1..36))) {
        let spec = spec_for(i);
        let top = spec.top();
        let a = matrix(&spec, top, n, n, &raw);
        match a.inverse(&spec) {
            Ok(inv) => {
                prop_assert_eq!(a.mul(&inv, &spec).unwrap(), FMatrix::identity(n, top));
                prop_assert_eq!(inv.mul(&a, &spec).unwrap(), FMatrix::identity(n, top));
            }
            Err(e) => {
                prop_assert_eq!(e, LinalgError::Singular);
                prop_assert!(a.rank(&spec) < n);
            }
        }
    }

    #[test]
    fn expansion_keeps_the_subfield_kernel((r, c, raw) in (1usize..4, 1usize..7, proptest::collection::vec(0u64..16, 1..28)), v in proptest::collection::vec(0u64..4, 7)) {
        let spec = towers::f2_4_16();
        let a = matrix(&spec, 2, r, c, &raw);
        for base in 0..=1 {
            let e = a.subfield_expand(&spec, base).unwrap();
            prop_assert_eq!(e.rows(), r * spec.degree_over(2, base));
            let x: Vec<Felt> = (0..c).map(|j| spec.elem(base, v[j] % spec.order(base)).unwrap()).collect();
            let up: Vec<Felt> = x.iter().map(|&y| spec.embed(y, 2).unwrap()).collect();
            let in_big = a.mul_vec(&up, &spec).unwrap().iter().all(|y| y.is_zero());
            let in_small = e.mul_vec(&x, &spec).unwrap().iter().all(|y| y.is_zero());
            prop_assert_eq!(in_big, in_small);
        }
    }

    #[test]
    fn text_and_permutations((i, r, c, raw) in arb(), seed in any::<u64>()) {
        let spec = spec_for(i);
        let top = spec.top();
        let a = matrix(&spec, top, r, c, &raw);
        prop_assert_eq!(FMatrix::from_text(&a.to_text(&spec), &spec, top).unwrap(), a.clone());
        let mut perm: Vec<usize> = (0..c).collect();
        rand::seq::SliceRandom::shuffle(&mut perm[..], &mut common::rng(seed));
        let p = a.permute_columns(&perm);
        for j in 0..c {
            prop_assert_eq!(p.column(j), a.column(perm[j]));
        }
        let mut inv = vec![0; c];
        for (j, &pj) in perm.iter().enumerate() {
            inv[pj] = j;
        }
        prop_assert_eq!(p.permute_columns(&inv), a);
    }
}

#[test]
fn kernel_size_matches_enumeration() {
    // Every binary 3 x 6 matrix from a fixed seed: |ker| = 2^(n - rank).
    let spec = towers::f2_4_16();
    let mut r = common::rng(5);
    for _ in 0..50 {
        let raw: Vec<u64> = (0..18).map(|_| rand::Rng::gen_range(&mut r, 0..2)).collect();
        let a = matrix(&spec, 0, 3, 6, &raw);
        let count = (0u64..64)
            .filter(|v| {
                let x: Vec<Felt> = (0..6).map(|j| spec.elem(0, (v >> j) & 1).unwrap()).collect();
                a.mul_vec(&x, &spec).unwrap().iter().all(|y| y.is_zero())
            })
            .count();
        assert_eq!(count, 1 << (6 - a.rank(&spec)));
    }
}

#[test]
fn column_restriction_errors() {
    let spec = towers::f2_8();
    let a = FMatrix::identity(3, 1);
    assert_eq!(a.restrict_columns(&[]), Err(LinalgError::EmptyIndexSet));
    assert_eq!(a.restrict_columns(&[0, 3]), Err(LinalgError::IndexOutOfRange { index: 3, cols: 3 }));
    assert_eq!(a.restrict_columns(&[1, 1]), Err(LinalgError::Duplicate(1)));
    assert_eq!(a.restrict_columns(&[0, 2]).unwrap().column(1), a.column(2));
    assert!(matches!(a.mul(&FMatrix::zeros(2, 2, 1), &spec), Err(LinalgError::DimensionMismatch(_))));
    assert!(a.mul_vec(&[Felt::zero(1)], &spec).is_err());
    assert!(FMatrix::from_text("2 2\n1 0\n", &spec, 1).is_err());
}

#[test]
fn inconsistent_system_has_no_solution() {
    let spec = towers::f2_8();
    let one = Felt::one(1);
    let zero = Felt::zero(1);
    let a = FMatrix::from_rows(vec![vec![one, one], vec![one, one]], 2, 1);
    assert!(a.solve_particular(&[one, zero], &spec).is_none());
    assert!(a.solve_particular(&[one, one], &spec).is_some());
}
