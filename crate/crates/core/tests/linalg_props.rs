use std::collections::HashMap;

use furstenberg_fp::fp_linalg::{kernel_basis, rref, solve_left};
use furstenberg_fp::{PrimeField, PrimeMatrix};
use proptest::prelude::*;

const PRIMES: [u64; 5] = [2, 3, 5, 7, 101];

fn matrix() -> impl Strategy<Value = PrimeMatrix> {
    (prop::sample::select(PRIMES.to_vec()), 1usize..5, 1usize..6).prop_flat_map(|(p, r, c)| {
        prop::collection::vec(0u32..p as u32, r * c).prop_map(move |e| {
            PrimeMatrix::new(PrimeField::new(p).unwrap(), r, c, e).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn rref_is_idempotent(m in matrix()) {
        let (r, piv) = rref(&m);
        let (rr, piv2) = rref(&r);
        prop_assert_eq!(&r, &rr);
        prop_assert_eq!(piv, piv2);
    }

    #[test]
    fn kernel_rows_are_annihilated(m in matrix()) {
        let ker = kernel_basis(&m);
        for v in ker.row_iter() {
            prop_assert!(m.apply(v).iter().all(|&x| x == 0));
        }
        prop_assert_eq!(m.rank() + ker.rows(), m.cols());
    }

    #[test]
    fn rank_is_transpose_invariant(m in matrix()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn solve_left_recovers_combinations(m in matrix(), seed in prop::collection::vec(0u32..1000, 4)) {
        let f = m.field();
        let coeffs: Vec<u32> = (0..m.rows()).map(|i| f.reduce(seed[i % seed.len()] as u64)).collect();
        let mut target = vec![0u32; m.cols()];
        for (i, &c) in coeffs.iter().enumerate() {
            for (j, t) in target.iter_mut().enumerate() {
                *t = f.add(*t, f.mul(c, m.get(i, j)));
            }
        }
        let x = solve_left(&m, &target).expect("target is in the row space");
        let mut back = vec![0u32; m.cols()];
        for (i, &c) in x.iter().enumerate() {
            for (j, t) in back.iter_mut().enumerate() {
                *t = f.add(*t, f.mul(c, m.get(i, j)));
            }
        }
        prop_assert_eq!(back, target);
    }

    #[test]
    fn field_axioms(p in prop::sample::select(PRIMES.to_vec()), a in 0u64..10_000, b in 0u64..10_000, c in 0u64..10_000) {
        let f = PrimeField::new(p).unwrap();
        let (a, b, c) = (f.reduce(a), f.reduce(b), f.reduce(c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a)), 1);
            prop_assert_eq!(f.pow(a, p - 1), 1);
        }
        prop_assert_eq!(f.from_signed(f.centered(a)), a);
    }
}

#[test]
fn row_space_equality_matches_rref_over_f2() {
    let f = PrimeField::new(2).unwrap();
    let all: Vec<PrimeMatrix> = (0u32..64)
        .map(|bits| PrimeMatrix::new(f, 2, 3, (0..6).map(|i| (bits >> i) & 1).collect()).unwrap())
        .collect();
    let span = |m: &PrimeMatrix| -> Vec<Vec<u32>> {
        let mut pts: Vec<Vec<u32>> = (0u32..4)
            .map(|c| (0..3).map(|j| ((c & 1) * m.get(0, j) + ((c >> 1) & 1) * m.get(1, j)) % 2).collect())
            .collect();
        pts.sort();
        pts.dedup();
        pts
    };
    let mut by_span: HashMap<Vec<Vec<u32>>, PrimeMatrix> = HashMap::new();
    for a in &all {
        let r = rref(a).0;
        match by_span.get(&span(a)) {
            Some(prev) => assert_eq!(prev, &r),
            None => {
                by_span.insert(span(a), r);
            }
        }
    }
    for a in &all {
        for b in &all {
            assert_eq!(span(a) == span(b), rref(a).0 == rref(b).0);
        }
    }
}

#[test]
fn composite_modulus_is_rejected() {
    assert_eq!(PrimeField::new(9).unwrap_err().to_string(), "9 is not prime");
    assert!(PrimeField::new(1).is_err());
}
