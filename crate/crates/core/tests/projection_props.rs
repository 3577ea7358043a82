use std::cmp::Ordering;

use furstenberg_fp::flag_geometry::enumerate_linear;
use furstenberg_fp::indices::compare_count_to_power;
use furstenberg_fp::projections::{fiber_sizes, project_set, projection_count, ExceptionalQuery, PointSet};
use furstenberg_fp::{LinearSubspace, PrimeField, Rational};
use num_bigint::BigUint;
use proptest::prelude::*;

fn point_set(p: u64, n: usize) -> impl Strategy<Value = PointSet> {
    prop::collection::vec(prop::collection::vec(0u32..p as u32, n), 0..40)
        .prop_map(move |pts| PointSet::new(PrimeField::new(p).unwrap(), n, pts).unwrap())
}

fn case() -> impl Strategy<Value = (PointSet, PointSet, usize)> {
    (prop::sample::select(vec![2u64, 3, 5]), 1usize..=3)
        .prop_flat_map(|(p, n)| (point_set(p, n), point_set(p, n), 0..=n))
}

/// Number of classes of `x ~ y iff x - y in V`, by pairwise comparison.
fn naive_count(a: &PointSet, v: &LinearSubspace) -> usize {
    let f = a.field();
    let mut reps: Vec<Vec<u32>> = Vec::new();
    for x in a.iter() {
        let fresh = reps.iter().all(|r| {
            let d: Vec<u32> = x.iter().zip(r).map(|(&a, &b)| f.sub(a, b)).collect();
            !v.contains_vector(&d)
        });
        if fresh {
            reps.push(x.to_vec());
        }
    }
    reps.len()
}

proptest! {
    #[test]
    fn projection_matches_naive_classes((a, b, k) in case()) {
        let _ = b;
        for v in enumerate_linear(a.field(), a.ambient_dim(), k).unwrap() {
            prop_assert_eq!(projection_count(&a, &v).unwrap(), naive_count(&a, &v));
            prop_assert_eq!(project_set(&a, &v).unwrap().len(), projection_count(&a, &v).unwrap());
        }
    }

    #[test]
    fn slicing_identity((a, _b, k) in case()) {
        for v in enumerate_linear(a.field(), a.ambient_dim(), k).unwrap() {
            let fibers = fiber_sizes(&a, &v).unwrap();
            prop_assert_eq!(fibers.values().sum::<usize>(), a.len());
            prop_assert_eq!(fibers.len(), projection_count(&a, &v).unwrap());
        }
    }

    #[test]
    fn projection_is_monotone((a, b, k) in case()) {
        let big = a.union(&b);
        prop_assert!(a.is_subset(&big));
        for v in enumerate_linear(a.field(), a.ambient_dim(), k).unwrap() {
            prop_assert!(projection_count(&a, &v).unwrap() <= projection_count(&big, &v).unwrap());
        }
    }

    #[test]
    fn threshold_is_exact(p in prop::sample::select(vec![2u64, 3, 5, 7, 101]), num in 1i64..60, den in 1i64..12, count in 0usize..2000) {
        let s = Rational::new(num, den);
        let q = ExceptionalQuery::new(s, 1).unwrap();
        // count < p^(r/d)  iff  count^d < p^r
        let (r, d) = (*s.numer() as u32, *s.denom() as u32);
        let lhs = BigUint::from(count).pow(d);
        let rhs = BigUint::from(p).pow(r);
        prop_assert_eq!(q.is_exceptional_count(count, p), lhs < rhs);
        prop_assert_eq!(
            q.is_exceptional_count(count, p),
            compare_count_to_power(&BigUint::from(count), p, s) == Ordering::Less
        );
    }
}
