use furstenberg_fp::exceptional_constructions::{
    construct_marstrand_witness, construct_oberlin_rectangle, u_families_disjoint, ExceptionalWitness,
};
use furstenberg_fp::flag_geometry::enumerate_linear;
use furstenberg_fp::furstenberg_constructions::{
    construct_2d, construct_general, lower_bound_sanity, upper_bound_holds, verify_family, UPPER_CONSTANT,
};
use furstenberg_fp::projections::{fiber_sizes, ExceptionalQuery};
use furstenberg_fp::{Error, Rational};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn certify_family(s: Rational, t: Rational, n: usize, k: usize, p: u64) -> Result<(), TestCaseError> {
    let built = if (n, k) == (2, 1) { construct_2d(s, t, p) } else { construct_general(s, t, n, k, p) };
    match built {
        Err(Error::DegenerateScale(_)) => Ok(()),
        Err(e) => Err(TestCaseError::fail(format!("{e}"))),
        Ok(fam) => {
            let v = verify_family(&fam);
            prop_assert!(v.is_valid, "{}: {:?}", fam.id(), v.failures);
            prop_assert!(upper_bound_holds(&fam, q(UPPER_CONSTANT, 1)), "{} has #E = {}", fam.id(), fam.size());
            prop_assert!(lower_bound_sanity(&fam).unwrap());
            Ok(())
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn planar_families_are_certified(si in 0i64..=4, ti in 0i64..=8, p in prop::sample::select(vec![29u64, 61])) {
        certify_family(q(si, 4), q(ti, 4), 2, 1, p)?;
    }

    #[test]
    fn general_families_are_certified(
        (n, k) in (3usize..=4).prop_flat_map(|n| (Just(n), 1..n)),
        si in 0i64..=6,
        ti in 0i64..=12,
        p in prop::sample::select(vec![5u64, 7]),
    ) {
        let s = q(si, 2).min(q(k as i64, 1));
        let t = q(ti, 2).min(q(((k + 1) * (n - k)) as i64, 1));
        certify_family(s, t, n, k, p)?;
    }
}

#[test]
fn family_text_is_reproducible() {
    let a = construct_general(q(1, 1), q(3, 1), 3, 1, 7).unwrap().to_text();
    let b = construct_general(q(1, 1), q(3, 1), 3, 1, 7).unwrap().to_text();
    assert_eq!(a, b);
}

fn witnesses() -> Vec<ExceptionalWitness> {
    let mut out = vec![
        construct_oberlin_rectangle(q(3, 2), q(1, 1), 41).unwrap(),
        construct_oberlin_rectangle(q(1, 1), q(1, 1), 41).unwrap(),
        construct_marstrand_witness(q(1, 2), q(1, 1), 3, 2, 7).unwrap(),
        construct_marstrand_witness(q(5, 2), q(7, 4), 4, 2, 5).unwrap(),
        construct_marstrand_witness(q(1, 1), q(1, 4), 3, 1, 5).unwrap(),
        construct_marstrand_witness(q(3, 1), q(1, 1), 3, 1, 7).unwrap(),
    ];
    for p in [5, 7] {
        for a in [1, 2] {
            out.push(construct_marstrand_witness(q(a, 1), q(1, 1), 4, 2, p).unwrap());
        }
    }
    out
}

#[test]
fn claims_are_individually_exceptional() {
    for w in witnesses() {
        let query = ExceptionalQuery::new(w.params.s, w.params.k).unwrap();
        for v in &w.claimed_directions {
            assert!(query.is_exceptional(&w.set_a, v).unwrap(), "{} claims {v}", w.branch);
        }
        assert!(w.certified_count >= w.claimed_directions.len().into());
    }
}

#[test]
fn type2_witness_slices_exactly() {
    let w = construct_marstrand_witness(q(5, 2), q(7, 4), 4, 2, 5).unwrap();
    for v in enumerate_linear(w.set_a.field(), 4, 2).unwrap() {
        let total: usize = fiber_sizes(&w.set_a, &v).unwrap().values().sum();
        assert_eq!(total, w.set_a.len());
    }
}

#[test]
fn type3_theta_families_are_disjoint() {
    for w in witnesses().iter().filter(|w| !w.theta_families.is_empty()) {
        assert!(u_families_disjoint(w), "{} at p={}", w.branch, w.p);
        for (i, x) in w.theta_families.iter().enumerate() {
            for y in &w.theta_families[i + 1..] {
                assert!(x.u.iter().all(|v| !y.u.contains(v)));
            }
        }
    }
}

#[test]
fn exceptional_count_grows_with_s() {
    for w in witnesses() {
        let s = w.params.s;
        let lower = w.count_at(s * q(3, 4)).unwrap();
        let here = w.count_at(s).unwrap();
        let upper = w.count_at(s + q(1, 2)).unwrap();
        assert_eq!(here, w.certified_count.to_string().parse::<usize>().unwrap());
        assert!(lower <= here && here <= upper, "{}: {lower} {here} {upper}", w.branch);
    }
}

#[test]
fn witness_text_is_reproducible() {
    let a = construct_marstrand_witness(q(2, 1), q(1, 1), 4, 2, 5).unwrap().to_text();
    let b = construct_marstrand_witness(q(2, 1), q(1, 1), 4, 2, 5).unwrap().to_text();
    assert_eq!(a, b);
    assert!(a.starts_with("p=5 n=4 k=2 a=2/1 s=1/1 type=3 branch=type3-product\n"), "{a}");
}
