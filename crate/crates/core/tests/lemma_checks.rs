use furstenberg_fp::lemma_verifier::{
    check_index_properties, check_recursion_f2, check_recursion_m_with, reevaluate, GridSpec, Mutation,
};
use furstenberg_fp::Rational;

fn grid(step: Rational, dims: Vec<(usize, usize)>) -> GridSpec {
    GridSpec::new(step, dims).unwrap()
}

#[test]
fn counterexamples_reproduce_standalone() {
    let g = grid(Rational::new(1, 2), Vec::new());
    for mu in [Mutation::Flip, Mutation::Tighten(Rational::new(1, 10))] {
        let out = check_recursion_m_with(4, 2, &g, mu).unwrap();
        assert!(!out.is_clean());
        for c in &out.counterexamples {
            let (lhs, rhs) = reevaluate(c).unwrap();
            assert_eq!((lhs, rhs), (c.lhs, c.rhs), "{}", c.witness_string());
        }
    }
}

#[test]
fn reports_are_schedule_independent() {
    let g = grid(Rational::new(1, 4), vec![(3, 1), (4, 2)]);
    let a = check_index_properties(&g).unwrap();
    let b = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| check_index_properties(&g).unwrap());
    assert_eq!(a, b);
    let g = grid(Rational::new(1, 2), Vec::new());
    assert_eq!(check_recursion_f2(4, 2, &g).unwrap(), check_recursion_f2(4, 2, &g).unwrap());
}
