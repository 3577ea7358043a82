//! Run every recursion and index-property grid and print the violation counts.

use std::time::Instant;

use furstenberg_fp::lemma_verifier::{
    check_closed_form_2d, check_index_properties, check_recursion_f1, check_recursion_f2, check_recursion_m,
    CheckOutcome, GridSpec,
};
use furstenberg_fp::Rational;

fn show(label: &str, start: Instant, out: &CheckOutcome) {
    println!(
        "{label:<28} checked {:>9}  violations {:>3}  ({} ms)",
        out.checked,
        out.counterexamples.len(),
        start.elapsed().as_millis()
    );
    if let Some(first) = out.counterexamples.first() {
        println!("    first: {} {}  lhs={} rhs={}", first.lemma, first.witness_string(), first.lhs, first.rhs);
    }
}

fn main() -> furstenberg_fp::Result<()> {
    let quarter = GridSpec::new(Rational::new(1, 4), vec![])?;

    for k in [2, 3] {
        let t = Instant::now();
        show(&format!("recursion_f1 k={k}"), t, &check_recursion_f1(k, &quarter)?);
    }
    for (n, k) in [(4, 2), (5, 3)] {
        let t = Instant::now();
        show(&format!("recursion_f2 ({n},{k})"), t, &check_recursion_f2(n, k, &quarter)?);
        let t = Instant::now();
        show(&format!("recursion_m ({n},{k})"), t, &check_recursion_m(n, k, &quarter)?);
    }

    let sixth = GridSpec::new(Rational::new(1, 6), vec![(2, 1), (3, 1), (3, 2), (4, 2), (4, 3)])?;
    let t = Instant::now();
    show("index properties", t, &check_index_properties(&sixth)?);

    let t = Instant::now();
    show("closed form (2,1)", t, &check_closed_form_2d(Rational::new(1, 12))?);
    Ok(())
}
