//! Build exceptional-set witnesses of each type and certify their counts.

use furstenberg_fp::exceptional_constructions::{
    certify_lower_bound, construct_marstrand_witness, construct_oberlin_rectangle, u_families_disjoint,
    ExceptionalWitness,
};
use furstenberg_fp::indices::fmt_rational;
use furstenberg_fp::Rational;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn show(w: &ExceptionalWitness) {
    println!(
        "{:<16} p={:<3} a={:<4} s={:<4} n={} k={} #A={:<5} claimed={:<4} #E={:<5} M={:<5} c=1/25:{} disjoint:{}",
        w.branch,
        w.p,
        fmt_rational(w.params.a),
        fmt_rational(w.params.s),
        w.params.n,
        w.params.k,
        w.set_a.len(),
        w.claimed_directions.len(),
        w.certified_count,
        w.target().to_string(),
        certify_lower_bound(w, q(1, 25)),
        u_families_disjoint(w)
    );
    for t in &w.theta_families {
        println!("    theta={} #V={} #W={} #U={}", t.theta, t.v_count, t.w_count, t.u.len());
    }
}

fn main() -> furstenberg_fp::Result<()> {
    for p in [41, 101] {
        for (a, s) in [(q(3, 2), q(1, 1)), (q(1, 1), q(3, 4))] {
            show(&construct_oberlin_rectangle(a, s, p)?);
        }
    }
    show(&construct_marstrand_witness(q(1, 2), q(1, 1), 3, 2, 7)?);
    show(&construct_marstrand_witness(q(5, 2), q(7, 4), 4, 2, 5)?);
    for p in [5, 7] {
        show(&construct_marstrand_witness(q(2, 1), q(1, 1), 4, 2, p)?);
    }
    show(&construct_marstrand_witness(q(1, 1), q(1, 4), 3, 1, 5)?);
    show(&construct_marstrand_witness(q(3, 1), q(1, 1), 3, 1, 7)?);
    Ok(())
}
