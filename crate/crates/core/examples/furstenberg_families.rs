//! Build planar and higher-dimensional Furstenberg families and print their certificates.

use std::time::Instant;

use furstenberg_fp::furstenberg_constructions::{construct_2d, construct_general, report, UPPER_CONSTANT};
use furstenberg_fp::indices::fmt_rational;
use furstenberg_fp::Rational;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn main() -> furstenberg_fp::Result<()> {
    let c = q(UPPER_CONSTANT, 1);
    println!("{:<44} {:>8} {:>6} {:>14}  valid upper lower", "family", "#E", "F", "#E/ceil(p^F)");
    let start = Instant::now();
    for p in [29, 61, 101] {
        for (s, t) in [(q(1, 2), q(1, 1)), (q(1, 2), q(3, 2)), (q(1, 1), q(2, 1)), (q(0, 1), q(3, 2))] {
            let fam = construct_2d(s, t, p)?;
            print_row(&report(&fam, c)?);
        }
    }
    for p in [7, 11, 13] {
        for (s, t, n, k) in [(q(1, 1), q(3, 1), 3, 1), (q(3, 2), q(1, 1), 4, 3), (q(2, 1), q(3, 1), 3, 2)] {
            let fam = construct_general(s, t, n, k, p)?;
            print_row(&report(&fam, c)?);
        }
    }
    println!("total {} ms", start.elapsed().as_millis());
    Ok(())
}

fn print_row(r: &furstenberg_fp::furstenberg_constructions::ConstructionReport) {
    let ratio = format!("{}/{}", r.ratio.numer(), r.ratio.denom());
    println!(
        "{:<44} {:>8} {:>6} {:>14}  {:<5} {:<5} {}",
        r.id,
        r.size,
        fmt_rational(r.target),
        ratio,
        r.valid,
        r.upper_ok,
        r.lower_ok
    );
}
