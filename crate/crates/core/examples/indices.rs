//! Tabulate F(s,t;n,k) and M(a,s;n,k) on a coarse grid.

use furstenberg_fp::indices::{classify_marstrand_type, fmt_rational, FurstenbergParams};
use furstenberg_fp::{furstenberg_index, marstrand_index, Rational};

fn main() -> furstenberg_fp::Result<()> {
    let half = |i: i64| Rational::new(i, 2);

    println!("F(s,t;2,1)");
    for si in 1..=2 {
        let row: Vec<String> = (0..=4)
            .map(|ti| furstenberg_index(half(si), half(ti), 2, 1).map(|v| v.to_string()))
            .collect::<furstenberg_fp::Result<_>>()?;
        println!("  s={:<4} {}", fmt_rational(half(si)), row.join(" "));
    }

    let prm = FurstenbergParams::new(half(3), Rational::from_integer(5), 4, 2)?;
    println!("F(3/2,5;4,2) = {} via {:?}", fmt_rational(prm.index()), prm.case);

    println!("M(a,s;4,2) with type");
    for ai in 1..=8 {
        let cells: Vec<String> = (1..=4)
            .map(|si| {
                let (a, s) = (half(ai), half(si));
                Ok(format!("{}[{}]", marstrand_index(a, s, 4, 2)?, classify_marstrand_type(a, s, 4, 2)?.number()))
            })
            .collect::<furstenberg_fp::Result<_>>()?;
        println!("  a={:<4} {}", fmt_rational(half(ai)), cells.join(" "));
    }
    Ok(())
}
