//! Enumerate G(k, F_p^n) and A(k, F_p^n) and compare with the closed counts.

use furstenberg_fp::flag_geometry::{affine_count, enumerate_affine, enumerate_linear, gaussian_binomial, relate};
use furstenberg_fp::PrimeField;

fn main() -> furstenberg_fp::Result<()> {
    println!("{:>2} {:>2} {:>2} {:>10} {:>10}", "p", "n", "k", "#G", "#A");
    for p in [2u64, 3, 5] {
        let field = PrimeField::new(p)?;
        for n in 0..=4 {
            for k in 0..=n {
                let g = enumerate_linear(field, n, k)?.count();
                let a = enumerate_affine(field, n, k)?.count();
                assert_eq!(gaussian_binomial(n, k, p)?, g.into());
                assert_eq!(affine_count(n, k, p)?, a.into());
                println!("{p:>2} {n:>2} {k:>2} {g:>10} {a:>10}");
            }
        }
    }

    // the first few planes of F_3^3 in canonical order
    let field = PrimeField::new(3)?;
    for v in enumerate_linear(field, 3, 2)?.take(4) {
        println!("{v}");
    }

    let lines: Vec<_> = enumerate_affine(field, 2, 1)?.collect();
    let r = relate(&lines[0], &lines[5])?;
    println!("{} meets {}: {:?}", lines[0], lines[5], r.intersection.map(|f| f.to_string()));
    Ok(())
}
