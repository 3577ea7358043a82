//! Coset projections of a small set and its exceptional directions.

use furstenberg_fp::flag_geometry::{enumerate_linear, LinearSubspace};
use furstenberg_fp::projections::{
    count_small_projection_subspaces, exceptional_set, fiber_sizes, projection_count, ExceptionalQuery, PointSet,
};
use furstenberg_fp::{PrimeField, Rational};

fn main() -> furstenberg_fp::Result<()> {
    let field = PrimeField::new(7)?;
    // a 3 x 3 grid in the plane
    let grid = PointSet::new(field, 2, (0..3).flat_map(|x| (0..3).map(move |y| [x, y])))?;
    for v in enumerate_linear(field, 2, 1)? {
        let fibers = fiber_sizes(&grid, &v)?;
        let sizes: Vec<usize> = fibers.values().copied().collect();
        println!("{v:<6} #proj={} fibers={sizes:?}", projection_count(&grid, &v)?);
    }

    let q = ExceptionalQuery::new(Rational::new(1, 1), 1)?;
    let e = exceptional_set(&grid, &q)?;
    println!("E_1 has {} of 8 directions", e.len());

    let w = LinearSubspace::coordinate(field, 4, 0..2);
    for l in 0..=2 {
        let c = count_small_projection_subspaces(&w, 2, l)?;
        println!("#{{V in G(2,F_7^4) : #proj(F^2) <= 7^{l}}} = {c}");
    }
    Ok(())
}
