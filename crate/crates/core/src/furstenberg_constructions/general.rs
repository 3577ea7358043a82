//! Families in F_p^n for every admissible (s,t;n,k).
//!
//! Coordinates for the lifted cases are laid out as
//! `[ seed plane | F^d | F^m | zeros ... | Z ]` where the first block has
//! length `N = n - k + d + 1` and `Z` holds the remaining `k - d - 1` directions.

use super::{planar::construct_2d, to_count, FurstenbergFamily, Member};
use crate::error::{Error, Result};
use crate::flag_geometry::{embed_point, enumerate_linear, odometer, relate, AffineFlat, LinearSubspace, Point};
use crate::fp_linalg::PrimeField;
use crate::indices::{ceil_rational_power, FurstenbergCase, FurstenbergParams, Rational};
use crate::projections::PointSet;

/// An (s,t;n,k)-set with `#E <= 16 p^F(s,t;n,k)`; the branch follows the case of `F`.
pub fn construct_general(s: Rational, t: Rational, n: usize, k: usize, p: u64) -> Result<FurstenbergFamily> {
    let field = PrimeField::new(p)?;
    let params = FurstenbergParams::new(s, t, n, k)?;
    match params.case {
        FurstenbergCase::ZeroS => case_a(params, field),
        FurstenbergCase::SmallT { d, .. } => case_b(params, field, d as usize),
        FurstenbergCase::Generic { d, sigma, m, tau } => case_c(params, field, d as usize, sigma, m as usize, tau),
        FurstenbergCase::Saturated { d, sigma, m, .. } => case_d(params, field, d as usize, sigma, m as usize),
    }
}

fn case_a(params: FurstenbergParams, field: PrimeField) -> Result<FurstenbergFamily> {
    let (n, k) = (params.n, params.k);
    let p = field.modulus() as u64;
    let kn = Rational::from_integer((k * (n - k)) as i64);
    let mut members = Vec::new();
    let one = Rational::from_integer(1);
    if params.t <= kn {
        let c = to_count(ceil_rational_power(p, params.t), "ceil(p^t)")?;
        let origin = PointSet::new(field, n, [vec![0; n]])?;
        for dir in enumerate_linear(field, n, k)?.take(c) {
            members.push(Member {
                flat: AffineFlat::new(dir, &vec![0; n])?,
                y_set: origin.clone(),
            });
        }
        return Ok(FurstenbergFamily::assemble(params, field, one, "a-origin", members));
    }
    // X points in F^(n-k) x 0, each carrying every k-plane through it that meets F^(n-k) only there.
    let x_count = to_count(ceil_rational_power(p, params.t - kn), "ceil(p^(t-k(n-k)))")?;
    let xs = PointSet::lex_prefix(field, n - k, x_count).pad(k);
    let dirs = graph_directions(field, n, k);
    for x in xs.iter() {
        let y = PointSet::new(field, n, [x])?;
        for dir in &dirs {
            members.push(Member {
                flat: AffineFlat::new(dir.clone(), x)?,
                y_set: y.clone(),
            });
        }
    }
    Ok(FurstenbergFamily::assemble(params, field, one, "a-points", members))
}

/// Every k-dimensional subspace spanned by rows `(A_j, e_j)`, `A_j` in F^(n-k).
fn graph_directions(field: PrimeField, n: usize, k: usize) -> Vec<LinearSubspace> {
    let p = field.modulus();
    let w = n - k;
    let mut entries = vec![0u32; k * w];
    let mut out = Vec::new();
    loop {
        let rows: Vec<Point> = (0..k)
            .map(|j| {
                let mut r = vec![0; n];
                r[..w].copy_from_slice(&entries[j * w..(j + 1) * w]);
                r[w + j] = 1;
                r
            })
            .collect();
        out.push(LinearSubspace::span(field, n, &rows).expect("n-vectors"));
        if !odometer(&mut entries, p) {
            break;
        }
    }
    out
}

fn case_b(params: FurstenbergParams, field: PrimeField, d: usize) -> Result<FurstenbergFamily> {
    let (n, k) = (params.n, params.k);
    let p = field.modulus() as u64;
    let c = to_count(ceil_rational_power(p, params.t), "ceil(p^t)")?;
    let y_count = to_count(ceil_rational_power(p, params.s), "ceil(p^s)")?;
    let core = LinearSubspace::coordinate(field, n, 0..d + 1);
    let y_set = PointSet::lex_prefix(field, d + 1, y_count).pad(n - d - 1);
    let mut members = Vec::new();
    for extra in enumerate_linear(field, n - d - 1, k - d - 1)?.take(c) {
        let dir = core.sum(&extra.embed(n, d + 1));
        members.push(Member {
            flat: AffineFlat::new(dir, &vec![0; n])?,
            y_set: y_set.clone(),
        });
    }
    if members.len() < c {
        return Err(Error::DegenerateScale(format!("only {} planes contain F^{} for ceil count {c}", members.len(), d + 1)));
    }
    Ok(FurstenbergFamily::assemble(params, field, Rational::from_integer(1), "b", members))
}

/// A flat in F^u with its chosen points.
struct Piece {
    flat: AffineFlat,
    y_set: PointSet,
}

/// For each piece `U` in F^u, all graphs of affine maps `U -> F^m`, each with the graph over `Y(U)`.
fn graphs_over(field: PrimeField, pieces: &[Piece], m: usize) -> Result<Vec<Piece>> {
    let p = field.modulus();
    let mut out = Vec::new();
    for piece in pieces {
        let u = piece.flat.ambient_dim();
        let dim = piece.flat.dim();
        let dir = piece.flat.direction();
        let pivots = dir.pivots().to_vec();
        let base = piece.flat.base();
        // params = [c | M_0 | ... | M_{dim-1}], each block in F^m
        let mut params = vec![0u32; m * (dim + 1)];
        loop {
            let c = &params[..m];
            let rows: Vec<Point> = (0..dim)
                .map(|i| {
                    let mut r = dir.basis().row(i).to_vec();
                    r.extend_from_slice(&params[m * (i + 1)..m * (i + 2)]);
                    r
                })
                .collect();
            let mut w_base = base.to_vec();
            w_base.extend_from_slice(c);
            let w_dir = LinearSubspace::span(field, u + m, &rows)?;
            let pts: Vec<Point> = piece
                .y_set
                .iter()
                .map(|y| {
                    let mut img = c.to_vec();
                    for (i, &pc) in pivots.iter().enumerate() {
                        let coef = y[pc];
                        for (j, v) in img.iter_mut().enumerate() {
                            *v = field.add(*v, field.mul(coef, params[m * (i + 1) + j]));
                        }
                    }
                    let mut z = y.to_vec();
                    z.extend(img);
                    z
                })
                .collect();
            out.push(Piece {
                flat: AffineFlat::new(w_dir, &w_base)?,
                y_set: PointSet::new(field, u + m, pts)?,
            });
            if !odometer(&mut params, p) {
                break;
            }
        }
    }
    Ok(out)
}

/// Every k-plane `V` in F^n with `V ∩ F^big = W`, for each `W` of dimension `d+1` inside F^big.
fn lift(field: PrimeField, ws: Vec<Piece>, n: usize, k: usize, big: usize) -> Result<Vec<Member>> {
    let p = field.modulus();
    let extra = k - ws.first().map_or(k, |w| w.flat.dim());
    let slab = AffineFlat::new(LinearSubspace::coordinate(field, n, 0..big), &vec![0; n])?;
    let mut members = Vec::new();
    for w in ws {
        let w_dir = w.flat.direction().embed(n, 0);
        let w_base = embed_point(w.flat.base(), n, 0);
        let w_n = AffineFlat::new(w_dir.clone(), &w_base)?;
        let y_set = w.y_set.pad(n - w.y_set.ambient_dim());
        let free: Vec<usize> = (0..big).filter(|c| !w_dir.pivots().contains(c)).collect();
        let mut g = vec![0u32; extra * free.len()];
        loop {
            let mut rows: Vec<Point> = w_dir.basis().row_iter().map(<[u32]>::to_vec).collect();
            for j in 0..extra {
                let mut r = vec![0; n];
                for (i, &c) in free.iter().enumerate() {
                    r[c] = g[j * free.len() + i];
                }
                r[big + j] = 1;
                rows.push(r);
            }
            let v = AffineFlat::new(LinearSubspace::span(field, n, &rows)?, &w_base)?;
            let rel = relate(&v, &slab)?;
            if !rel.transverse || rel.intersection.as_ref() != Some(&w_n) {
                return Err(Error::DegenerateScale(format!("lift of {w_n} is not transverse to F^{big}")));
            }
            members.push(Member { flat: v, y_set: y_set.clone() });
            if !odometer(&mut g, p) {
                break;
            }
        }
    }
    Ok(members)
}

fn case_c(
    params: FurstenbergParams,
    field: PrimeField,
    d: usize,
    sigma: Rational,
    m: usize,
    tau: Rational,
) -> Result<FurstenbergFamily> {
    let (n, k) = (params.n, params.k);
    let p = field.modulus() as u64;
    let seed = construct_2d(sigma, tau, p)?;
    // U = L x F^d, Y(U) = Y(L) x F^d
    let fd = PointSet::full(field, d);
    let pieces: Vec<Piece> = seed
        .members
        .iter()
        .map(|mem| {
            let dir = mem.flat.direction().embed(d + 2, 0).sum(&LinearSubspace::coordinate(field, d + 2, 2..d + 2));
            let base = embed_point(mem.flat.base(), d + 2, 0);
            Ok(Piece {
                flat: AffineFlat::new(dir, &base)?,
                y_set: mem.y_set.product(&fd),
            })
        })
        .collect::<Result<_>>()?;
    let ws = graphs_over(field, &pieces, m)?;
    let members = lift(field, ws, n, k, n - k + d + 1)?;
    let label = format!("c/{}", seed.branch);
    Ok(FurstenbergFamily::assemble(params, field, seed.lambda, label, members))
}

/// The τ = 0 seed is a single line; it is taken to be the first axis so the
/// graphs over `F^(d+1)` with `m + 1` extra coordinates still fit inside F^N.
fn case_d(params: FurstenbergParams, field: PrimeField, d: usize, sigma: Rational, m: usize) -> Result<FurstenbergFamily> {
    let (n, k) = (params.n, params.k);
    let p = field.modulus() as u64;
    let rows = to_count(ceil_rational_power(p, sigma), "ceil(p^sigma)")?;
    let column = PointSet::new(field, 1, (1..=rows as u64).map(|r| [field.reduce(r)]))?;
    let piece = Piece {
        flat: AffineFlat::new(LinearSubspace::whole(field, d + 1), &vec![0; d + 1])?,
        y_set: column.product(&PointSet::full(field, d)),
    };
    let ws = graphs_over(field, &[piece], m + 1)?;
    let members = lift(field, ws, n, k, n - k + d + 1)?;
    Ok(FurstenbergFamily::assemble(params, field, Rational::from_integer(1), "d", members))
}

#[cfg(test)]
mod tests {
    use super::super::{lower_bound_sanity, upper_bound_holds, verify_family, UPPER_CONSTANT};
    use super::*;
    use num_bigint::BigUint;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn check(f: &FurstenbergFamily) {
        let v = verify_family(f);
        assert!(v.is_valid, "{}: {:?}", f.id(), v.failures);
        assert!(upper_bound_holds(f, q(UPPER_CONSTANT, 1)), "{}", f.id());
        assert!(lower_bound_sanity(f).unwrap(), "{}", f.id());
    }

    #[test]
    fn case_a_origin() {
        let f = construct_general(q(0, 1), q(1, 1), 3, 1, 5).unwrap();
        assert_eq!(f.branch, "a-origin");
        assert_eq!(f.size(), BigUint::from(1u32));
        check(&f);
    }

    #[test]
    fn case_a_points() {
        let f = construct_general(q(0, 1), q(3, 1), 3, 1, 3).unwrap();
        assert_eq!(f.branch, "a-points");
        assert_eq!(f.size(), BigUint::from(3u32));
        assert_eq!(f.members.len(), 27);
        check(&f);
    }

    #[test]
    fn case_b_example() {
        let f = construct_general(q(3, 2), q(1, 1), 4, 3, 7).unwrap();
        assert_eq!(f.branch, "b");
        assert_eq!(f.size(), BigUint::from(19u32));
        check(&f);
    }

    #[test]
    fn case_c_with_lift() {
        // d = 0, k - d - 1 = 1 extra direction
        let f = construct_general(q(1, 2), q(3, 1), 3, 2, 5).unwrap();
        assert!(f.branch.starts_with("c/"), "{}", f.branch);
        check(&f);
    }

    #[test]
    fn case_c_product_k1() {
        let f = construct_general(q(1, 1), q(3, 1), 3, 1, 5).unwrap();
        assert!(f.branch.starts_with("c/"));
        check(&f);
    }

    #[test]
    fn case_d_full_space() {
        let f = construct_general(q(2, 1), q(3, 1), 3, 2, 5).unwrap();
        assert_eq!(f.branch, "d");
        assert_eq!(f.size(), BigUint::from(125u32));
        check(&f);
    }
}
