//! The planar (s,t;2,1) families: point pencils, a strip, and a Szemerédi-Trotter grid.

use num_traits::{Signed, Zero};

use super::{to_count, FurstenbergFamily, Member};
use crate::error::{Error, Result};
use crate::flag_geometry::{enumerate_affine, enumerate_linear, AffineFlat, LinearSubspace};
use crate::fp_linalg::PrimeField;
use crate::indices::{ceil_rational_power, ceil_scaled_power, FurstenbergParams, Rational};
use crate::projections::PointSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlanarBranch {
    /// `s = 0, t <= 1`: lines through the origin.
    Pencil,
    /// `s = 0, t > 1`: pencils through points of the x-axis.
    PointPencil,
    /// `t <= s`: any lines, each with its own rows.
    Trivial,
    /// `s <= t <= 2 - s`: lines `y = ax + b` over a short rectangle.
    SzemerediTrotter,
    /// `t >= 2 - s`: every member inside a horizontal strip.
    Strip,
}

impl PlanarBranch {
    pub fn select(s: Rational, t: Rational) -> Self {
        let one = Rational::from_integer(1);
        if s.is_zero() {
            if t <= one {
                PlanarBranch::Pencil
            } else {
                PlanarBranch::PointPencil
            }
        } else if t <= s {
            PlanarBranch::Trivial
        } else if t <= Rational::from_integer(2) - s {
            PlanarBranch::SzemerediTrotter
        } else {
            PlanarBranch::Strip
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            PlanarBranch::Pencil => "2d-pencil",
            PlanarBranch::PointPencil => "2d-point-pencil",
            PlanarBranch::Trivial => "2d-trivial",
            PlanarBranch::SzemerediTrotter => "2d-szemeredi-trotter",
            PlanarBranch::Strip => "2d-strip",
        }
    }
}

fn line(field: PrimeField, dir: [u32; 2], through: [u32; 2]) -> AffineFlat {
    let d = LinearSubspace::span(field, 2, &[dir]).expect("2-vector");
    AffineFlat::new(d, &through).expect("2-vector")
}

fn is_horizontal(l: &AffineFlat) -> bool {
    let b = l.direction().basis();
    b.get(0, 1) == 0
}

/// Points of `l` whose second coordinate is one of `1..=rows` (mod p).
fn rows_on_line(field: PrimeField, l: &AffineFlat, rows: usize) -> PointSet {
    let p = field.modulus() as usize;
    let wanted = |y: u32| (1..=rows).any(|r| r % p == y as usize);
    let pts = l.points().into_iter().filter(|x| wanted(x[1]));
    PointSet::new(field, 2, pts).expect("points of a planar line")
}

/// An (s,t;2,1;1/2)-set with `#E <~ p^F(s,t;2,1)`.
pub fn construct_2d(s: Rational, t: Rational, p: u64) -> Result<FurstenbergFamily> {
    let field = PrimeField::new(p)?;
    let one = Rational::from_integer(1);
    if s.is_negative() || s > one || t.is_negative() || t > Rational::from_integer(2) {
        return Err(Error::Inadmissible(format!(
            "planar construction needs 0 <= s <= 1, 0 <= t <= 2; got s={s} t={t}"
        )));
    }
    let params = FurstenbergParams::new(s, t, 2, 1)?;
    let half = Rational::new(1, 2);
    let branch = PlanarBranch::select(s, t);
    let pu = p as usize;
    let mut members = Vec::new();
    match branch {
        PlanarBranch::Pencil => {
            let c = to_count(ceil_rational_power(p, t), "ceil(p^t)")?;
            let origin = PointSet::new(field, 2, [[0, 0]])?;
            for dir in enumerate_linear(field, 2, 1)?.take(c) {
                members.push(Member {
                    flat: AffineFlat::new(dir, &[0, 0])?,
                    y_set: origin.clone(),
                });
            }
        }
        PlanarBranch::PointPencil => {
            let x_count = to_count(ceil_rational_power(p, t - one), "ceil(p^(t-1))")?;
            for x in 0..x_count as u32 {
                let y = PointSet::new(field, 2, [[x, 0]])?;
                // p - 1 non-horizontal lines through (x, 0), slopes 1..p-1
                for a in 1..p as u32 {
                    members.push(Member {
                        flat: line(field, [1, a], [x, 0]),
                        y_set: y.clone(),
                    });
                }
            }
        }
        PlanarBranch::Trivial | PlanarBranch::Strip => {
            let c = if branch == PlanarBranch::Strip {
                to_count(ceil_scaled_power(p, t, half), "ceil(p^t/2)")?
            } else {
                to_count(ceil_rational_power(p, t), "ceil(p^t)")?
            };
            let rows = to_count(ceil_rational_power(p, s), "ceil(p^s)")?;
            for l in enumerate_affine(field, 2, 1)?.filter(|l| !is_horizontal(l)).take(c) {
                let y_set = rows_on_line(field, &l, rows);
                members.push(Member { flat: l, y_set });
            }
            if members.len() < c {
                return Err(Error::DegenerateScale(format!(
                    "only {} non-horizontal lines for ceil count {c}",
                    members.len()
                )));
            }
        }
        PlanarBranch::SzemerediTrotter => {
            let slopes = to_count(ceil_rational_power(p, (t - s) / 2), "ceil(p^((t-s)/2))")?;
            let intercepts = to_count(ceil_rational_power(p, (s + t) / 2), "ceil(p^((s+t)/2))")?;
            let xs = to_count(ceil_scaled_power(p, s, half), "ceil(p^s/2)")?;
            if slopes > pu - 1 {
                return Err(Error::DegenerateScale(format!("ceil(p^((t-s)/2)) = {slopes} exceeds p-1 = {}", pu - 1)));
            }
            if intercepts > pu {
                return Err(Error::DegenerateScale(format!("ceil(p^((s+t)/2)) = {intercepts} exceeds p = {pu}")));
            }
            if xs > pu {
                return Err(Error::DegenerateScale(format!("ceil(p^s/2) = {xs} exceeds p = {pu}")));
            }
            for a in 1..=slopes as u64 {
                for b in 1..=intercepts as u64 {
                    let a32 = field.reduce(a);
                    let b32 = field.reduce(b);
                    let pts = (1..=xs as u64).map(|x| {
                        let x32 = field.reduce(x);
                        [x32, field.add(field.mul(a32, x32), b32)]
                    });
                    members.push(Member {
                        flat: line(field, [1, a32], [0, b32]),
                        y_set: PointSet::new(field, 2, pts)?,
                    });
                }
            }
        }
    }
    Ok(FurstenbergFamily::assemble(params, field, half, branch.label(), members))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn branch_selection() {
        assert_eq!(PlanarBranch::select(q(0, 1), q(1, 2)), PlanarBranch::Pencil);
        assert_eq!(PlanarBranch::select(q(0, 1), q(3, 2)), PlanarBranch::PointPencil);
        assert_eq!(PlanarBranch::select(q(1, 2), q(1, 4)), PlanarBranch::Trivial);
        assert_eq!(PlanarBranch::select(q(1, 2), q(1, 1)), PlanarBranch::SzemerediTrotter);
        assert_eq!(PlanarBranch::select(q(1, 2), q(3, 2)), PlanarBranch::SzemerediTrotter);
        assert_eq!(PlanarBranch::select(q(1, 1), q(2, 1)), PlanarBranch::Strip);
    }

    #[test]
    fn point_pencil_size() {
        let f = construct_2d(q(0, 1), q(3, 2), 7).unwrap();
        assert_eq!(f.size(), BigUint::from(3u32));
        assert_eq!(f.members.len(), 3 * 6);
    }

    #[test]
    fn st_grid_sits_in_its_rectangle() {
        let f = construct_2d(q(1, 2), q(1, 1), 29).unwrap();
        // slopes 1..3, intercepts 1..13, x in 1..3
        assert_eq!(f.members.len(), 3 * 13);
        for x in f.union.iter() {
            assert!((1..=3).contains(&x[0]));
            assert!((1..=2 * 13).contains(&x[1]));
        }
    }

    #[test]
    fn degenerate_scale_is_reported() {
        // ceil(2^(1/2)) = 2 slopes but only p - 1 = 1 nonzero slope
        let err = construct_2d(q(1, 2), q(3, 2), 2).unwrap_err();
        assert!(matches!(err, Error::DegenerateScale(_)), "{err}");
    }
}
