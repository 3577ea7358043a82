//! Linear subspaces and affine flats of F_p^n in canonical form.
//!
//! A [`LinearSubspace`] is stored as its RREF basis, so structural equality
//! is subspace equality. An [`AffineFlat`] is a direction plus the unique
//! coset point that vanishes on the direction's pivot coordinates.
//!
//! Enumeration order is lexicographic in (pivot columns, free entries) with
//! the first free entry most significant; constructions that "choose the
//! first N" flats depend on this order.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::fp_linalg::{kernel_basis, rref, solve_left, PrimeField, PrimeMatrix};

/// A point of F_p^n.
pub type Point = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearSubspace {
    ambient: usize,
    basis: PrimeMatrix,
    pivots: Vec<usize>,
}

impl LinearSubspace {
    /// The span of the given vectors (any number, possibly dependent).
    pub fn span<R: AsRef<[u32]>>(field: PrimeField, ambient: usize, vectors: &[R]) -> Result<Self> {
        let m = PrimeMatrix::from_rows(field, ambient, vectors)?;
        Ok(Self::from_matrix(&m))
    }

    /// Row space of `m`.
    pub fn from_matrix(m: &PrimeMatrix) -> Self {
        let (mut red, pivots) = rref(m);
        red.truncate_rows(pivots.len());
        LinearSubspace {
            ambient: m.cols(),
            basis: red,
            pivots,
        }
    }

    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        LinearSubspace {
            ambient,
            basis: PrimeMatrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn whole(field: PrimeField, ambient: usize) -> Self {
        LinearSubspace {
            ambient,
            basis: PrimeMatrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the standard basis vectors `e_c` for `c` in `coords`.
    pub fn coordinate(field: PrimeField, ambient: usize, coords: impl IntoIterator<Item = usize>) -> Self {
        let rows: Vec<Point> = coords
            .into_iter()
            .map(|c| {
                let mut v = vec![0; ambient];
                v[c] = 1;
                v
            })
            .collect();
        Self::span(field, ambient, &rows).expect("coordinate rows have ambient length")
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &PrimeMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical representative of `x + self`: the coset point that is zero on every pivot column.
    pub fn reduce(&self, x: &[u32]) -> Point {
        let f = self.field();
        let mut y = x.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let c = y[pc];
            if c == 0 {
                continue;
            }
            for (yj, &bj) in y.iter_mut().zip(self.basis.row(r)) {
                *yj = f.sub(*yj, f.mul(c, bj));
            }
        }
        y
    }

    pub fn contains_vector(&self, x: &[u32]) -> bool {
        self.reduce(x).iter().all(|&c| c == 0)
    }

    pub fn contains(&self, other: &LinearSubspace) -> bool {
        other.basis.row_iter().all(|r| self.contains_vector(r))
    }

    pub fn sum(&self, other: &LinearSubspace) -> LinearSubspace {
        LinearSubspace::from_matrix(&self.basis.stack(&other.basis))
    }

    /// Vectors orthogonal to `self` under the standard dot product.
    pub fn annihilator(&self) -> LinearSubspace {
        if self.dim() == 0 {
            return LinearSubspace::whole(self.field(), self.ambient);
        }
        LinearSubspace::from_matrix(&kernel_basis(&self.basis))
    }

    pub fn intersect(&self, other: &LinearSubspace) -> LinearSubspace {
        let a = self.annihilator();
        let b = other.annihilator();
        let both = a.basis.stack(&b.basis);
        if both.rows() == 0 {
            return LinearSubspace::whole(self.field(), self.ambient);
        }
        LinearSubspace::from_matrix(&kernel_basis(&both))
    }

    /// `dim(self ∩ other)` from ranks, without building the intersection.
    pub fn intersection_dim(&self, other: &LinearSubspace) -> usize {
        self.dim() + other.dim() - self.sum(other).dim()
    }

    /// Image under the coordinate embedding `F_p^ambient -> F_p^new_ambient`, coordinate `i` going to `offset + i`.
    pub fn embed(&self, new_ambient: usize, offset: usize) -> LinearSubspace {
        let rows: Vec<Point> = self
            .basis
            .row_iter()
            .map(|r| embed_point(r, new_ambient, offset))
            .collect();
        LinearSubspace::span(self.field(), new_ambient, &rows).expect("embedded rows have ambient length")
    }

    /// All `p^dim` vectors of the subspace, in lexicographic order of coefficients.
    pub fn points(&self) -> Vec<Point> {
        let f = self.field();
        let p = f.modulus();
        let k = self.dim();
        let mut out = Vec::new();
        let mut coeffs = vec![0u32; k];
        loop {
            let mut v = vec![0u32; self.ambient];
            for (i, &c) in coeffs.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (vj, &bj) in v.iter_mut().zip(self.basis.row(i)) {
                    *vj = f.add(*vj, f.mul(c, bj));
                }
            }
            out.push(v);
            if !odometer(&mut coeffs, p) {
                break;
            }
        }
        out
    }
}

impl PartialOrd for LinearSubspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LinearSubspace {
    /// Enumeration order: pivot pattern first, then free entries.
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient
            .cmp(&other.ambient)
            .then_with(|| self.field().cmp(&other.field()))
            .then_with(|| self.pivots.cmp(&other.pivots))
            .then_with(|| self.basis.entries().cmp(other.basis.entries()))
    }
}

impl fmt::Display for LinearSubspace {
    /// Rows separated by `/`, entries by `,`; the zero subspace prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim() == 0 {
            return write!(f, "0");
        }
        let rows: Vec<String> = self.basis.row_iter().map(join_point).collect();
        write!(f, "{}", rows.join("/"))
    }
}

pub(crate) fn join_point(x: &[u32]) -> String {
    x.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

pub(crate) fn embed_point(x: &[u32], new_ambient: usize, offset: usize) -> Point {
    let mut v = vec![0; new_ambient];
    v[offset..offset + x.len()].copy_from_slice(x);
    v
}

/// Advance a little-endian-last counter; the first digit is most significant.
/// Returns `false` after wrapping past the last value.
pub(crate) fn odometer(digits: &mut [u32], base: u32) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// An affine k-plane `base + direction`, with `base` canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineFlat {
    direction: LinearSubspace,
    base: Point,
}

impl AffineFlat {
    /// The flat through `point` with the given direction.
    pub fn new(direction: LinearSubspace, point: &[u32]) -> Result<Self> {
        if point.len() != direction.ambient_dim() {
            return Err(domain(format!(
                "point of length {} in F_p^{}",
                point.len(),
                direction.ambient_dim()
            )));
        }
        let f = direction.field();
        let point: Point = point.iter().map(|&c| f.reduce(c as u64)).collect();
        let base = direction.reduce(&point);
        Ok(AffineFlat { direction, base })
    }

    pub fn direction(&self) -> &LinearSubspace {
        &self.direction
    }

    pub fn base(&self) -> &[u32] {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.direction.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.direction.ambient_dim()
    }

    pub fn field(&self) -> PrimeField {
        self.direction.field()
    }

    pub fn contains_point(&self, x: &[u32]) -> bool {
        x.len() == self.base.len() && self.direction.reduce(x) == self.base
    }

    pub fn contains_flat(&self, other: &AffineFlat) -> bool {
        self.contains_point(&other.base) && self.direction.contains(&other.direction)
    }

    pub fn points(&self) -> Vec<Point> {
        let f = self.field();
        self.direction
            .points()
            .into_iter()
            .map(|v| v.iter().zip(&self.base).map(|(&a, &b)| f.add(a, b)).collect())
            .collect()
    }
}

impl fmt::Display for AffineFlat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", join_point(&self.base), self.direction)
    }
}

/// Exact number of k-dimensional subspaces of F_p^n.
pub fn gaussian_binomial(n: usize, k: usize, p: u64) -> Result<BigUint> {
    if k > n {
        return Err(domain(format!("gaussian_binomial with k={k} > n={n}")));
    }
    let q = BigUint::from(p);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1u32;
        den *= q.pow((k - i) as u32) - 1u32;
    }
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// Exact number of affine k-planes of F_p^n.
pub fn affine_count(n: usize, k: usize, p: u64) -> Result<BigUint> {
    Ok(gaussian_binomial(n, k, p)? * BigUint::from(p).pow((n - k) as u32))
}

/// Lazy stream of G(k, F_p^n) in canonical order.
pub struct LinearEnumerator {
    field: PrimeField,
    n: usize,
    pivots: Option<Vec<usize>>,
    free: Vec<(usize, usize)>,
    values: Vec<u32>,
    fresh: bool,
}

impl LinearEnumerator {
    fn new(field: PrimeField, n: usize, k: usize) -> Self {
        let pivots: Vec<usize> = (0..k).collect();
        let mut e = LinearEnumerator {
            field,
            n,
            pivots: Some(pivots),
            free: Vec::new(),
            values: Vec::new(),
            fresh: true,
        };
        e.load_pattern();
        e
    }

    fn load_pattern(&mut self) {
        let Some(piv) = &self.pivots else { return };
        self.free = piv
            .iter()
            .enumerate()
            .flat_map(|(i, &pc)| ((pc + 1)..self.n).filter(|c| !piv.contains(c)).map(move |c| (i, c)))
            .collect();
        self.values = vec![0; self.free.len()];
        self.fresh = true;
    }

    fn next_pattern(&mut self) {
        let Some(piv) = &mut self.pivots else { return };
        let k = piv.len();
        // Next k-combination of 0..n in lexicographic order.
        let mut i = k;
        while i > 0 {
            i -= 1;
            if piv[i] < self.n - k + i {
                piv[i] += 1;
                for j in i + 1..k {
                    piv[j] = piv[j - 1] + 1;
                }
                self.load_pattern();
                return;
            }
        }
        self.pivots = None;
    }

    fn current(&self) -> LinearSubspace {
        let piv = self.pivots.as_ref().expect("active pattern");
        let mut m = PrimeMatrix::zeros(self.field, piv.len(), self.n);
        for (i, &pc) in piv.iter().enumerate() {
            m.set(i, pc, 1);
        }
        for (&(r, c), &v) in self.free.iter().zip(&self.values) {
            m.set(r, c, v);
        }
        LinearSubspace {
            ambient: self.n,
            basis: m,
            pivots: piv.clone(),
        }
    }
}

impl Iterator for LinearEnumerator {
    type Item = LinearSubspace;

    fn next(&mut self) -> Option<LinearSubspace> {
        loop {
            self.pivots.as_ref()?;
            if self.fresh {
                self.fresh = false;
                return Some(self.current());
            }
            if odometer(&mut self.values, self.field.modulus()) {
                return Some(self.current());
            }
            self.next_pattern();
        }
    }
}

pub fn enumerate_linear(field: PrimeField, n: usize, k: usize) -> Result<LinearEnumerator> {
    if k > n {
        return Err(domain(format!("G({k}, F_p^{n}) with k > n")));
    }
    Ok(LinearEnumerator::new(field, n, k))
}

/// Lazy stream of A(k, F_p^n): for each direction in canonical order, every base point
/// supported off the pivot columns.
pub fn enumerate_affine(
    field: PrimeField,
    n: usize,
    k: usize,
) -> Result<impl Iterator<Item = AffineFlat>> {
    let p = field.modulus();
    Ok(enumerate_linear(field, n, k)?.flat_map(move |dir| {
        let free: Vec<usize> = (0..n).filter(|c| !dir.pivots.contains(c)).collect();
        let mut digits = vec![0u32; free.len()];
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let mut base = vec![0u32; n];
            for (&c, &v) in free.iter().zip(&digits) {
                base[c] = v;
            }
            done = !odometer(&mut digits, p);
            Some(AffineFlat {
                direction: dir.clone(),
                base,
            })
        })
    }))
}

/// How two affine flats sit relative to each other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub intersection: Option<AffineFlat>,
    pub parallel: bool,
    pub transverse: bool,
}

impl Relation {
    /// Affine dimension of the intersection, `None` when empty.
    pub fn intersection_dim(&self) -> Option<usize> {
        self.intersection.as_ref().map(AffineFlat::dim)
    }
}

pub fn relate(v: &AffineFlat, w: &AffineFlat) -> Result<Relation> {
    if v.ambient_dim() != w.ambient_dim() || v.field() != w.field() {
        return Err(domain("flats in different ambient spaces"));
    }
    let f = v.field();
    let n = v.ambient_dim();
    let (small, large) = if v.dim() <= w.dim() { (v, w) } else { (w, v) };
    let parallel = large.direction.contains(&small.direction);

    // Solve base_v + a.D_v = base_w + b.D_w.
    let diff: Point = w.base.iter().zip(&v.base).map(|(&b, &a)| f.sub(b, a)).collect();
    let dv = v.direction.basis();
    let dw = w.direction.basis();
    let mut neg_dw = dw.clone();
    for r in 0..dw.rows() {
        for c in 0..n {
            neg_dw.set(r, c, f.neg(dw.get(r, c)));
        }
    }
    let system = dv.stack(&neg_dw);
    let intersection = if system.rows() == 0 {
        diff.iter().all(|&c| c == 0).then(|| v.clone())
    } else {
        solve_left(&system, &diff).map(|coeffs| {
            let mut point = v.base.clone();
            for (i, &c) in coeffs.iter().take(dv.rows()).enumerate() {
                for (pj, &dj) in point.iter_mut().zip(dv.row(i)) {
                    *pj = f.add(*pj, f.mul(c, dj));
                }
            }
            let dir = v.direction.intersect(&w.direction);
            AffineFlat::new(dir, &point).expect("point has ambient length")
        })
    };
    let transverse = match &intersection {
        Some(i) => v.dim() + w.dim() >= n && i.dim() == v.dim() + w.dim() - n,
        None => false,
    };
    Ok(Relation {
        intersection,
        parallel,
        transverse,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn gaussian_examples() {
        assert_eq!(gaussian_binomial(2, 1, 3).unwrap(), BigUint::from(4u32));
        assert_eq!(gaussian_binomial(4, 2, 2).unwrap(), BigUint::from(35u32));
        assert_eq!(gaussian_binomial(3, 2, 3).unwrap(), BigUint::from(13u32));
        assert_eq!(gaussian_binomial(4, 2, 5).unwrap(), BigUint::from(806u32));
        for n in 0..5 {
            assert_eq!(gaussian_binomial(n, n, 7).unwrap(), BigUint::one());
            assert_eq!(gaussian_binomial(n, 0, 7).unwrap(), BigUint::one());
        }
        assert!(gaussian_binomial(2, 3, 3).is_err());
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_linear(f(2), 2, 1).unwrap().count(), 3);
        assert_eq!(enumerate_linear(f(3), 3, 2).unwrap().count(), 13);
        assert_eq!(enumerate_linear(f(5), 4, 2).unwrap().count(), 806);
        assert_eq!(enumerate_affine(f(2), 2, 1).unwrap().count(), 6);
        assert_eq!(enumerate_affine(f(3), 3, 1).unwrap().count(), 117);
        assert_eq!(enumerate_affine(f(5), 3, 3).unwrap().count(), 1);
        assert_eq!(enumerate_linear(f(5), 3, 0).unwrap().count(), 1);
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        let all: Vec<_> = enumerate_linear(f(3), 4, 2).unwrap().collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let flats: Vec<_> = enumerate_affine(f(3), 3, 1).unwrap().collect();
        let set: HashSet<_> = flats.iter().cloned().collect();
        assert_eq!(set.len(), flats.len());
    }

    #[test]
    fn first_subspace_is_coordinate_span() {
        let first = enumerate_linear(f(5), 4, 2).unwrap().next().unwrap();
        assert_eq!(first, LinearSubspace::coordinate(f(5), 4, [0, 1]));
    }

    #[test]
    fn reduce_zeroes_pivots() {
        let x_axis = LinearSubspace::coordinate(f(5), 2, [0]);
        assert_eq!(x_axis.reduce(&[3, 2]), vec![0, 2]);
        let zero = LinearSubspace::zero(f(5), 2);
        assert_eq!(zero.reduce(&[3, 2]), vec![3, 2]);
        let whole = LinearSubspace::whole(f(5), 2);
        assert_eq!(whole.reduce(&[3, 2]), vec![0, 0]);
    }

    #[test]
    fn intersect_and_sum() {
        let f5 = f(5);
        let a = LinearSubspace::coordinate(f5, 3, [0, 1]);
        let b = LinearSubspace::span(f5, 3, &[[0, 1, 0], [0, 0, 1]]).unwrap();
        let i = a.intersect(&b);
        assert_eq!(i, LinearSubspace::coordinate(f5, 3, [1]));
        assert_eq!(a.intersection_dim(&b), 1);
        assert_eq!(a.sum(&b).dim(), 3);
        assert!(a.contains(&i));
    }

    #[test]
    fn relate_parallel_lines() {
        let f3 = f(3);
        let dir = LinearSubspace::coordinate(f3, 2, [0]);
        let l1 = AffineFlat::new(dir.clone(), &[0, 0]).unwrap();
        let l2 = AffineFlat::new(dir, &[0, 1]).unwrap();
        let r = relate(&l1, &l2).unwrap();
        assert_eq!(r.intersection_dim(), None);
        assert!(r.parallel);
        assert!(!r.transverse);
    }

    #[test]
    fn relate_axes() {
        let f5 = f(5);
        let x = AffineFlat::new(LinearSubspace::coordinate(f5, 2, [0]), &[0, 0]).unwrap();
        let y = AffineFlat::new(LinearSubspace::coordinate(f5, 2, [1]), &[0, 0]).unwrap();
        let r = relate(&x, &y).unwrap();
        assert_eq!(r.intersection_dim(), Some(0));
        assert!(r.transverse);
        assert!(!r.parallel);
        assert_eq!(r.intersection.unwrap().base(), &[0, 0]);
    }

    #[test]
    fn relate_finds_offset_intersection() {
        let f7 = f(7);
        let l1 = AffineFlat::new(LinearSubspace::span(f7, 2, &[[1, 1]]).unwrap(), &[0, 3]).unwrap();
        let l2 = AffineFlat::new(LinearSubspace::span(f7, 2, &[[1, 2]]).unwrap(), &[0, 1]).unwrap();
        let r = relate(&l1, &l2).unwrap();
        let pt = r.intersection.unwrap();
        // x + 3 = 2x + 1 -> x = 2, y = 5
        assert_eq!(pt.base(), &[2, 5]);
        assert!(l1.contains_point(&[2, 5]) && l2.contains_point(&[2, 5]));
    }

    #[test]
    fn relate_rejects_mismatch() {
        let a = AffineFlat::new(LinearSubspace::zero(f(5), 2), &[0, 0]).unwrap();
        let b = AffineFlat::new(LinearSubspace::zero(f(5), 3), &[0, 0, 0]).unwrap();
        assert!(relate(&a, &b).is_err());
        let c = AffineFlat::new(LinearSubspace::zero(f(7), 2), &[0, 0]).unwrap();
        assert!(relate(&a, &c).is_err());
    }

    #[test]
    fn transverse_lines_to_plane_fraction() {
        let f3 = f(3);
        let plane = enumerate_affine(f3, 3, 2).unwrap().next().unwrap();
        let total = enumerate_affine(f3, 3, 1).unwrap().count();
        let transverse = enumerate_affine(f3, 3, 1)
            .unwrap()
            .filter(|l| relate(l, &plane).unwrap().transverse)
            .count();
        assert_eq!(total, 117);
        // Lines not parallel to the plane: 13 - 4 directions, 9 translates each.
        assert_eq!(transverse, 81);
        assert!(4 * transverse >= total);
    }

    #[test]
    fn point_regularity() {
        for p in [2u64, 3] {
            let fp = f(p);
            for n in 1..=3 {
                for k in 0..=n {
                    let flats: Vec<_> = enumerate_affine(fp, n, k).unwrap().collect();
                    let expected = gaussian_binomial(n, k, p).unwrap();
                    for x in LinearSubspace::whole(fp, n).points() {
                        let c = flats.iter().filter(|fl| fl.contains_point(&x)).count();
                        assert_eq!(BigUint::from(c), expected, "p={p} n={n} k={k}");
                    }
                }
            }
        }
    }
}
