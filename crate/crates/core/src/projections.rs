//! Coset projections `x -> x + V`, projected images of point sets, and exceptional sets.
//!
//! Note the indexing: `E_s(A; n, k)` runs over `V` of dimension `n - k`, so
//! that `pi_V(A)` lives in a `k`-dimensional quotient.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Signed;
use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::flag_geometry::{enumerate_linear, join_point, LinearSubspace, Point};
use crate::fp_linalg::PrimeField;
use crate::indices::{compare_count_to_power, Rational};

/// A sorted, duplicate-free set of points of `F_p^n`, stored flat.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointSet {
    field: PrimeField,
    dim: usize,
    coords: Vec<u32>,
}

impl PointSet {
    pub fn new<I, P>(field: PrimeField, dim: usize, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = P>,
        P: AsRef<[u32]>,
    {
        let mut pts: Vec<Point> = Vec::new();
        for x in points {
            let x = x.as_ref();
            if x.len() != dim {
                return Err(domain(format!("point of length {} in F_p^{dim}", x.len())));
            }
            pts.push(x.iter().map(|&c| field.reduce(c as u64)).collect());
        }
        pts.sort_unstable();
        pts.dedup();
        Ok(Self::from_sorted(field, dim, pts))
    }

    fn from_sorted(field: PrimeField, dim: usize, pts: Vec<Point>) -> Self {
        let mut coords = Vec::with_capacity(pts.len() * dim);
        for x in pts {
            coords.extend_from_slice(&x);
        }
        PointSet { field, dim, coords }
    }

    pub fn empty(field: PrimeField, dim: usize) -> Self {
        PointSet { field, dim, coords: Vec::new() }
    }

    /// All of `F_p^dim` in lexicographic order.
    pub fn full(field: PrimeField, dim: usize) -> Self {
        Self::lex_prefix(field, dim, usize::MAX)
    }

    /// The first `count` points of `F_p^dim` in lexicographic order (all of them if fewer).
    pub fn lex_prefix(field: PrimeField, dim: usize, count: usize) -> Self {
        let p = field.modulus();
        let mut coords = Vec::new();
        let mut x = vec![0u32; dim];
        let mut taken = 0;
        while taken < count {
            coords.extend_from_slice(&x);
            taken += 1;
            if !crate::flag_geometry::odometer(&mut x, p) {
                break;
            }
        }
        PointSet { field, dim, coords }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len().checked_div(self.dim).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn cardinality(&self) -> BigUint {
        BigUint::from(self.len())
    }

    pub fn get(&self, i: usize) -> &[u32] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[u32]> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    pub fn contains(&self, x: &[u32]) -> bool {
        self.position(x).is_ok()
    }

    fn position(&self, x: &[u32]) -> std::result::Result<usize, usize> {
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(x) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Ok(mid),
            }
        }
        Err(lo)
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.iter().all(|x| other.contains(x))
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        let mut pts: Vec<Point> = self.iter().chain(other.iter()).map(<[u32]>::to_vec).collect();
        pts.sort_unstable();
        pts.dedup();
        Self::from_sorted(self.field, self.dim, pts)
    }

    pub fn to_vec(&self) -> Vec<Point> {
        self.iter().map(<[u32]>::to_vec).collect()
    }

    /// Cartesian product `self x other`, coordinates concatenated.
    pub fn product(&self, other: &PointSet) -> PointSet {
        if other.dim == 0 {
            // F_p^0 is a single point
            return self.clone();
        }
        let mut pts = Vec::with_capacity(self.len() * other.len());
        for x in self.iter() {
            for y in other.iter() {
                let mut z = x.to_vec();
                z.extend_from_slice(y);
                pts.push(z);
            }
        }
        // lexicographic product of sorted sets is already sorted
        Self::from_sorted(self.field, self.dim + other.dim, pts)
    }

    /// Pad every point with `extra` trailing zero coordinates.
    pub fn pad(&self, extra: usize) -> PointSet {
        let pts = self
            .iter()
            .map(|x| {
                let mut z = x.to_vec();
                z.resize(self.dim + extra, 0);
                z
            })
            .collect();
        Self::from_sorted(self.field, self.dim + extra, pts)
    }
}

impl fmt::Display for PointSet {
    /// Points separated by `;`, coordinates by `,`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(join_point).collect();
        write!(f, "{}", parts.join(";"))
    }
}

fn check_match(field: PrimeField, n: usize, v: &LinearSubspace) -> Result<()> {
    if v.field() != field || v.ambient_dim() != n {
        return Err(domain(format!(
            "subspace of F_{}^{} used with points of F_{}^{}",
            v.field().modulus(),
            v.ambient_dim(),
            field.modulus(),
            n
        )));
    }
    Ok(())
}

/// Canonical point of `x + V`.
pub fn coset_representative(x: &[u32], v: &LinearSubspace) -> Result<Point> {
    if x.len() != v.ambient_dim() {
        return Err(domain(format!("point of length {} in F_p^{}", x.len(), v.ambient_dim())));
    }
    Ok(v.reduce(x))
}

pub fn project_set(a: &PointSet, v: &LinearSubspace) -> Result<PointSet> {
    check_match(a.field(), a.ambient_dim(), v)?;
    let mut reps: Vec<Point> = a.iter().map(|x| v.reduce(x)).collect();
    reps.sort_unstable();
    reps.dedup();
    Ok(PointSet::from_sorted(a.field(), a.ambient_dim(), reps))
}

/// `#pi_V(A)`.
pub fn projection_count(a: &PointSet, v: &LinearSubspace) -> Result<usize> {
    Ok(project_set(a, v)?.len())
}

/// `#(A ∩ L)` for each coset `L` of `V` meeting `A`, keyed by coset representative.
pub fn fiber_sizes(a: &PointSet, v: &LinearSubspace) -> Result<BTreeMap<Point, usize>> {
    check_match(a.field(), a.ambient_dim(), v)?;
    let mut fibers = BTreeMap::new();
    for x in a.iter() {
        *fibers.entry(v.reduce(x)).or_insert(0) += 1;
    }
    Ok(fibers)
}

/// The question "is `#pi_V(A) < p^s`" for `V` ranging over `G(n-k, F_p^n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExceptionalQuery {
    pub s: Rational,
    pub k: usize,
}

impl ExceptionalQuery {
    pub fn new(s: Rational, k: usize) -> Result<Self> {
        if !s.is_positive() {
            return Err(domain(format!("exceptional threshold must be positive, got {s}")));
        }
        Ok(ExceptionalQuery { s, k })
    }

    /// Strict test `count < p^s`.
    pub fn is_exceptional_count(&self, count: usize, p: u64) -> bool {
        compare_count_to_power(&BigUint::from(count), p, self.s) == Ordering::Less
    }

    pub fn is_exceptional(&self, a: &PointSet, v: &LinearSubspace) -> Result<bool> {
        if v.dim() + self.k != a.ambient_dim() {
            return Err(domain(format!(
                "direction of dim {} is not in G(n-k) for n={} k={}",
                v.dim(),
                a.ambient_dim(),
                self.k
            )));
        }
        let c = projection_count(a, v)?;
        Ok(self.is_exceptional_count(c, a.field().modulus() as u64))
    }
}

/// `E_s(A; n, k)` by full enumeration of `G(n-k, F_p^n)`, in enumeration order.
pub fn exceptional_set(a: &PointSet, q: &ExceptionalQuery) -> Result<Vec<LinearSubspace>> {
    let n = a.ambient_dim();
    if q.k < 1 || q.k >= n {
        return Err(domain(format!("need 1 <= k < n, got n={n} k={}", q.k)));
    }
    let p = a.field().modulus() as u64;
    let all: Vec<LinearSubspace> = enumerate_linear(a.field(), n, n - q.k)?.collect();
    let keep: Vec<bool> = all
        .par_iter()
        .map(|v| {
            let c = projection_count(a, v).expect("dimensions checked");
            q.is_exceptional_count(c, p)
        })
        .collect();
    Ok(all.into_iter().zip(keep).filter_map(|(v, k)| k.then_some(v)).collect())
}

/// Number of `V` in `G(n-k, F_p^n)` with `#pi_V(W) <= p^l`, by brute force.
///
/// Requires `n - k >= m - l`, `l <= k`, `l <= m` where `m = dim W`.
pub fn count_small_projection_subspaces(w: &LinearSubspace, k: usize, l: usize) -> Result<BigUint> {
    let n = w.ambient_dim();
    let m = w.dim();
    if k < 1 || k > n {
        return Err(domain(format!("need 1 <= k <= n, got n={n} k={k}")));
    }
    if l > k || l > m || n - k + l < m {
        return Err(domain(format!(
            "small-projection count needs n-k >= m-l, l <= k, l <= m; got n={n} k={k} m={m} l={l}"
        )));
    }
    let p = w.field().modulus() as u64;
    let pts = PointSet::new(w.field(), n, w.points())?;
    let bound = Rational::from_integer(l as i64);
    let all: Vec<LinearSubspace> = enumerate_linear(w.field(), n, n - k)?.collect();
    let hits = all
        .par_iter()
        .filter(|v| {
            let c = BigUint::from(projection_count(&pts, v).expect("same ambient"));
            compare_count_to_power(&c, p, bound) != Ordering::Greater
        })
        .count();
    Ok(BigUint::from(hits))
}
