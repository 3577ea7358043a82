//! Sets `A` with many exceptional directions, one construction per Marstrand type.
//!
//! Every witness carries the directions its construction predicts to be
//! exceptional (each re-tested by projecting `A`) and the exact size of the full
//! exceptional set, found by enumerating `G(n-k, F_p^n)`.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::flag_geometry::{enumerate_linear, LinearSubspace};
use crate::fp_linalg::PrimeField;
use crate::indices::{
    ceil_rational_power, compare_scaled_power, floor_rational_power, fmt_rational, ExactExponent, MarstrandParams,
    MarstrandType, Rational,
};
use crate::projections::{exceptional_set, ExceptionalQuery, PointSet};

/// The sets `V_theta`, `W_theta` and `U_theta = V_theta \ W_theta` for one line `theta` of the plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaFamily {
    pub theta: LinearSubspace,
    pub v_count: usize,
    pub w_count: usize,
    pub u: Vec<LinearSubspace>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalWitness {
    pub params: MarstrandParams,
    pub p: u64,
    pub branch: String,
    pub set_a: PointSet,
    pub claimed_directions: Vec<LinearSubspace>,
    pub certified_count: BigUint,
    /// Present for the product constructions built over a planar rectangle.
    pub theta_families: Vec<ThetaFamily>,
}

impl ExceptionalWitness {
    pub fn target(&self) -> ExactExponent {
        self.params.index()
    }

    /// `#E_s'(A; n, k)` for another threshold `s'`.
    pub fn count_at(&self, s: Rational) -> Result<usize> {
        let q = ExceptionalQuery::new(s, self.params.k)?;
        Ok(exceptional_set(&self.set_a, &q)?.len())
    }

    /// Header, then `A`, the claimed directions and the certified count.
    pub fn to_text(&self) -> String {
        let prm = &self.params;
        let mut out = format!(
            "p={} n={} k={} a={} s={} type={} branch={}\n",
            self.p,
            prm.n,
            prm.k,
            fmt_rational(prm.a),
            fmt_rational(prm.s),
            prm.kind,
            self.branch
        );
        writeln!(out, "A {}", self.set_a).expect("write to string");
        let claims: Vec<String> = self.claimed_directions.iter().map(|v| v.to_string()).collect();
        writeln!(out, "claims {}", claims.join(" ")).expect("write to string");
        writeln!(out, "certified_count={}", self.certified_count).expect("write to string");
        out
    }
}

/// `certified_count >= c p^M(a,s;n,k)`; always true when `M = -inf`.
pub fn certify_lower_bound(w: &ExceptionalWitness, c: Rational) -> bool {
    match w.target() {
        ExactExponent::NegInfinity => true,
        ExactExponent::Finite(m) => compare_scaled_power(&w.certified_count, c, w.p, m) != Ordering::Less,
    }
}

fn fifth_floor(p: u64, e: Rational) -> BigUint {
    // floor(p^e / 5) = floor(floor(p^e) / 5)
    floor_rational_power(p, e) / 5u32
}

fn small(x: BigUint, what: &str) -> Result<u32> {
    x.to_u32().ok_or_else(|| Error::DegenerateScale(format!("{what} = {x} is too large")))
}

/// Each claimed direction must fail the strict `< p^s` test.
fn verify_claims(a: &PointSet, s: Rational, k: usize, claims: &[LinearSubspace]) -> Result<()> {
    let q = ExceptionalQuery::new(s, k)?;
    let bad = claims
        .par_iter()
        .map(|v| q.is_exceptional(a, v).map(|ok| (!ok).then(|| v.to_string())))
        .collect::<Result<Vec<_>>>()?;
    if let Some(v) = bad.into_iter().flatten().next() {
        return Err(Error::ClaimRejected(format!(
            "direction {v} is not exceptional for s={}",
            fmt_rational(s)
        )));
    }
    Ok(())
}

fn certify(a: &PointSet, s: Rational, k: usize) -> Result<BigUint> {
    let q = ExceptionalQuery::new(s, k)?;
    Ok(BigUint::from(exceptional_set(a, &q)?.len()))
}

/// Symmetric residues `{-b, ..., b}` mod p.
fn symmetric(field: PrimeField, b: u32) -> Vec<u32> {
    (-(b as i64)..=b as i64).map(|x| field.from_signed(x)).collect()
}

/// The lattice rectangle `|x| <= p^(a-s)/5, |y| <= p^s/5` and the slopes `|kappa| <= p^(2s-a)/5`.
fn rectangle(field: PrimeField, a: Rational, s: Rational) -> Result<(PointSet, Vec<LinearSubspace>)> {
    let p = field.modulus() as u64;
    let bx = small(fifth_floor(p, a - s), "floor(p^(a-s)/5)")?;
    let by = small(fifth_floor(p, s), "floor(p^s/5)")?;
    if by == 0 {
        return Err(Error::DegenerateScale(format!("floor(p^s/5) = 0 at p={p}, s={}", fmt_rational(s))));
    }
    let kk = small(fifth_floor(p, s * 2 - a), "floor(p^(2s-a)/5)")?;
    if 2 * bx as u64 + 1 > p || 2 * by as u64 + 1 > p || 2 * kk as u64 + 1 > p {
        return Err(Error::DegenerateScale(format!("rectangle wraps around F_{p}")));
    }
    let xs = symmetric(field, bx);
    let ys = symmetric(field, by);
    let pts = xs.iter().flat_map(|&x| ys.iter().map(move |&y| [x, y]));
    let set = PointSet::new(field, 2, pts)?;
    let mut slopes = Vec::new();
    for kappa in -(kk as i64)..=kk as i64 {
        slopes.push(LinearSubspace::span(field, 2, &[[1, field.from_signed(kappa)]])?);
    }
    Ok((set, slopes))
}

fn check_rectangle_range(a: Rational, s: Rational) -> Result<()> {
    let one = Rational::from_integer(1);
    if !a.is_positive() || a > Rational::from_integer(2) || s <= a / 2 || s > one.min(a) {
        return Err(Error::Domain(format!(
            "rectangle needs a in (0,2], s in (a/2, min(1,a)]; got a={} s={}",
            fmt_rational(a),
            fmt_rational(s)
        )));
    }
    Ok(())
}

/// The planar witness: a `p^(a-s)/5 x p^s/5` lattice rectangle and its slope lines.
pub fn construct_oberlin_rectangle(a: Rational, s: Rational, p: u64) -> Result<ExceptionalWitness> {
    check_rectangle_range(a, s)?;
    let field = PrimeField::new(p)?;
    let params = MarstrandParams::new(a, s, 2, 1)?;
    let (set_a, claims) = rectangle(field, a, s)?;
    verify_claims(&set_a, s, 1, &claims)?;
    let certified_count = certify(&set_a, s, 1)?;
    Ok(ExceptionalWitness {
        params,
        p,
        branch: "oberlin".into(),
        set_a,
        claimed_directions: claims,
        certified_count,
        theta_families: Vec::new(),
    })
}

/// `#pi_V(X) <= p^l` for a subspace `X`, via `dim X - dim(V ∩ X)`.
fn projects_within(v: &LinearSubspace, x: &LinearSubspace, l: i64) -> bool {
    (x.dim() - v.intersection_dim(x)) as i64 <= l
}

/// Dispatch on the Marstrand type of `(a, s; n, k)` and build its witness.
pub fn construct_marstrand_witness(a: Rational, s: Rational, n: usize, k: usize, p: u64) -> Result<ExceptionalWitness> {
    let params = MarstrandParams::new(a, s, n, k)?;
    let field = PrimeField::new(p)?;
    let (m, beta, l, gamma) = (params.m, params.beta, params.l, params.gamma);
    let half = Rational::new(1, 2);
    let base = Witness { params, field };
    match params.kind {
        MarstrandType::Type1 => base.lex_prefix("type1-any-set", true),
        MarstrandType::Type4 => base.lex_prefix("type4-empty", false),
        MarstrandType::Type2 if gamma > (beta + 1) * half => base.product(m - 1, beta + 1, l, gamma, "type2-shifted"),
        MarstrandType::Type2 => base.slab(m as usize, beta, l, "type2-product", None),
        MarstrandType::Type3 if gamma > beta * half => base.product(m, beta, l, gamma, "type3-product"),
        MarstrandType::Type3 => base.slab((m + 1) as usize, Rational::from_integer(0), l, "type3-enlarged", Some(a)),
    }
}

struct Witness {
    params: MarstrandParams,
    field: PrimeField,
}

impl Witness {
    fn p(&self) -> u64 {
        self.field.modulus() as u64
    }

    fn finish(self, branch: &str, set_a: PointSet, claims: Vec<LinearSubspace>, thetas: Vec<ThetaFamily>) -> Result<ExceptionalWitness> {
        let (s, k) = (self.params.s, self.params.k);
        verify_claims(&set_a, s, k, &claims)?;
        let certified_count = certify(&set_a, s, k)?;
        Ok(ExceptionalWitness {
            params: self.params,
            p: self.p(),
            branch: branch.into(),
            set_a,
            claimed_directions: claims,
            certified_count,
            theta_families: thetas,
        })
    }

    /// The first `ceil(p^a)` points of F_p^n; for Type 1 every direction is claimed.
    fn lex_prefix(self, branch: &str, claim_all: bool) -> Result<ExceptionalWitness> {
        let (n, k) = (self.params.n, self.params.k);
        let size = ceil_rational_power(self.p(), self.params.a)
            .to_usize()
            .ok_or_else(|| Error::DegenerateScale("ceil(p^a) too large".into()))?;
        let set_a = PointSet::lex_prefix(self.field, n, size);
        let claims = if claim_all {
            enumerate_linear(self.field, n, n - k)?.collect()
        } else {
            Vec::new()
        };
        self.finish(branch, set_a, claims, Vec::new())
    }

    /// `A = F^m x I x 0` with `#I = ceil(p^beta)`; claims are the `V` with `#pi_V(F^m) <= p^l`.
    /// With `shrink_to = Some(a)` only the first `ceil(p^a)` points of `A` are kept.
    fn slab(self, m: usize, beta: Rational, l: i64, branch: &str, shrink_to: Option<Rational>) -> Result<ExceptionalWitness> {
        let (n, k) = (self.params.n, self.params.k);
        if m + 1 > n {
            return Err(Error::Domain(format!("slab F^{m} x I does not fit in F^{n}")));
        }
        let width = small(ceil_rational_power(self.p(), beta), "ceil(p^beta)")?;
        let fm = PointSet::full(self.field, m);
        let interval = PointSet::new(self.field, 1, (0..width).map(|i| [i]))?;
        let mut set_a = if m < n { fm.product(&interval).pad(n - m - 1) } else { fm };
        if let Some(a) = shrink_to {
            let size = ceil_rational_power(self.p(), a)
                .to_usize()
                .ok_or_else(|| Error::DegenerateScale("ceil(p^a) too large".into()))?;
            set_a = PointSet::new(self.field, n, set_a.iter().take(size))?;
        }
        let fm_sub = LinearSubspace::coordinate(self.field, n, 0..m);
        let claims: Vec<LinearSubspace> = enumerate_linear(self.field, n, n - k)?
            .filter(|v| projects_within(v, &fm_sub, l))
            .collect();
        self.finish(branch, set_a, claims, Vec::new())
    }

    /// `A = R x F^m x 0` with `R` the planar rectangle for `(beta, gamma)`, claims `⊔ U_theta`.
    fn product(self, m: i64, beta: Rational, l: i64, gamma: Rational, branch: &str) -> Result<ExceptionalWitness> {
        let (n, k) = (self.params.n, self.params.k);
        let m = m as usize;
        if m + 2 > n {
            return Err(Error::Domain(format!("R x F^{m} does not fit in F^{n}")));
        }
        check_rectangle_range(beta, gamma)?;
        let (rect, _) = rectangle(self.field, beta, gamma)?;
        let set_a = rect.product(&PointSet::full(self.field, m)).pad(n - m - 2);
        let q2 = ExceptionalQuery::new(gamma, 1)?;
        let planar_exceptional = exceptional_set(&rect, &q2)?;

        let fm = LinearSubspace::coordinate(self.field, n, 2..m + 2);
        let big = LinearSubspace::coordinate(self.field, n, 0..m + 2);
        let all: Vec<LinearSubspace> = enumerate_linear(self.field, n, n - k)?.collect();
        let mut thetas = Vec::new();
        for theta in planar_exceptional {
            let t_sub = theta.embed(n, 0).sum(&fm);
            let in_v: Vec<&LinearSubspace> = all.par_iter().filter(|v| projects_within(v, &t_sub, l)).collect();
            let keep: Vec<bool> = in_v
                .par_iter()
                .map(|v| {
                    let fm_drop = (fm.dim() - v.intersection_dim(&fm)) as i64;
                    let big_drop = (big.dim() - v.intersection_dim(&big)) as i64;
                    fm_drop == l && big_drop == l + 1
                })
                .collect();
            let u: Vec<LinearSubspace> = in_v
                .iter()
                .zip(&keep)
                .filter(|(_, &k)| k)
                .map(|(v, _)| (*v).clone())
                .collect();
            thetas.push(ThetaFamily {
                theta,
                v_count: in_v.len(),
                w_count: in_v.len() - u.len(),
                u,
            });
        }
        let claims: Vec<LinearSubspace> = thetas.iter().flat_map(|t| t.u.iter().cloned()).collect();
        self.finish(branch, set_a, claims, thetas)
    }
}

/// Whether the `U_theta` families are pairwise disjoint.
pub fn u_families_disjoint(w: &ExceptionalWitness) -> bool {
    let mut seen = HashSet::new();
    w.theta_families
        .iter()
        .flat_map(|t| t.u.iter())
        .all(|v| seen.insert(v))
}
