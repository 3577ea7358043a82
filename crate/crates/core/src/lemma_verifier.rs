//! Exhaustive rational-grid checks of the recursion inequalities and index properties.
//!
//! Each check walks every grid witness of its constraint block, evaluates both
//! sides exactly and reports the witnesses where the inequality fails. Dependent
//! variables (`t2 = t - t1`, `v = F(s1,t2;2,1) - u`, ...) are derived, never
//! filtered for, so an empty report always comes with a nonzero `checked` count.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::indices::{
    canonical_split, furstenberg_index, marstrand_index, marstrand_index_unclamped, type_conditions,
    ExactExponent, Rational,
};

/// Slope allowed in `F(s - theta, t) >= F(s, t) - C theta`.
pub const LEFT_LIPSCHITZ_C: i64 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LemmaId {
    RecursionF1,
    RecursionF2,
    RecursionM,
    EasyBound,
    TLipschitz,
    LeftLipschitz,
    DiagonalMonotone,
    EasyMUpper,
    EasyMLower,
    TypePartition,
    ClosedFormF,
    ClosedFormM,
}

impl LemmaId {
    pub fn name(&self) -> &'static str {
        match self {
            LemmaId::RecursionF1 => "recursion_f1",
            LemmaId::RecursionF2 => "recursion_f2",
            LemmaId::RecursionM => "recursion_m",
            LemmaId::EasyBound => "easy_bound",
            LemmaId::TLipschitz => "t_lipschitz",
            LemmaId::LeftLipschitz => "left_lipschitz",
            LemmaId::DiagonalMonotone => "diagonal_monotone",
            LemmaId::EasyMUpper => "easy_m_upper",
            LemmaId::EasyMLower => "easy_m_lower",
            LemmaId::TypePartition => "type_partition",
            LemmaId::ClosedFormF => "closed_form_f",
            LemmaId::ClosedFormM => "closed_form_m",
        }
    }

    fn fields(&self) -> &'static [&'static str] {
        match self {
            LemmaId::RecursionF1 => &["s", "t", "t1", "t2", "s1", "s2", "u", "v"],
            LemmaId::RecursionF2 => &["s", "t", "t1", "t2", "s1"],
            LemmaId::RecursionM => &["a", "s", "a1", "s1"],
            LemmaId::EasyBound | LemmaId::ClosedFormF => &["s", "t"],
            LemmaId::TLipschitz => &["s", "t1", "t2"],
            LemmaId::LeftLipschitz => &["s", "theta", "t"],
            LemmaId::DiagonalMonotone => &["a", "s", "theta"],
            LemmaId::EasyMUpper | LemmaId::EasyMLower | LemmaId::TypePartition | LemmaId::ClosedFormM => {
                &["a", "s"]
            }
        }
    }

    fn relation(&self) -> Relation {
        match self {
            LemmaId::RecursionF1
            | LemmaId::RecursionF2
            | LemmaId::EasyBound
            | LemmaId::LeftLipschitz
            | LemmaId::EasyMLower => Relation::Ge,
            LemmaId::RecursionM | LemmaId::TLipschitz | LemmaId::DiagonalMonotone | LemmaId::EasyMUpper => {
                Relation::Le
            }
            LemmaId::TypePartition | LemmaId::ClosedFormF | LemmaId::ClosedFormM => Relation::Eq,
        }
    }

    const ALL: [LemmaId; 12] = [
        LemmaId::RecursionF1,
        LemmaId::RecursionF2,
        LemmaId::RecursionM,
        LemmaId::EasyBound,
        LemmaId::TLipschitz,
        LemmaId::LeftLipschitz,
        LemmaId::DiagonalMonotone,
        LemmaId::EasyMUpper,
        LemmaId::EasyMLower,
        LemmaId::TypePartition,
        LemmaId::ClosedFormF,
        LemmaId::ClosedFormM,
    ];
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LemmaId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        LemmaId::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| domain(format!("unknown lemma {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Relation {
    Ge,
    Le,
    Eq,
}

/// A deliberately falsified variant of the checks, for negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mutation {
    #[default]
    None,
    /// Make the inequality stricter by `delta` (raise the right side of `>=`, lower it for `<=`).
    Tighten(Rational),
    /// Reverse the direction of the inequality.
    Flip,
    /// Evaluate M without the `max{., 0}` clamp in its Type 3 formula.
    UnclampedType3,
}

/// Step and dimension pairs for a grid run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub step: Rational,
    pub dims: Vec<(usize, usize)>,
}

impl GridSpec {
    pub fn new(step: Rational, dims: Vec<(usize, usize)>) -> Result<Self> {
        if !step.is_positive() {
            return Err(domain(format!("grid step must be positive, got {step}")));
        }
        Ok(GridSpec { step, dims })
    }

    pub fn interval(&self, iv: Interval) -> Vec<Rational> {
        iv.grid(self.step)
    }
}

/// A rational interval with either end open or closed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl Interval {
    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Interval { lo, hi, lo_open: false, hi_open: false }
    }

    pub fn left_open(lo: Rational, hi: Rational) -> Self {
        Interval { lo, hi, lo_open: true, hi_open: false }
    }

    pub fn right_open(lo: Rational, hi: Rational) -> Self {
        Interval { lo, hi, lo_open: false, hi_open: true }
    }

    /// All multiples of `step` lying in the interval, ascending.
    pub fn grid(&self, step: Rational) -> Vec<Rational> {
        if self.hi < self.lo {
            return Vec::new();
        }
        let first = (self.lo / step).ceil().to_integer();
        let last = (self.hi / step).floor().to_integer();
        (first..=last)
            .map(|i| step * Rational::from_integer(i))
            .filter(|x| !(self.lo_open && *x == self.lo) && !(self.hi_open && *x == self.hi))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Deficit {
    Finite(Rational),
    Infinite,
}

impl fmt::Display for Deficit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Deficit::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Deficit::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CounterexampleReport {
    pub lemma: LemmaId,
    pub n: usize,
    pub k: usize,
    pub witness: Vec<(&'static str, Rational)>,
    pub lhs: ExactExponent,
    pub rhs: ExactExponent,
    pub deficit: Deficit,
}

impl CounterexampleReport {
    pub fn witness_string(&self) -> String {
        self.witness
            .iter()
            .map(|(name, v)| format!("{name}={}/{}", v.numer(), v.denom()))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn value(&self, name: &str) -> Option<Rational> {
        self.witness.iter().find(|(n, _)| *n == name).map(|(_, v)| *v)
    }

    pub const CSV_HEADER: [&'static str; 7] = ["lemma", "n", "k", "witness", "lhs", "rhs", "deficit"];

    pub fn csv_record(&self) -> [String; 7] {
        [
            self.lemma.to_string(),
            self.n.to_string(),
            self.k.to_string(),
            self.witness_string(),
            self.lhs.to_string(),
            self.rhs.to_string(),
            self.deficit.to_string(),
        ]
    }
}

/// Number of witnesses examined and the violations among them, sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckOutcome {
    pub checked: u64,
    pub counterexamples: Vec<CounterexampleReport>,
}

impl CheckOutcome {
    pub fn is_clean(&self) -> bool {
        self.counterexamples.is_empty()
    }

    fn merge(mut self, other: CheckOutcome) -> CheckOutcome {
        self.checked += other.checked;
        self.counterexamples.extend(other.counterexamples);
        self
    }

    fn finish(mut self) -> CheckOutcome {
        self.counterexamples.sort();
        self
    }
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn fin(r: Rational) -> ExactExponent {
    ExactExponent::Finite(r)
}

fn f_idx(s: Rational, t: Rational, n: usize, k: usize) -> Result<Rational> {
    Ok(furstenberg_index(s, t, n, k)?.finite().expect("F is finite"))
}

fn m_idx(a: Rational, s: Rational, n: usize, k: usize, unclamped: bool) -> Result<ExactExponent> {
    if unclamped {
        marstrand_index_unclamped(a, s, n, k)
    } else {
        marstrand_index(a, s, n, k)
    }
}

fn easy_m_bounds(a: Rational, s: Rational, n: usize, k: usize) -> Result<(Rational, Rational)> {
    let (m, beta) = canonical_split(a)?;
    let (l, gamma) = canonical_split(s)?;
    let base = (k * (n - k)) as i64;
    let ki = k as i64;
    let upper = q(base - (m - l) * (ki - l)) + (gamma * 2 - (beta + 1)).max(Rational::zero());
    let lower = q(base - (m + 1 - l) * (ki - l)) + (gamma * 2 - beta).max(Rational::zero());
    Ok((lower, upper))
}

/// Both sides of one instance, evaluated from the witness values in field order.
pub fn evaluate(lemma: LemmaId, n: usize, k: usize, w: &[Rational]) -> Result<(ExactExponent, ExactExponent)> {
    eval(lemma, n, k, w, false)
}

/// Recompute both sides of a reported instance from its witness alone.
pub fn reevaluate(report: &CounterexampleReport) -> Result<(ExactExponent, ExactExponent)> {
    let values: Vec<Rational> = report.witness.iter().map(|(_, v)| *v).collect();
    evaluate(report.lemma, report.n, report.k, &values)
}

fn eval(lemma: LemmaId, n: usize, k: usize, w: &[Rational], unclamped: bool) -> Result<(ExactExponent, ExactExponent)> {
    if w.len() != lemma.fields().len() {
        return Err(domain(format!("{lemma} takes {} witness values", lemma.fields().len())));
    }
    let kn = q((k * (n - k)) as i64);
    Ok(match lemma {
        LemmaId::RecursionF1 => {
            let (s, t, t1, _t2, _s1, s2, u, v) = (w[0], w[1], w[2], w[3], w[4], w[5], w[6], w[7]);
            let inner = f_idx(s2, t1 + v, k, k - 1)?.max(s2 + v);
            (fin(u + inner), fin(f_idx(s, t, k + 1, k)?))
        }
        LemmaId::RecursionF2 => {
            let (s, t, t1, t2, s1) = (w[0], w[1], w[2], w[3], w[4]);
            let tail = (f_idx(s, t2, k + 1, k)? - s1).max(Rational::zero());
            (fin(f_idx(s1, t1, n - 1, k)? + tail), fin(f_idx(s, t, n, k)?))
        }
        LemmaId::RecursionM => {
            let (a, s, a1, s1) = (w[0], w[1], w[2], w[3]);
            let lhs = m_idx(a1, s1, n - 1, k, unclamped)? + m_idx(s1 + a - a1, s, k + 1, k, unclamped)?;
            (lhs, m_idx(a, s, n, k, unclamped)?)
        }
        LemmaId::EasyBound => {
            let (s, t) = (w[0], w[1]);
            (fin(f_idx(s, t, n, k)?), fin(s + (t - kn).max(Rational::zero())))
        }
        LemmaId::TLipschitz => {
            let (s, t1, t2) = (w[0], w[1], w[2]);
            (fin(f_idx(s, t1 + t2, n, k)?), fin(t1 + f_idx(s, t2, n, k)?))
        }
        LemmaId::LeftLipschitz => {
            let (s, theta, t) = (w[0], w[1], w[2]);
            let rhs = f_idx(s, t, n, k)? - theta * q(LEFT_LIPSCHITZ_C);
            (fin(f_idx(s - theta, t, n, k)?), fin(rhs))
        }
        LemmaId::DiagonalMonotone => {
            let (a, s, theta) = (w[0], w[1], w[2]);
            (m_idx(a - theta, s - theta, n, k, unclamped)?, m_idx(a, s, n, k, unclamped)?)
        }
        LemmaId::EasyMUpper => {
            let (a, s) = (w[0], w[1]);
            (m_idx(a, s, n, k, unclamped)?, fin(easy_m_bounds(a, s, n, k)?.1))
        }
        LemmaId::EasyMLower => {
            let (a, s) = (w[0], w[1]);
            (m_idx(a, s, n, k, unclamped)?, fin(easy_m_bounds(a, s, n, k)?.0))
        }
        LemmaId::TypePartition => {
            let hits = type_conditions(w[0], w[1], n, k)?.iter().filter(|&&b| b).count();
            (ExactExponent::from(hits as i64), ExactExponent::from(1))
        }
        LemmaId::ClosedFormF => {
            let (s, t) = (w[0], w[1]);
            let closed = (s + t).min(s * Rational::new(3, 2) + t / 2).min(s + 1);
            (fin(f_idx(s, t, 2, 1)?), fin(closed))
        }
        LemmaId::ClosedFormM => {
            let (a, s) = (w[0], w[1]);
            let one = q(1);
            let display = if s > one.min(a) {
                fin(one)
            } else if s > a - 1 {
                fin((s * 2 - a).max(Rational::zero()))
            } else {
                ExactExponent::NegInfinity
            };
            (m_idx(a, s, 2, 1, unclamped)?, display)
        }
    })
}

fn gap(big: ExactExponent, small: ExactExponent) -> Deficit {
    match (big, small) {
        (ExactExponent::Finite(b), ExactExponent::Finite(s)) => Deficit::Finite(b - s),
        _ => Deficit::Infinite,
    }
}

/// Collects the verdicts for one batch of witnesses.
struct Sink {
    mutation: Mutation,
    out: CheckOutcome,
}

impl Sink {
    fn new(mutation: Mutation) -> Self {
        Sink { mutation, out: CheckOutcome::default() }
    }

    fn check(&mut self, lemma: LemmaId, n: usize, k: usize, w: &[Rational]) {
        let unclamped = self.mutation == Mutation::UnclampedType3;
        let (lhs, rhs) = eval(lemma, n, k, w, unclamped)
            .unwrap_or_else(|e| panic!("{lemma} witness {w:?} left the domain: {e}"));
        self.out.checked += 1;
        let mut rel = lemma.relation();
        let mut target = rhs;
        match self.mutation {
            Mutation::Tighten(delta) => {
                target = match rel {
                    Relation::Le => rhs + (-delta),
                    _ => rhs + delta,
                }
            }
            Mutation::Flip => {
                rel = match rel {
                    Relation::Ge => Relation::Le,
                    Relation::Le => Relation::Ge,
                    Relation::Eq => Relation::Eq,
                }
            }
            Mutation::None | Mutation::UnclampedType3 => {}
        }
        let deficit = match rel {
            Relation::Ge if lhs < target => Some(gap(target, lhs)),
            Relation::Le if lhs > target => Some(gap(lhs, target)),
            Relation::Eq if lhs != target => Some(gap(lhs.max(target), lhs.min(target))),
            _ => None,
        };
        if let Some(deficit) = deficit {
            self.out.counterexamples.push(CounterexampleReport {
                lemma,
                n,
                k,
                witness: lemma.fields().iter().copied().zip(w.iter().copied()).collect(),
                lhs,
                rhs,
                deficit,
            });
        }
    }
}

fn run_par<T, F>(items: Vec<T>, mutation: Mutation, body: F) -> CheckOutcome
where
    T: Sync,
    F: Fn(&T, &mut Sink) + Sync,
{
    items
        .par_iter()
        .map(|item| {
            let mut sink = Sink::new(mutation);
            body(item, &mut sink);
            sink.out
        })
        .reduce(CheckOutcome::default, CheckOutcome::merge)
        .finish()
}

/// `u + max{F(s2, t1+v; k, k-1), s2 + v} >= F(s, t; k+1, k)`.
pub fn check_recursion_f1(k: usize, grid: &GridSpec) -> Result<CheckOutcome> {
    check_recursion_f1_with(k, grid, Mutation::None)
}

pub fn check_recursion_f1_with(k: usize, grid: &GridSpec, mutation: Mutation) -> Result<CheckOutcome> {
    if k < 2 {
        return Err(domain(format!("recursion_f1 needs k >= 2, got {k}")));
    }
    let step = grid.step;
    let ki = k as i64;
    let mut outer = Vec::new();
    for s in Interval::closed(q(0), q(ki)).grid(step) {
        for t in Interval::closed(q(0), q(ki + 1)).grid(step) {
            outer.push((s, t));
        }
    }
    Ok(run_par(outer, mutation, |&(s, t), sink| {
        for t1 in Interval::closed(q(0), q(ki - 1)).grid(step) {
            let t2 = t - t1;
            if t2.is_negative() || t2 > q(2) {
                continue;
            }
            for s1 in Interval::closed(q(0), q(1).min(s)).grid(step) {
                let s2 = s - s1;
                // F(s2, .; k, k-1) is only defined for s2 <= k-1.
                if s2 > q(ki - 1) {
                    continue;
                }
                let f_small = f_idx(s1, t2, 2, 1).expect("admissible");
                for u in Interval::closed(s1, q(1)).grid(step) {
                    let v = f_small - u;
                    if v.is_negative() || v > q(1) {
                        continue;
                    }
                    sink.check(LemmaId::RecursionF1, k + 1, k, &[s, t, t1, t2, s1, s2, u, v]);
                }
            }
        }
    }))
}

/// `F(s1, t1; n-1, k) + max{F(s, t2; k+1, k) - s1, 0} >= F(s, t; n, k)`.
pub fn check_recursion_f2(n: usize, k: usize, grid: &GridSpec) -> Result<CheckOutcome> {
    check_recursion_f2_with(n, k, grid, Mutation::None)
}

pub fn check_recursion_f2_with(n: usize, k: usize, grid: &GridSpec, mutation: Mutation) -> Result<CheckOutcome> {
    if k < 1 || n < k + 2 {
        return Err(domain(format!("recursion_f2 needs n >= k+2, k >= 1; got n={n} k={k}")));
    }
    let step = grid.step;
    let (ni, ki) = (n as i64, k as i64);
    let mut outer = Vec::new();
    for s in Interval::closed(q(0), q(ki)).grid(step) {
        for t in Interval::closed(q(0), q((ki + 1) * (ni - ki))).grid(step) {
            outer.push((s, t));
        }
    }
    Ok(run_par(outer, mutation, |&(s, t), sink| {
        for t1 in Interval::closed(q(0), q((ki + 1) * (ni - ki - 1))).grid(step) {
            let t2 = t - t1;
            if t2.is_negative() || t2 > q(ki + 1) {
                continue;
            }
            for s1 in Interval::closed(s, q(ki)).grid(step) {
                sink.check(LemmaId::RecursionF2, n, k, &[s, t, t1, t2, s1]);
            }
        }
    }))
}

/// `M(a1, s1; n-1, k) + M(s1 + a - a1, s; k+1, k) <= M(a, s; n, k)`.
pub fn check_recursion_m(n: usize, k: usize, grid: &GridSpec) -> Result<CheckOutcome> {
    check_recursion_m_with(n, k, grid, Mutation::None)
}

pub fn check_recursion_m_with(n: usize, k: usize, grid: &GridSpec, mutation: Mutation) -> Result<CheckOutcome> {
    if k < 1 || n < k + 2 {
        return Err(domain(format!("recursion_m needs n >= k+2, k >= 1; got n={n} k={k}")));
    }
    let step = grid.step;
    let (ni, ki) = (n as i64, k as i64);
    let mut outer = Vec::new();
    for a in Interval::left_open(q(0), q(ni)).grid(step) {
        let lo = (a - q(ni - ki)).max(q(0));
        for s in Interval::left_open(lo, a.min(q(ki))).grid(step) {
            outer.push((a, s));
        }
    }
    Ok(run_par(outer, mutation, |&(a, s), sink| {
        let a1_range = Interval::closed((a - 1).max(q(0)), q(ni - 1).min(a));
        for a1 in a1_range.grid(step) {
            // M needs a positive first argument.
            if a1.is_zero() {
                continue;
            }
            for s1 in Interval::left_open(q(0), s).grid(step) {
                sink.check(LemmaId::RecursionM, n, k, &[a, s, a1, s1]);
            }
        }
    }))
}

/// The six index property families on every `(n, k)` in the grid.
pub fn check_index_properties(grid: &GridSpec) -> Result<CheckOutcome> {
    check_index_properties_with(grid, Mutation::None)
}

pub fn check_index_properties_with(grid: &GridSpec, mutation: Mutation) -> Result<CheckOutcome> {
    let mut total = CheckOutcome::default();
    for &(n, k) in &grid.dims {
        if k < 1 || k >= n {
            return Err(domain(format!("index properties need 1 <= k < n, got n={n} k={k}")));
        }
        total = total
            .merge(f_properties(n, k, grid.step, mutation))
            .merge(m_properties(n, k, grid.step, mutation));
    }
    Ok(total.finish())
}

fn f_properties(n: usize, k: usize, step: Rational, mutation: Mutation) -> CheckOutcome {
    let (ni, ki) = (n as i64, k as i64);
    let t_max = q((ki + 1) * (ni - ki));
    let ss = Interval::closed(q(0), q(ki)).grid(step);
    let ts = Interval::closed(q(0), t_max).grid(step);
    run_par(ss, mutation, |&s, sink| {
        for &t in &ts {
            sink.check(LemmaId::EasyBound, n, k, &[s, t]);
        }
        for &t2 in &ts {
            for t1 in Interval::closed(q(0), t_max - t2).grid(step) {
                sink.check(LemmaId::TLipschitz, n, k, &[s, t1, t2]);
            }
        }
        if s.is_positive() {
            let (_, sigma) = canonical_split(s).expect("s > 0");
            for theta in Interval::right_open(q(0), sigma).grid(step) {
                for &t in &ts {
                    sink.check(LemmaId::LeftLipschitz, n, k, &[s, theta, t]);
                }
            }
        }
    })
}

fn m_properties(n: usize, k: usize, step: Rational, mutation: Mutation) -> CheckOutcome {
    let (ni, ki) = (n as i64, k as i64);
    let as_ = Interval::left_open(q(0), q(ni)).grid(step);
    let ss = Interval::left_open(q(0), q(ni)).grid(step);
    run_par(as_, mutation, |&a, sink| {
        for &s in &ss {
            sink.check(LemmaId::TypePartition, n, k, &[a, s]);
            for theta in Interval::right_open(q(0), a.min(s)).grid(step) {
                sink.check(LemmaId::DiagonalMonotone, n, k, &[a, s, theta]);
            }
            if s > a - q(ni - ki) && s <= a.min(q(ki)) {
                sink.check(LemmaId::EasyMUpper, n, k, &[a, s]);
                sink.check(LemmaId::EasyMLower, n, k, &[a, s]);
            }
        }
    })
}

/// F(s,t;2,1) and M(a,s;2,1) against their closed forms.
pub fn check_closed_form_2d(step: Rational) -> Result<CheckOutcome> {
    check_closed_form_2d_with(step, Mutation::None)
}

pub fn check_closed_form_2d_with(step: Rational, mutation: Mutation) -> Result<CheckOutcome> {
    if !step.is_positive() {
        return Err(domain(format!("grid step must be positive, got {step}")));
    }
    let ss = Interval::left_open(q(0), q(1)).grid(step);
    let ts = Interval::closed(q(0), q(2)).grid(step);
    let f = run_par(ss, mutation, |&s, sink| {
        for &t in &ts {
            sink.check(LemmaId::ClosedFormF, 2, 1, &[s, t]);
        }
    });
    let as_ = Interval::left_open(q(0), q(2)).grid(step);
    let ms = Interval::left_open(q(0), q(2)).grid(step);
    let m = run_par(as_, mutation, |&a, sink| {
        for &s in &ms {
            sink.check(LemmaId::ClosedFormM, 2, 1, &[a, s]);
        }
    });
    Ok(f.merge(m).finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn interval_grid_respects_open_ends() {
        let g = Interval::left_open(r(0, 1), r(1, 1)).grid(r(1, 4));
        assert_eq!(g, vec![r(1, 4), r(1, 2), r(3, 4), r(1, 1)]);
        let g = Interval::right_open(r(0, 1), r(1, 2)).grid(r(1, 4));
        assert_eq!(g, vec![r(0, 1), r(1, 4)]);
        assert!(Interval::closed(r(1, 1), r(0, 1)).grid(r(1, 4)).is_empty());
    }

    #[test]
    fn lemma_names_roundtrip() {
        for l in LemmaId::ALL {
            assert_eq!(l.name().parse::<LemmaId>().unwrap(), l);
        }
    }

    #[test]
    fn f1_small_grid_is_clean_and_nonvacuous() {
        let g = GridSpec::new(r(1, 2), vec![]).unwrap();
        let out = check_recursion_f1(2, &g).unwrap();
        assert!(out.checked > 0);
        assert!(out.is_clean(), "{:?}", out.counterexamples.first());
    }

    #[test]
    fn tighten_finds_equality_cases() {
        let g = GridSpec::new(r(1, 2), vec![]).unwrap();
        let out = check_recursion_f1_with(2, &g, Mutation::Tighten(r(1, 10))).unwrap();
        assert!(!out.is_clean());
        for c in &out.counterexamples {
            assert!(matches!(c.deficit, Deficit::Finite(d) if d.is_positive()));
        }
    }

    #[test]
    fn closed_form_coarse() {
        assert!(check_closed_form_2d(r(1, 4)).unwrap().is_clean());
    }
}
