use std::fmt;

use num_traits::{Signed, Zero};

use super::exponent::{canonical_split, ExactExponent, Rational};
use crate::error::{domain, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MarstrandType {
    Type1,
    Type2,
    Type3,
    Type4,
}

impl MarstrandType {
    pub fn number(&self) -> u8 {
        match self {
            MarstrandType::Type1 => 1,
            MarstrandType::Type2 => 2,
            MarstrandType::Type3 => 3,
            MarstrandType::Type4 => 4,
        }
    }
}

impl fmt::Display for MarstrandType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// `(a, s; n, k)` with canonical parts `a = m + beta`, `s = l + gamma`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MarstrandParams {
    pub a: Rational,
    pub s: Rational,
    pub n: usize,
    pub k: usize,
    pub m: i64,
    pub beta: Rational,
    pub l: i64,
    pub gamma: Rational,
    pub kind: MarstrandType,
}

/// The four defining conditions, evaluated independently of each other.
pub fn type_conditions(a: Rational, s: Rational, n: usize, k: usize) -> Result<[bool; 4]> {
    check_domain(a, s, n, k)?;
    let (m, beta) = canonical_split(a)?;
    let (l, gamma) = canonical_split(s)?;
    Ok(conditions(a, s, n as i64, k as i64, m, beta, l, gamma))
}

fn check_domain(a: Rational, s: Rational, n: usize, k: usize) -> Result<()> {
    if k < 1 || k >= n {
        return Err(domain(format!("M needs 1 <= k < n, got n={n} k={k}")));
    }
    if !a.is_positive() || a > Rational::from_integer(n as i64) {
        return Err(domain(format!("M needs a in (0, n], got a={a}")));
    }
    if !s.is_positive() {
        return Err(domain(format!("M needs s > 0, got s={s}")));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn conditions(
    a: Rational,
    s: Rational,
    n: i64,
    k: i64,
    m: i64,
    beta: Rational,
    l: i64,
    gamma: Rational,
) -> [bool; 4] {
    let cap = a.min(Rational::from_integer(k));
    let inside = s <= cap;
    [
        s > cap,
        inside && l < m && m <= n + l - k && gamma > beta,
        inside && l <= m && m < n + l - k && gamma <= beta,
        s <= a - Rational::from_integer(n - k),
    ]
}

impl MarstrandParams {
    pub fn new(a: Rational, s: Rational, n: usize, k: usize) -> Result<Self> {
        check_domain(a, s, n, k)?;
        let (m, beta) = canonical_split(a)?;
        let (l, gamma) = canonical_split(s)?;
        let c = conditions(a, s, n as i64, k as i64, m, beta, l, gamma);
        let hits: Vec<usize> = (0..4).filter(|&i| c[i]).collect();
        let kind = match hits.as_slice() {
            [0] => MarstrandType::Type1,
            [1] => MarstrandType::Type2,
            [2] => MarstrandType::Type3,
            [3] => MarstrandType::Type4,
            _ => {
                return Err(domain(format!(
                    "(a,s;n,k)=({a},{s};{n},{k}) matches types {hits:?}"
                )))
            }
        };
        Ok(MarstrandParams { a, s, n, k, m, beta, l, gamma, kind })
    }

    fn base(&self) -> i64 {
        (self.k * (self.n - self.k)) as i64
    }

    /// Type 2 formula without the outer type test.
    pub fn type2_value(&self) -> Rational {
        let k = self.k as i64;
        let clamp = (self.gamma * 2 - (self.beta + 1)).max(Rational::zero());
        Rational::from_integer(self.base() - (self.m - self.l) * (k - self.l)) + clamp
    }

    /// Type 3 formula without the outer type test.
    pub fn type3_value(&self, clamped: bool) -> Rational {
        let k = self.k as i64;
        let raw = self.gamma * 2 - self.beta;
        let tail = if clamped { raw.max(Rational::zero()) } else { raw };
        Rational::from_integer(self.base() - (self.m + 1 - self.l) * (k - self.l)) + tail
    }

    pub fn index(&self) -> ExactExponent {
        self.index_with(true)
    }

    fn index_with(&self, clamped: bool) -> ExactExponent {
        match self.kind {
            MarstrandType::Type1 => ExactExponent::from(self.base()),
            MarstrandType::Type2 => self.type2_value().into(),
            MarstrandType::Type3 => self.type3_value(clamped).into(),
            MarstrandType::Type4 => ExactExponent::NegInfinity,
        }
    }
}

/// M(a,s;n,k); `-inf` for Type 4.
pub fn marstrand_index(a: Rational, s: Rational, n: usize, k: usize) -> Result<ExactExponent> {
    Ok(MarstrandParams::new(a, s, n, k)?.index())
}

/// M with the `max{., 0}` clamp removed from the Type 3 formula. Only used as a
/// deliberately wrong variant for negative controls.
pub fn marstrand_index_unclamped(a: Rational, s: Rational, n: usize, k: usize) -> Result<ExactExponent> {
    Ok(MarstrandParams::new(a, s, n, k)?.index_with(false))
}

pub fn classify_marstrand_type(a: Rational, s: Rational, n: usize, k: usize) -> Result<MarstrandType> {
    Ok(MarstrandParams::new(a, s, n, k)?.kind)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn index_examples() {
        assert_eq!(marstrand_index(q(1, 1), q(3, 4), 2, 1).unwrap(), q(1, 2).into());
        assert_eq!(marstrand_index(q(3, 1), q(1, 1), 3, 1).unwrap(), ExactExponent::NegInfinity);
        assert_eq!(marstrand_index(q(5, 2), q(3, 2), 4, 2).unwrap(), q(5, 2).into());
    }

    #[test]
    fn type_examples() {
        assert_eq!(classify_marstrand_type(q(1, 2), q(2, 1), 3, 2).unwrap(), MarstrandType::Type1);
        assert_eq!(classify_marstrand_type(q(1, 1), q(3, 4), 2, 1).unwrap(), MarstrandType::Type3);
        assert_eq!(classify_marstrand_type(q(5, 2), q(7, 4), 4, 2).unwrap(), MarstrandType::Type2);
    }

    #[test]
    fn canonical_parts_recorded() {
        let p = MarstrandParams::new(q(5, 2), q(3, 2), 4, 2).unwrap();
        assert_eq!((p.m, p.beta, p.l, p.gamma), (2, q(1, 2), 1, q(1, 2)));
        assert_eq!(p.kind, MarstrandType::Type3);
    }

    #[test]
    fn domain_errors() {
        assert!(marstrand_index(q(0, 1), q(1, 1), 2, 1).is_err());
        assert!(marstrand_index(q(3, 1), q(1, 1), 2, 1).is_err());
        assert!(marstrand_index(q(1, 1), q(0, 1), 2, 1).is_err());
        assert!(marstrand_index(q(1, 1), q(1, 1), 2, 2).is_err());
    }

    #[test]
    fn unclamped_differs_only_below_half_beta() {
        // Type 3 with 2 gamma < beta: a = 1, s = 1/4.
        let clamped = marstrand_index(q(1, 1), q(1, 4), 2, 1).unwrap();
        let raw = marstrand_index_unclamped(q(1, 1), q(1, 4), 2, 1).unwrap();
        assert_eq!(clamped, q(0, 1).into());
        assert_eq!(raw, q(-1, 2).into());
    }
}
