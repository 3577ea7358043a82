use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::Signed;

use crate::error::{domain, Error, Result};

pub type Rational = Ratio<i64>;

/// Parse `"n"` or `"num/den"`; anything with a decimal point or exponent is rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("rationals must be num/den, got {text:?}"));
    if t.is_empty() || t.contains(['.', 'e', 'E']) {
        return Err(bad());
    }
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num = i64::from_str(num).map_err(|_| bad())?;
    let den = i64::from_str(den).map_err(|_| bad())?;
    if den == 0 {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Write `x > 0` as `d + frac` with `d` a nonnegative integer and `frac` in (0, 1].
/// Integers split as `(x - 1, 1)`.
pub fn canonical_split(x: Rational) -> Result<(i64, Rational)> {
    if !x.is_positive() {
        return Err(domain(format!("canonical split of nonpositive {x}")));
    }
    let d = x.ceil().to_integer() - 1;
    Ok((d, x - Rational::from_integer(d)))
}

/// A rational exponent or negative infinity (the empty-set exponent).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExactExponent {
    NegInfinity,
    Finite(Rational),
}

impl ExactExponent {
    pub fn finite(&self) -> Option<Rational> {
        match self {
            ExactExponent::Finite(r) => Some(*r),
            ExactExponent::NegInfinity => None,
        }
    }

    pub fn is_neg_infinity(&self) -> bool {
        matches!(self, ExactExponent::NegInfinity)
    }
}

impl From<Rational> for ExactExponent {
    fn from(r: Rational) -> Self {
        ExactExponent::Finite(r)
    }
}

impl From<i64> for ExactExponent {
    fn from(n: i64) -> Self {
        ExactExponent::Finite(Rational::from_integer(n))
    }
}

impl PartialOrd for ExactExponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactExponent {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExactExponent::*;
        match (self, other) {
            (NegInfinity, NegInfinity) => Ordering::Equal,
            (NegInfinity, Finite(_)) => Ordering::Less,
            (Finite(_), NegInfinity) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl Add for ExactExponent {
    type Output = ExactExponent;
    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (ExactExponent::Finite(a), ExactExponent::Finite(b)) => ExactExponent::Finite(a + b),
            _ => ExactExponent::NegInfinity,
        }
    }
}

impl Add<Rational> for ExactExponent {
    type Output = ExactExponent;
    fn add(self, rhs: Rational) -> Self {
        self + ExactExponent::Finite(rhs)
    }
}

impl fmt::Display for ExactExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactExponent::NegInfinity => write!(f, "-inf"),
            ExactExponent::Finite(r) => write!(f, "{}", fmt_rational(*r)),
        }
    }
}

/// Always `num/den`, including integers (`2/1`), so output columns parse uniformly.
pub fn fmt_rational(r: Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn split_examples() {
        assert_eq!(canonical_split(q(3, 2)).unwrap(), (1, q(1, 2)));
        assert_eq!(canonical_split(q(2, 1)).unwrap(), (1, q(1, 1)));
        assert_eq!(canonical_split(q(1, 3)).unwrap(), (0, q(1, 3)));
        assert!(canonical_split(q(0, 1)).is_err());
        assert!(canonical_split(q(-1, 2)).is_err());
    }

    #[test]
    fn parse_rules() {
        assert_eq!(parse_rational("1/2").unwrap(), q(1, 2));
        assert_eq!(parse_rational(" 3 ").unwrap(), q(3, 1));
        assert_eq!(parse_rational("-4/6").unwrap(), q(-2, 3));
        let err = parse_rational("0.5").unwrap_err();
        assert!(err.to_string().contains("rationals must be num/den"));
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn neg_infinity_is_bottom() {
        let ni = ExactExponent::NegInfinity;
        assert!(ni < ExactExponent::from(-1000));
        assert_eq!(ni + ExactExponent::from(5), ni);
        assert_eq!(ExactExponent::from(2) + q(1, 2), ExactExponent::Finite(q(5, 2)));
        assert_eq!(ni.to_string(), "-inf");
        assert_eq!(ExactExponent::from(q(5, 4)).to_string(), "5/4");
        assert_eq!(ExactExponent::from(3).to_string(), "3/1");
    }
}
