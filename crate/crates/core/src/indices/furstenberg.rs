use num_traits::{Signed, Zero};

use super::exponent::{canonical_split, ExactExponent, Rational};
use crate::error::{Error, Result};

/// Which branch of the four-case definition applies, with its canonical parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FurstenbergCase {
    /// `s = 0`.
    ZeroS,
    /// `s = d + sigma` and `t <= (k-d-1)(n-k)`.
    SmallT { d: i64, sigma: Rational },
    /// `t = (k-d-1)(n-k) + (d+2)m + tau` with `tau` in (0, 2].
    Generic { d: i64, sigma: Rational, m: i64, tau: Rational },
    /// Same expression with `tau` in (2, d+2].
    Saturated { d: i64, sigma: Rational, m: i64, tau: Rational },
}

/// An admissible `(s, t; n, k)` tuple and its case decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FurstenbergParams {
    pub s: Rational,
    pub t: Rational,
    pub n: usize,
    pub k: usize,
    pub case: FurstenbergCase,
}

impl FurstenbergParams {
    pub fn new(s: Rational, t: Rational, n: usize, k: usize) -> Result<Self> {
        let inadmissible = |why: &str| {
            Error::Inadmissible(format!("(s,t;n,k)=({s},{t};{n},{k}): {why}"))
        };
        if k < 1 || k >= n {
            return Err(inadmissible("need 1 <= k < n"));
        }
        let (ni, ki) = (n as i64, k as i64);
        if s.is_negative() || s > Rational::from_integer(ki) {
            return Err(inadmissible("need 0 <= s <= k"));
        }
        if t.is_negative() || t > Rational::from_integer((ki + 1) * (ni - ki)) {
            return Err(inadmissible("need 0 <= t <= (k+1)(n-k)"));
        }
        let case = if s.is_zero() {
            FurstenbergCase::ZeroS
        } else {
            let (d, sigma) = canonical_split(s)?;
            let floor_t = Rational::from_integer((ki - d - 1) * (ni - ki));
            if t <= floor_t {
                FurstenbergCase::SmallT { d, sigma }
            } else {
                let rest = t - floor_t;
                let width = Rational::from_integer(d + 2);
                let m = (rest / width).ceil().to_integer() - 1;
                let tau = rest - width * Rational::from_integer(m);
                debug_assert!(m >= 0 && m < ni - ki);
                if tau <= Rational::from_integer(2) {
                    FurstenbergCase::Generic { d, sigma, m, tau }
                } else {
                    FurstenbergCase::Saturated { d, sigma, m, tau }
                }
            }
        };
        Ok(FurstenbergParams { s, t, n, k, case })
    }

    pub fn index(&self) -> Rational {
        let one = Rational::from_integer(1);
        match self.case {
            FurstenbergCase::ZeroS => {
                let excess = self.t - Rational::from_integer((self.k * (self.n - self.k)) as i64);
                excess.max(Rational::zero())
            }
            FurstenbergCase::SmallT { .. } => self.s,
            FurstenbergCase::Generic { sigma, m, tau, .. } => {
                let half = (sigma + tau) / Rational::from_integer(2);
                self.s + Rational::from_integer(m) + tau.min(half).min(one)
            }
            FurstenbergCase::Saturated { m, .. } => self.s + Rational::from_integer(m) + one,
        }
    }
}

/// F(s,t;n,k) for an admissible tuple. Never `-inf`.
pub fn furstenberg_index(s: Rational, t: Rational, n: usize, k: usize) -> Result<ExactExponent> {
    Ok(ExactExponent::Finite(FurstenbergParams::new(s, t, n, k)?.index()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn fi(s: Rational, t: Rational, n: usize, k: usize) -> Rational {
        furstenberg_index(s, t, n, k).unwrap().finite().unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(fi(q(1, 2), q(1, 1), 2, 1), q(5, 4));
        assert_eq!(fi(q(0, 1), q(2, 1), 2, 1), q(1, 1));
        assert_eq!(fi(q(2, 1), q(3, 1), 3, 2), q(3, 1));
    }

    #[test]
    fn case_ladder_for_2_3_3_2() {
        // s = 1 + 1, floor_t = 0, t = 3m + tau -> m = 0, tau = 3 in (2, 3].
        let p = FurstenbergParams::new(q(2, 1), q(3, 1), 3, 2).unwrap();
        assert_eq!(
            p.case,
            FurstenbergCase::Saturated { d: 1, sigma: q(1, 1), m: 0, tau: q(3, 1) }
        );
    }

    #[test]
    fn small_t_case() {
        // s = 3/2 in (4,3): d = 1, (k-d-1)(n-k) = 1 >= t = 1.
        let p = FurstenbergParams::new(q(3, 2), q(1, 1), 4, 3).unwrap();
        assert_eq!(p.case, FurstenbergCase::SmallT { d: 1, sigma: q(1, 2) });
        assert_eq!(p.index(), q(3, 2));
    }

    #[test]
    fn full_space_gives_n() {
        for n in 2..=5usize {
            for k in 1..n {
                let t = Rational::from_integer(((k + 1) * (n - k)) as i64);
                assert_eq!(fi(Rational::from_integer(k as i64), t, n, k), Rational::from_integer(n as i64));
            }
        }
    }

    #[test]
    fn inadmissible_rejected() {
        assert!(furstenberg_index(q(3, 2), q(1, 1), 2, 1).is_err());
        assert!(furstenberg_index(q(1, 2), q(3, 1), 2, 1).is_err());
        assert!(furstenberg_index(q(1, 2), q(1, 1), 2, 2).is_err());
        assert!(furstenberg_index(q(-1, 2), q(1, 1), 3, 1).is_err());
    }
}
