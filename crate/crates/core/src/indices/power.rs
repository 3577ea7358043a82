//! Integer-only decisions about `p^(r/d)`.
//!
//! `c < p^(r/d)` is decided as `c^d < p^r`; ceilings and floors come from
//! integer d-th roots. No floating point anywhere.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{Signed, ToPrimitive, Zero};

use super::exponent::Rational;

pub fn pow_big(base: u64, exp: u64) -> BigUint {
    BigUint::from(base).pow(exp.to_u32().expect("exponent fits in u32"))
}

fn parts(e: Rational) -> (u64, u32) {
    assert!(!e.is_negative(), "negative exponent {e}");
    let r = e.numer().to_u64().expect("numerator fits");
    let d = e.denom().to_u32().expect("denominator fits");
    (r, d)
}

/// `floor(p^e)` for rational `e >= 0`.
pub fn floor_rational_power(p: u64, e: Rational) -> BigUint {
    let (r, d) = parts(e);
    pow_big(p, r).nth_root(d)
}

/// `ceil(p^e)` for rational `e >= 0`.
pub fn ceil_rational_power(p: u64, e: Rational) -> BigUint {
    let (r, d) = parts(e);
    let target = pow_big(p, r);
    let root = target.nth_root(d);
    if root.pow(d) == target {
        root
    } else {
        root + 1u32
    }
}

/// Sign of `c - p^e`.
pub fn compare_count_to_power(c: &BigUint, p: u64, e: Rational) -> Ordering {
    let (r, d) = parts(e);
    c.pow(d).cmp(&pow_big(p, r))
}

/// Sign of `c - scale * p^e` for a positive rational `scale`.
///
/// With `scale = u/v` and `e = r/d` this compares `(c v)^d` with `u^d p^r`.
pub fn compare_scaled_power(c: &BigUint, scale: Rational, p: u64, e: Rational) -> Ordering {
    assert!(scale.is_positive(), "scale must be positive");
    let (r, d) = parts(e);
    let u = BigUint::from(scale.numer().to_u64().expect("scale numerator"));
    let v = BigUint::from(scale.denom().to_u64().expect("scale denominator"));
    if c.is_zero() {
        return Ordering::Less;
    }
    let lhs = (c * v).pow(d);
    let rhs = u.pow(d) * pow_big(p, r);
    lhs.cmp(&rhs)
}

/// Smallest integer `c` with `c >= scale * p^e`.
pub fn ceil_scaled_power(p: u64, e: Rational, scale: Rational) -> BigUint {
    assert!(scale.is_positive(), "scale must be positive");
    let u = BigUint::from(scale.numer().to_u64().expect("scale numerator"));
    let v = BigUint::from(scale.denom().to_u64().expect("scale denominator"));
    let mut c = ceil_rational_power(p, e) * u / v;
    while compare_scaled_power(&c, scale, p, e) == Ordering::Less {
        c += 1u32;
    }
    while !c.is_zero() && compare_scaled_power(&(&c - 1u32), scale, p, e) != Ordering::Less {
        c -= 1u32;
    }
    c
}
