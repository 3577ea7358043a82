//! Exact evaluation of the Furstenberg index F(s,t;n,k) and the Marstrand
//! index M(a,s;n,k), plus the rational-power arithmetic that every
//! "compare a count with p^x" decision in the crate goes through.

mod exponent;
mod furstenberg;
mod marstrand;
mod power;

pub use exponent::{canonical_split, fmt_rational, parse_rational, ExactExponent, Rational};
pub use furstenberg::{furstenberg_index, FurstenbergCase, FurstenbergParams};
pub use marstrand::{
    classify_marstrand_type, marstrand_index, marstrand_index_unclamped, type_conditions,
    MarstrandParams, MarstrandType,
};
pub use power::{
    ceil_rational_power, ceil_scaled_power, compare_count_to_power, compare_scaled_power, floor_rational_power,
    pow_big,
};
