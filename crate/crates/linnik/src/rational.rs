//! Rational scalar helpers.
//!
//! `num_rational::BigRational` already maintains the two invariants every
//! scalar in this crate relies on — the denominator is positive and
//! gcd(|numerator|, denominator) = 1 — so it is used directly as the
//! coefficient type. This module adds the small constructors and the
//! fixed-point decimal renderer the rest of the crate needs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub use num_rational::BigRational;

/// The reduced fraction `numer/denom`.
///
/// Panics if `denom` is zero (same contract as `BigRational::new`).
pub fn rat(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Renders `r` with exactly `digits` decimal places, rounding half away
/// from zero. The result differs from `r` by at most 0.5 * 10^-digits.
///
/// A value that rounds to zero is printed without a sign.
pub fn decimal_string(r: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (r.numer() * &scale).abs();
    let (mut quot, rem) = scaled.div_rem(r.denom());
    if &rem * 2u32 >= *r.denom() {
        quot += 1u32;
    }
    let sign = if r.is_negative() && !quot.is_zero() { "-" } else { "" };
    let int_part = &quot / &scale;
    let frac_part = &quot % &scale;
    format!(
        "{sign}{int_part}.{frac_part:0>width$}",
        width = digits as usize
    )
}
