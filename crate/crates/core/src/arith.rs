//! Exact integer and rational arithmetic.
//!
//! Integers are [`num_bigint::BigInt`] and rationals are
//! [`num_rational::BigRational`], which is always kept in lowest terms with a
//! positive denominator. Everything the crate computes flows through these two
//! types; floating point only appears when a value is rendered for humans.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rational = BigRational;

/// Product of every integer in `lo..=hi`.
///
/// An empty interval (`lo > hi`) yields 1. Zero and negative factors are
/// multiplied in literally; deciding which intervals are meaningful is the
/// caller's job.
pub fn range_product(lo: i64, hi: i64) -> Int {
    if lo > hi {
        return Int::one();
    }
    if lo <= 0 && hi >= 0 {
        return Int::zero();
    }
    (lo..=hi).fold(Int::one(), |acc, i| acc * i)
}

/// `n! / (n - k)!`, the number of ordered `k`-tuples of distinct elements.
pub fn falling_factorial(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    range_product((n - k + 1) as i64, n as i64)
}

pub fn factorial(n: u64) -> Int {
    range_product(1, n as i64)
}

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn ratio(num: impl Into<Int>, den: impl Into<Int>) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn from_int(v: &Int) -> Rational {
    Rational::from_integer(v.clone())
}

/// Returns the integer value of `value`, or an [`Error::IntegralityViolation`]
/// naming `quantity` when the denominator does not clear.
pub fn require_integer(quantity: &'static str, value: Rational) -> Result<Int> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(Error::IntegralityViolation { quantity, value })
    }
}

/// Renders `value` as a fixed-point decimal with `places` fractional digits,
/// rounding half away from zero. Pure integer arithmetic; no exponent form.
pub fn format_decimal(value: &Rational, places: u32) -> String {
    let scale = num_traits::pow(Int::from(10), places as usize);
    let scaled = value.abs() * from_int(&scale);
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    let twice = r * 2;
    let rounded = if &twice >= scaled.denom() { q + 1 } else { q };
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let sign = if value.is_negative() && !rounded.is_zero() { "-" } else { "" };
    if places == 0 {
        return format!("{sign}{int_part}");
    }
    format!("{sign}{int_part}.{frac:0>width$}", frac = frac_part.to_string(), width = places as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_interval_is_one() {
        assert_eq!(range_product(5, 4), int(1));
        assert_eq!(range_product(0, -1), int(1));
    }

    #[test]
    fn small_products() {
        assert_eq!(range_product(2, 4), int(24));
        assert_eq!(range_product(0, 1), int(0));
        assert_eq!(range_product(-3, -1), int(-6));
        assert_eq!(range_product(-1, -1), int(-1));
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), int(1));
        assert_eq!(factorial(4), int(24));
        assert_eq!(falling_factorial(9, 4), int(3024));
        assert_eq!(falling_factorial(4, 0), int(1));
        assert_eq!(factorial(25).to_string(), "15511210043330985984000000");
    }

    #[test]
    fn integrality() {
        assert_eq!(require_integer("x", ratio(10, 2)).unwrap(), int(5));
        assert!(matches!(require_integer("x", ratio(7, 2)), Err(Error::IntegralityViolation { quantity: "x", .. })));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(format_decimal(&ratio(35784, 22176), 4), "1.6136");
        assert_eq!(format_decimal(&ratio(1, 3), 4), "0.3333");
        assert_eq!(format_decimal(&ratio(2, 3), 4), "0.6667");
        assert_eq!(format_decimal(&ratio(-80, 1), 2), "-80.00");
        assert_eq!(format_decimal(&ratio(-1, 100000), 4), "0.0000");
        assert_eq!(format_decimal(&ratio(1, 20000), 4), "0.0001");
        assert_eq!(format_decimal(&ratio(7, 2), 0), "4");
    }

    #[test]
    fn rationals_normalize() {
        let r = ratio(6, -4);
        assert_eq!(r.numer(), &int(-3));
        assert_eq!(r.denom(), &int(2));
        assert_eq!(ratio(2, 4), ratio(1, 2));
    }

    // Independent product: multiply factor by factor with no shortcuts.
    fn naive(lo: i64, hi: i64) -> Int {
        let mut p = Int::one();
        let mut i = lo;
        while i <= hi {
            p *= i;
            i += 1;
        }
        p
    }

    proptest! {
        #[test]
        fn matches_naive_product(lo in -20i64..20, len in -3i64..15) {
            prop_assert_eq!(range_product(lo, lo + len), naive(lo, lo + len));
        }

        #[test]
        fn product_splits(a in -15i64..15, s in 0i64..10, t in 0i64..10) {
            let b = a + s - 1;
            let c = b + t;
            prop_assert_eq!(range_product(a, b) * range_product(b + 1, c), range_product(a, c));
        }

        #[test]
        fn falling_factorial_is_quotient(n in 0u64..25, k in 0u64..25) {
            prop_assume!(k <= n);
            prop_assert_eq!(falling_factorial(n, k) * factorial(n - k), factorial(n));
        }

        #[test]
        fn field_laws(a in -30i64..30, b in 1i64..30, c in -30i64..30, d in 1i64..30, e in -30i64..30, f in 1i64..30) {
            let (x, y, z) = (ratio(a, b), ratio(c, d), ratio(e, f));
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!((&x + &y) + &z, &x + (&y + &z));
            prop_assert_eq!((&x * &y) * &z, &x * (&y * &z));
            prop_assert_eq!(&x * (&y + &z), &x * &y + &x * &z);
            let again = Rational::new(x.numer().clone(), x.denom().clone());
            prop_assert_eq!(again.numer(), x.numer());
            prop_assert!(x.denom() > &Int::zero());
        }
    }
}
