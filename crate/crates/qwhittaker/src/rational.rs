//! Arbitrary-precision integer and rational scalars.
//!
//! `Integer` and `Rational` are re-exports of `num` types; `Ratio` keeps the
//! canonical form we rely on everywhere (reduced, denominator positive).

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};

pub type Integer = BigInt;
pub type Rational = BigRational;

/// Rational from a machine integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational n/d. `d` must be nonzero.
pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// x^e for a signed machine exponent. `x` must be nonzero when `e < 0`.
pub fn rat_pow(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num::pow::pow(x.clone(), e as usize)
    } else {
        assert!(!x.is_zero(), "negative power of zero");
        num::pow::pow(x.clone(), (-e) as usize).recip()
    }
}

/// n! as a big integer. `n` must be nonnegative.
pub fn factorial(n: i64) -> Integer {
    assert!(n >= 0, "factorial of negative integer");
    let mut acc = Integer::one();
    for k in 2..=n {
        acc *= Integer::from(k);
    }
    acc
}

/// Binomial coefficient C(n, k) for integer n >= 0; zero outside 0 <= k <= n.
pub fn binomial(n: i64, k: i64) -> Integer {
    if k < 0 || k > n {
        return Integer::zero();
    }
    let k = k.min(n - k);
    let mut acc = Integer::one();
    for j in 0..k {
        acc = acc * Integer::from(n - j) / Integer::from(j + 1);
    }
    acc
}

/// Decimal string for a big integer, with a leading `-` when negative.
pub fn int_to_decimal(n: &Integer) -> String {
    n.to_str_radix(10)
}

/// Parse a decimal string (optional leading `-`) into a big integer.
pub fn int_from_decimal(s: &str) -> Option<Integer> {
    let (sign, digits) = match s.strip_prefix('-') {
        Some(rest) => (Sign::Minus, rest),
        None => (Sign::Plus, s),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mag = BigInt::parse_bytes(digits.as_bytes(), 10)?;
    Some(if sign == Sign::Minus { -mag } else { mag })
}

/// True when the rational is a (possibly negative) integer.
pub fn is_integral(x: &Rational) -> bool {
    x.denom().is_one()
}

/// True when the rational is a nonnegative integer.
pub fn is_natural(x: &Rational) -> bool {
    is_integral(x) && !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_handles_negative_exponents() {
        assert_eq!(rat_pow(&rat_frac(2, 3), -2), rat_frac(9, 4));
        assert_eq!(rat_pow(&rat(5), 0), rat(1));
        assert_eq!(rat_pow(&rat(-2), 3), rat(-8));
    }

    #[test]
    fn factorial_and_binomial_small_values() {
        assert_eq!(factorial(0), Integer::from(1));
        assert_eq!(factorial(5), Integer::from(120));
        assert_eq!(binomial(4, 2), Integer::from(6));
        assert_eq!(binomial(4, 5), Integer::from(0));
        assert_eq!(binomial(4, -1), Integer::from(0));
        // Pascal rule on a small triangle.
        for n in 1..10 {
            for k in 0..=n {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }

    #[test]
    fn decimal_round_trip() {
        for s in ["0", "7", "-7", "123456789012345678901234567890"] {
            let n = int_from_decimal(s).unwrap();
            assert_eq!(int_to_decimal(&n), s);
        }
        assert!(int_from_decimal("").is_none());
        assert!(int_from_decimal("--3").is_none());
        assert!(int_from_decimal("12a").is_none());
    }
}
