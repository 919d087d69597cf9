//! Exact rational scalars.
//!
//! `Scalar` is an arbitrary-precision rational, always reduced to lowest
//! terms with a positive denominator. Every operation in this crate is
//! exact; nothing here ever rounds.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Scalar = BigRational;

/// Scalar from an integer.
pub fn scalar(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Scalar from a numerator/denominator pair. Panics on zero denominator.
pub fn ratio(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical text for a scalar: `n` when the denominator is one, `n/d`
/// otherwise, with the sign on the numerator.
pub fn format_scalar(s: &Scalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Parse `int` or `int/posint`. Accepts an optional leading minus sign.
pub fn parse_scalar(text: &str) -> Result<Scalar, String> {
    let text = text.trim();
    let (num_text, den_text) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let numer: BigInt = num_text
        .trim()
        .parse()
        .map_err(|_| format!("invalid integer `{num_text}`"))?;
    let denom: BigInt = match den_text {
        Some(d) => {
            let d: BigInt = d
                .trim()
                .parse()
                .map_err(|_| format!("invalid denominator `{d}`"))?;
            if !d.is_positive() {
                return Err(format!("denominator must be positive, got `{d}`"));
            }
            d
        }
        None => BigInt::one(),
    };
    Ok(BigRational::new(numer, denom))
}

/// n! as a big integer.
pub fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// Falling factorial n·(n−1)···(n−k+1); zero when k > n.
pub fn falling(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for j in 0..k {
        acc *= BigInt::from(n - j);
    }
    acc
}
