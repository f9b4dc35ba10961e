use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Coefficient field (or ring) for the function algebras.
///
/// Implementors are exact: equality is structural and every operation is
/// lossless. `checked_div` returns `None` when the quotient does not exist in
/// the ring, which is how eigenvalue recovery detects non-proportional
/// functions.
pub trait ExactScalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(q: BigRational) -> Self;
    /// The imaginary unit.
    fn i() -> Self;
    fn conj(&self) -> Self;
    fn checked_div(&self, rhs: &Self) -> Option<Self>;
    /// Sign of a real scalar, `None` when the scalar is not real or its sign
    /// cannot be decided exactly.
    fn real_sign(&self) -> Option<Ordering>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }
}

/// Parses `p`, `p/q` (optionally signed) into a reduced rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| Error::Parse(format!("bad rational numerator in {text:?}")))?;
    let den: BigInt = den.parse().map_err(|_| Error::Parse(format!("bad rational denominator in {text:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(BigRational::new(num, den))
}

pub(crate) fn rational_sign(q: &BigRational) -> Ordering {
    q.numer().sign().cmp(&num_bigint::Sign::NoSign)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_reduced_rationals() {
        assert_eq!(parse_rational("6/4").unwrap().to_string(), "3/2");
        assert_eq!(parse_rational("-2").unwrap().to_string(), "-2");
        assert_eq!(parse_rational(" 3/-6 ").unwrap().to_string(), "-1/2");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn sign_of_rational() {
        assert_eq!(rational_sign(&parse_rational("-1/3").unwrap()), Ordering::Less);
        assert_eq!(rational_sign(&parse_rational("0").unwrap()), Ordering::Equal);
        assert_eq!(rational_sign(&parse_rational("7").unwrap()), Ordering::Greater);
    }
}
