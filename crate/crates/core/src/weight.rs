//! Exact non-negative rational edge weights.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// A non-negative rational, kept in lowest terms.
///
/// Parses integer (`"7"`), finite decimal (`"0.25"`) and fraction (`"3/4"`)
/// literals; `Display` prints `"7"` or `"3/4"`, so formatting round-trips
/// through parsing. Subtraction is checked: going below zero is an error,
/// never a wrap or a clamp.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Weight(BigRational);

impl Weight {
    pub fn zero() -> Self {
        Weight(BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn from_integer(n: u64) -> Self {
        Weight(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(numer: u64, denom: u64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::WeightParse {
                input: format!("{numer}/{denom}"),
                reason: "zero denominator",
            });
        }
        Ok(Weight(BigRational::new(
            BigInt::from(numer),
            BigInt::from(denom),
        )))
    }

    /// Wraps a raw rational, rejecting negative values.
    pub fn from_rational(r: BigRational) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::NegativeWeight(r.to_string()));
        }
        Ok(Weight(r))
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn checked_sub(&self, rhs: &Weight) -> Result<Weight> {
        if rhs.0 > self.0 {
            return Err(Error::WeightUnderflow(self.clone(), rhs.clone()));
        }
        Ok(Weight(&self.0 - &rhs.0))
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        Weight(self.0 + rhs.0)
    }
}

impl Add<&Weight> for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(&self.0 + &rhs.0)
    }
}

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, rhs: &Weight) {
        self.0 += &rhs.0;
    }
}

impl Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Weight {
        iter.fold(Weight::zero(), |mut acc, w| {
            acc += &w;
            acc
        })
    }
}

impl<'a> Sum<&'a Weight> for Weight {
    fn sum<I: Iterator<Item = &'a Weight>>(iter: I) -> Weight {
        iter.fold(Weight::zero(), |mut acc, w| {
            acc += w;
            acc
        })
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

fn parse_digits(s: &str, input: &str) -> Result<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::WeightParse {
            input: input.to_string(),
            reason: "expected an unsigned integer, decimal, or fraction of decimal digits",
        });
    }
    Ok(s.parse::<BigInt>().expect("digits parse as BigInt"))
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Weight> {
        if let Some((n, d)) = s.split_once('/') {
            let numer = parse_digits(n, s)?;
            let denom = parse_digits(d, s)?;
            if denom.is_zero() {
                return Err(Error::WeightParse {
                    input: s.to_string(),
                    reason: "zero denominator",
                });
            }
            return Ok(Weight(BigRational::new(numer, denom)));
        }
        if let Some((int, frac)) = s.split_once('.') {
            let int = parse_digits(int, s)?;
            let frac_digits = frac.len() as u32;
            let frac = parse_digits(frac, s)?;
            let denom = BigInt::from(10u32).pow(frac_digits);
            return Ok(Weight(BigRational::new(int * &denom + frac, denom)));
        }
        Ok(Weight(BigRational::from_integer(parse_digits(s, s)?)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn parses_integers_decimals_and_fractions() {
        assert_eq!(w("7"), Weight::from_integer(7));
        assert_eq!(w("0"), Weight::zero());
        assert_eq!(w("0.25"), Weight::from_ratio(1, 4).unwrap());
        assert_eq!(w("1.50"), Weight::from_ratio(3, 2).unwrap());
        assert_eq!(w("3/4"), Weight::from_ratio(3, 4).unwrap());
        assert_eq!(w("6/4"), Weight::from_ratio(3, 2).unwrap());
    }

    #[test]
    fn rejects_malformed_literals() {
        for bad in ["", "-1", "1/-2", "1/0", "a", "1.2.3", ".", "1/", "/2", "1 "] {
            assert!(bad.parse::<Weight>().is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn display_reduces_and_round_trips() {
        assert_eq!(w("6/4").to_string(), "3/2");
        assert_eq!(w("0.25").to_string(), "1/4");
        assert_eq!(w("8/2").to_string(), "4");
        assert_eq!(w("0").to_string(), "0");
    }

    #[test]
    fn checked_sub_refuses_negative_results() {
        assert_eq!(w("5").checked_sub(&w("3")).unwrap(), w("2"));
        assert_eq!(w("1/2").checked_sub(&w("1/2")).unwrap(), Weight::zero());
        assert!(w("1/3").checked_sub(&w("1/2")).is_err());
    }

    #[test]
    fn ordering_is_by_value() {
        assert!(w("1/3") < w("1/2"));
        assert!(w("7/2") > w("3"));
        assert_eq!(w("2/4"), w("1/2"));
    }

    #[test]
    fn sums_exactly() {
        let total: Weight = ["1/3", "1/3", "1/3"].iter().map(|s| w(s)).sum();
        assert_eq!(total, w("1"));
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(numer in 0u64..1_000_000, denom in 1u64..1_000) {
            let v = Weight::from_ratio(numer, denom).unwrap();
            let back: Weight = v.to_string().parse().unwrap();
            prop_assert_eq!(back, v);
        }

        #[test]
        fn add_then_sub_is_identity(a in 0u64..10_000, b in 0u64..10_000, d in 1u64..100) {
            let x = Weight::from_ratio(a, d).unwrap();
            let y = Weight::from_ratio(b, d).unwrap();
            let sum = &x + &y;
            prop_assert_eq!(sum.checked_sub(&y).unwrap(), x);
        }
    }
}
