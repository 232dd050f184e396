//! Exact rational numbers.
//!
//! A thin newtype over [`num_rational::BigRational`] that fixes the textual
//! format used across the crate: `numerator/denominator` in lowest terms with
//! a positive denominator.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den` reduced to lowest terms. Panics if `den` is zero.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// `None` when `self` is zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    /// Integer when the denominator is 1, `p/q` otherwise.
    pub fn to_compact_string(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            self.to_string()
        }
    }

    /// Decimal rendering with `digits` significant digits, rounded half away
    /// from zero. Computed with integer arithmetic only.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let negative = self.numer().is_negative();
        let num = self.numer().abs();
        let den = self.denom().clone();
        let ten = BigInt::from(10);

        // Find exponent e with 10^e <= num/den < 10^(e+1).
        let mut exp: i64 = num.to_string().len() as i64 - den.to_string().len() as i64;
        let pow10 = |k: i64| -> BigInt { num_traits::pow(ten.clone(), k.unsigned_abs() as usize) };
        let ge = |e: i64| -> bool {
            // num/den >= 10^e
            if e >= 0 {
                num >= &den * pow10(e)
            } else {
                &num * pow10(e) >= den
            }
        };
        while !ge(exp) {
            exp -= 1;
        }
        while ge(exp + 1) {
            exp += 1;
        }

        // Scaled integer s = round(num/den * 10^(digits-1-exp)).
        let shift = digits as i64 - 1 - exp;
        let (n2, d2) = if shift >= 0 {
            (&num * pow10(shift), den.clone())
        } else {
            (num.clone(), &den * pow10(shift))
        };
        let (q, r) = n2.div_rem(&d2);
        let mut scaled = q;
        if &r * 2 >= d2 {
            scaled += 1;
        }
        // Rounding may carry into a new digit.
        let mut s = scaled.to_string();
        let mut shift = shift;
        if s.len() > digits {
            s.pop();
            shift -= 1;
        }

        let mut out = String::new();
        if negative {
            out.push('-');
        }
        if shift <= 0 {
            out.push_str(&s);
            out.extend(std::iter::repeat_n('0', (-shift) as usize));
        } else {
            let shift = shift as usize;
            if shift >= s.len() {
                out.push_str("0.");
                out.extend(std::iter::repeat_n('0', shift - s.len()));
                out.push_str(&s);
            } else {
                let (int, frac) = s.split_at(s.len() - shift);
                out.push_str(int);
                out.push('.');
                out.push_str(frac);
            }
        }
        out
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason: &str| Error::Parse {
            token: s.to_string(),
            position: 0,
            reason: reason.to_string(),
        };
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num
            .parse()
            .map_err(|_| bad("numerator is not an integer"))?;
        let den: BigInt = den
            .parse()
            .map_err(|_| bad("denominator is not an integer"))?;
        if den.is_zero() {
            return Err(bad("zero denominator"));
        }
        Ok(Rational::new(num, den))
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_is_lowest_terms() {
        assert_eq!(Rational::new(4, -6).to_string(), "-2/3");
        assert_eq!(Rational::from_integer(3).to_string(), "3/1");
        assert_eq!(Rational::from_integer(3).to_compact_string(), "3");
    }

    #[test]
    fn parse() {
        assert_eq!(
            "389/85".parse::<Rational>().unwrap(),
            Rational::new(389, 85)
        );
        assert_eq!(" 6 / 4 ".parse::<Rational>().unwrap(), Rational::new(3, 2));
        assert_eq!("7".parse::<Rational>().unwrap(), Rational::from_integer(7));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x/2".parse::<Rational>().is_err());
    }

    #[test]
    fn decimal() {
        assert_eq!(
            Rational::new(389, 85).to_decimal_string(12),
            "4.57647058824"
        );
        assert_eq!(Rational::new(1, 3).to_decimal_string(4), "0.3333");
        assert_eq!(Rational::new(-2, 3).to_decimal_string(3), "-0.667");
        assert_eq!(Rational::new(1, 800).to_decimal_string(2), "0.0013");
        assert_eq!(Rational::from_integer(3).to_decimal_string(3), "3.00");
        assert_eq!(Rational::new(9999, 1000).to_decimal_string(2), "10");
        assert_eq!(Rational::from_integer(12345).to_decimal_string(2), "12000");
    }

    #[test]
    fn serde_uses_fraction_string() {
        let r = Rational::new(1949, 352);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, "\"1949/352\"");
        let back: Rational = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
