//! Continued fractions and reduced even words.
//!
//! A word `[a_1, ..., a_m]` stands for the tower
//! `1 / (a_1 + 1 / (a_2 + ... + 1 / a_m))`. Even words store the even entries
//! `2a_i` themselves, exactly as they are printed.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A general continued fraction: at least one entry, no zero entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntWord(Vec<i64>);

/// A reduced even continued fraction: even length, every entry even and
/// nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EvenWord(Vec<i64>);

impl IntWord {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidWord("empty word".into()));
        }
        if let Some(i) = entries.iter().position(|&a| a == 0) {
            return Err(Error::InvalidWord(format!("entry {} is zero", i + 1)));
        }
        Ok(IntWord(entries))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }
}

impl EvenWord {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.len() < 2 || !entries.len().is_multiple_of(2) {
            return Err(Error::InvalidWord(format!(
                "length {} is not a positive even number",
                entries.len()
            )));
        }
        if let Some(i) = entries.iter().position(|&a| a == 0 || a % 2 != 0) {
            return Err(Error::InvalidWord(format!(
                "entry {} ({}) is not a nonzero even integer",
                i + 1,
                entries[i]
            )));
        }
        Ok(EvenWord(entries))
    }

    /// Skips validation; callers guarantee the invariants.
    pub(crate) fn from_vec_unchecked(entries: Vec<i64>) -> Self {
        debug_assert!(EvenWord::new(entries.clone()).is_ok(), "{entries:?}");
        EvenWord(entries)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Sum of absolute values of the entries (twice `Σ|a_i|`).
    pub fn abs_sum(&self) -> i64 {
        self.0.iter().map(|a| a.abs()).sum()
    }

    pub fn sign_changes(&self) -> usize {
        count_sign_changes(&self.0)
    }

    pub fn reverse(&self) -> EvenWord {
        EvenWord(reversed(&self.0))
    }

    pub fn negate(&self) -> EvenWord {
        EvenWord(negated(&self.0))
    }

    /// Reverse and negate: `(2a_1, ..., 2a_2m) -> (-2a_2m, ..., -2a_1)`.
    pub fn rev_neg(&self) -> EvenWord {
        EvenWord(self.0.iter().rev().map(|a| -a).collect())
    }

    pub fn as_int_word(&self) -> IntWord {
        IntWord(self.0.clone())
    }

    pub fn eval(&self) -> Rational {
        // Tails of an even word have absolute value below 1, so no
        // intermediate reciprocal can hit zero.
        eval_entries(&self.0).expect("even words always evaluate")
    }
}

pub fn eval(word: &IntWord) -> Result<Rational> {
    eval_entries(&word.0)
}

fn eval_entries(entries: &[i64]) -> Result<Rational> {
    // Innermost tail first: x = a_m, x = a_i + 1/x, value = 1/x.
    let mut x = Rational::from_integer(*entries.last().expect("nonempty word"));
    for (i, &a) in entries.iter().enumerate().rev().skip(1) {
        let inv = x.recip().ok_or(Error::ZeroDivision { index: i + 2 })?;
        x = &Rational::from_integer(a) + &inv;
    }
    x.recip().ok_or(Error::ZeroDivision { index: 1 })
}

pub fn sign_changes(word: &IntWord) -> usize {
    count_sign_changes(&word.0)
}

fn count_sign_changes(entries: &[i64]) -> usize {
    entries
        .windows(2)
        .filter(|w| (w[0] < 0) != (w[1] < 0))
        .count()
}

fn reversed(entries: &[i64]) -> Vec<i64> {
    entries.iter().rev().copied().collect()
}

fn negated(entries: &[i64]) -> Vec<i64> {
    entries.iter().map(|a| -a).collect()
}

pub fn reverse(word: &IntWord) -> IntWord {
    IntWord(reversed(&word.0))
}

pub fn negate(word: &IntWord) -> IntWord {
    IntWord(negated(&word.0))
}

pub fn rev_neg(word: &IntWord) -> IntWord {
    IntWord(word.0.iter().rev().map(|a| -a).collect())
}

/// Expands `r` as a reduced even continued fraction.
///
/// At each step the reciprocal of the current remainder is split as
/// `2a + rest` with `2a` the even integer nearest to it. For `r = p/q` with
/// `p` even and `q` odd the parities of (numerator, denominator) alternate
/// between (even, odd) and (odd, even), so the nearest even integer is never
/// tied and the remainder stays strictly inside (-1, 1). Denominators strictly
/// decrease and a zero remainder can only occur after an even number of
/// steps. Since every tail of an even word lies in (-1, 1), this is also the
/// only even expansion of `r`.
pub fn to_reduced_even(r: &Rational) -> Result<EvenWord> {
    let reject = |reason| Error::NotAKnotFraction {
        value: r.to_string(),
        reason,
    };
    if r.is_zero() || r.abs() >= Rational::one() {
        return Err(reject("absolute value must lie strictly between 0 and 1"));
    }
    if r.denom().is_even() {
        return Err(reject("even denominator (a two-component link)"));
    }
    if r.numer().is_odd() {
        return Err(reject(
            "odd numerator has no even expansion; shift the fraction by 1 toward zero",
        ));
    }

    let mut num = r.numer().clone();
    let mut den = r.denom().clone();
    let mut entries = Vec::new();
    // Each step strictly decreases the denominator.
    let max_steps = den.clone();
    while !num.is_zero() {
        if BigInt::from(entries.len()) > max_steps {
            unreachable!("even expansion of {r} did not terminate");
        }
        // Current remainder num/den; its reciprocal is den/num.
        let q = nearest_even(&den, &num);
        let next_num = &den - &q * &num;
        den = num;
        num = next_num;
        if den.is_negative() {
            den = -den;
            num = -num;
        }
        entries.push(i64::try_from(&q).map_err(|_| reject("entry overflows i64"))?);
    }
    EvenWord::new(entries).map_err(|_| reject("expansion is not a reduced even word"))
}

/// Even integer nearest to `a/b` (b != 0); ties go to the larger magnitude.
fn nearest_even(a: &BigInt, b: &BigInt) -> BigInt {
    let (a, b) = if b.is_negative() {
        (-a, -b)
    } else {
        (a.clone(), b.clone())
    };
    let two_b = &b * 2;
    // a/b = 2k + f with 0 <= f < 2  ->  candidates 2k and 2k + 2.
    let k = a.div_floor(&two_b);
    let rem = &a - &k * &two_b; // in [0, 2b)
    let low = &k * 2;
    match rem.cmp(&b) {
        std::cmp::Ordering::Less => low,
        std::cmp::Ordering::Greater => low + 2,
        std::cmp::Ordering::Equal => {
            // Tie at an odd integer: pick the even neighbour farther from 0.
            if low.is_negative() {
                low
            } else {
                low + 2
            }
        }
    }
}

/// Parses `n1,n2,...` with optional signs and whitespace around commas.
pub fn parse_entries(s: &str) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for (idx, raw) in s.split(',').enumerate() {
        let token = raw.trim();
        let position = offset + raw.len() - raw.trim_start().len();
        offset += raw.len() + 1;
        let err = |reason: &str| Error::Parse {
            token: token.to_string(),
            position,
            reason: format!("entry {}: {reason}", idx + 1),
        };
        if token.is_empty() {
            return Err(err("empty entry"));
        }
        let value: i64 = token.parse().map_err(|_| err("not an integer"))?;
        if value == 0 {
            return Err(err("zero entry"));
        }
        out.push(value);
    }
    Ok(out)
}

fn parse_error_from_invalid(s: &str, e: Error) -> Error {
    match e {
        Error::InvalidWord(reason) => Error::Parse {
            token: s.trim().to_string(),
            position: 0,
            reason,
        },
        other => other,
    }
}

impl FromStr for IntWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        IntWord::new(parse_entries(s)?).map_err(|e| parse_error_from_invalid(s, e))
    }
}

impl FromStr for EvenWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let entries = parse_entries(s)?;
        if let Some(i) = entries.iter().position(|a| a % 2 != 0) {
            let token = s.split(',').nth(i).unwrap_or("").trim().to_string();
            let position = s.split(',').take(i).map(|t| t.len() + 1).sum::<usize>();
            return Err(Error::Parse {
                token,
                position,
                reason: format!("entry {}: odd entry in an even word", i + 1),
            });
        }
        EvenWord::new(entries).map_err(|e| parse_error_from_invalid(s, e))
    }
}

fn write_entries(f: &mut fmt::Formatter<'_>, entries: &[i64]) -> fmt::Result {
    for (i, a) in entries.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{a}")?;
    }
    Ok(())
}

impl fmt::Display for IntWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_entries(f, &self.0)
    }
}

impl fmt::Display for EvenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_entries(f, &self.0)
    }
}

impl Serialize for EvenWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for EvenWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iw(v: &[i64]) -> IntWord {
        IntWord::new(v.to_vec()).unwrap()
    }

    fn ew(v: &[i64]) -> EvenWord {
        EvenWord::new(v.to_vec()).unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(eval(&iw(&[2])).unwrap(), Rational::new(1, 2));
        assert_eq!(eval(&iw(&[2, -2])).unwrap(), Rational::new(2, 3));
        assert_eq!(eval(&iw(&[2, 2])).unwrap(), Rational::new(2, 5));
    }

    #[test]
    fn eval_zero_division() {
        // 1 + 1/(-1) = 0 needs a reciprocal.
        assert!(matches!(
            eval(&iw(&[1, -1])),
            Err(Error::ZeroDivision { index: 1 })
        ));
        assert!(matches!(
            eval(&iw(&[3, 1, -1])),
            Err(Error::ZeroDivision { index: 2 })
        ));
    }

    #[test]
    fn sign_change_examples() {
        assert_eq!(sign_changes(&iw(&[2, -2, 2, -2])), 3);
        assert_eq!(sign_changes(&iw(&[2, 2])), 0);
        assert_eq!(sign_changes(&iw(&[2, -4, 4, -2])), 3);
    }

    #[test]
    fn symmetry_examples() {
        assert_eq!(
            ew(&[2, -2, 4, -2, 2, -2, 2, -2]).rev_neg(),
            ew(&[2, -2, 2, -2, 2, -4, 2, -2])
        );
        assert_eq!(ew(&[2, 2]).negate(), ew(&[-2, -2]));
        assert_eq!(ew(&[2, -4, 4, -2]).reverse(), ew(&[-2, 4, -4, 2]));
        assert_eq!(rev_neg(&iw(&[1, 3, -5])), iw(&[5, -3, -1]));
    }

    #[test]
    fn reduced_even_examples() {
        assert_eq!(to_reduced_even(&Rational::new(2, 3)).unwrap(), ew(&[2, -2]));
        assert_eq!(to_reduced_even(&Rational::new(2, 5)).unwrap(), ew(&[2, 2]));
        assert!(matches!(
            to_reduced_even(&Rational::new(1, 2)),
            Err(Error::NotAKnotFraction { .. })
        ));
    }

    #[test]
    fn reduced_even_rejects_out_of_range() {
        for r in [
            Rational::new(4, 3),
            Rational::from_integer(1),
            Rational::zero(),
            Rational::new(-6, 5),
        ] {
            assert!(matches!(
                to_reduced_even(&r),
                Err(Error::NotAKnotFraction { .. })
            ));
        }
        assert!(to_reduced_even(&Rational::new(1, 3)).is_err());
    }

    #[test]
    fn reduced_even_torus_words() {
        // 2k/(2k+1) expands as the alternating word of length 2k.
        for k in 1..12i64 {
            let w = to_reduced_even(&Rational::new(2 * k, 2 * k + 1)).unwrap();
            let expect: Vec<i64> = (0..2 * k)
                .map(|i| if i % 2 == 0 { 2 } else { -2 })
                .collect();
            assert_eq!(w.entries(), &expect[..]);
        }
    }

    #[test]
    fn nearest_even_ties() {
        let n = |a: i64, b: i64| nearest_even(&BigInt::from(a), &BigInt::from(b));
        assert_eq!(n(3, 1), BigInt::from(4));
        assert_eq!(n(-3, 1), BigInt::from(-4));
        assert_eq!(n(1, 1), BigInt::from(2));
        assert_eq!(n(-1, 1), BigInt::from(-2));
        assert_eq!(n(5, 2), BigInt::from(2));
        assert_eq!(n(-5, 2), BigInt::from(-2));
        assert_eq!(n(7, -2), BigInt::from(-4));
    }

    #[test]
    fn parsing() {
        assert_eq!(
            "2, -4 ,4,-2".parse::<EvenWord>().unwrap(),
            ew(&[2, -4, 4, -2])
        );
        match "2,0,2".parse::<IntWord>() {
            Err(Error::Parse {
                token, position, ..
            }) => {
                assert_eq!(token, "0");
                assert_eq!(position, 2);
            }
            other => panic!("{other:?}"),
        }
        match "2,x".parse::<EvenWord>() {
            Err(Error::Parse {
                token, position, ..
            }) => {
                assert_eq!(token, "x");
                assert_eq!(position, 2);
            }
            other => panic!("{other:?}"),
        }
        assert!("2,3".parse::<EvenWord>().is_err());
        assert!("2,-2,2".parse::<EvenWord>().is_err());
        assert!("".parse::<IntWord>().is_err());
        assert_eq!(ew(&[2, -4, 4, -2]).to_string(), "2,-4,4,-2");
    }
}
