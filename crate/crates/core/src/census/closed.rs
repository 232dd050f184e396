//! Closed-form counts and averages as functions of the crossing number.
//!
//! Every division is checked for a zero remainder first; a remainder means a
//! formula was transcribed wrongly and is reported as
//! [`Error::NonIntegralFormula`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub(crate) fn pow2(e: u32) -> BigInt {
    BigInt::one() << e
}

/// `C(n, k)`, zero when `k < 0`, `n < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn div_exact(num: BigInt, den: i64, formula: &'static str, c: u32) -> Result<BigInt> {
    let (q, r) = num.div_rem(&BigInt::from(den));
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::NonIntegralFormula { formula, c })
    }
}

fn c_big(c: u32) -> BigInt {
    BigInt::from(c)
}

/// Number of two-bridge knots with `c` crossings, mirror images counted
/// separately.
pub fn closed_tk(c: u32) -> Result<BigInt> {
    assert!(c >= 3, "crossing number must be at least 3");
    let num = match (c % 2, c % 4) {
        (0, _) => pow2(c - 2) - 1,
        (_, 1) => pow2(c - 2) + pow2((c - 1) / 2),
        _ => pow2(c - 2) + pow2((c - 1) / 2) + 2,
    };
    div_exact(num, 3, "TK", c)
}

/// Number of two-bridge knots with `c` crossings up to mirror image.
pub fn closed_tk_star(c: u32) -> Result<BigInt> {
    assert!(c >= 3, "crossing number must be at least 3");
    let num = match c % 4 {
        0 => pow2(c - 3) + pow2((c - 4) / 2),
        1 => pow2(c - 3) + pow2((c - 3) / 2),
        2 => pow2(c - 3) + pow2((c - 4) / 2) - 1,
        _ => pow2(c - 3) + pow2((c - 3) / 2) + 1,
    };
    div_exact(num, 3, "TK*", c)
}

/// Number of knots with crossing number `c` whose word has `ell` sign changes.
///
/// The first sum counts words with a given sign-change count in pairs
/// `{w, rev_neg(w)}`; the second term adds back half of the words fixed by
/// `rev_neg`, which exist only when `ell` is odd and `(c + ell)/2` is even.
pub fn closed_n(c: u32, ell: u32) -> BigInt {
    let (c, ell) = (c as i64, ell as i64);
    if c < 3 || (c + ell) % 2 != 0 {
        return BigInt::zero();
    }
    let max_ell = if c % 2 == 0 { c - 4 } else { c - 2 };
    if ell > max_ell {
        return BigInt::zero();
    }
    let half = (c + ell) / 2;
    let m_lo = (ell + 2) / 2; // ceil((ell + 1)/2)
    let m_hi = (c + ell) / 4;

    let inner: BigInt = (m_lo..=m_hi)
        .map(|m| binomial((c - ell) / 2 - 1, 2 * m - 1 - ell))
        .sum();
    let mut total = binomial(half - 1, ell) * inner;

    if ell % 2 == 1 && half % 2 == 0 {
        let odd_half = (ell - 1) / 2;
        let upper = (c - ell - 2) / 4;
        let inner: BigInt = (m_lo..=m_hi)
            .map(|m| binomial(upper, m - 1 - odd_half))
            .sum();
        total += binomial((c + ell) / 4 - 1, odd_half) * inner;
    }
    total
}

/// Total number of sign changes over all knots with `c` crossings.
pub fn closed_ts(c: u32) -> Result<BigInt> {
    assert!(c >= 3, "crossing number must be at least 3");
    let cb = c_big(c);
    let lead = (&cb * 3 - 4) * pow2(c - 2);
    let num = match (c % 2, c % 4) {
        (0, _) => lead - &cb * 15 + 28,
        (_, 1) => lead + (&cb * 3 + 4) * pow2((c - 1) / 2) + &cb * 18 - 38,
        _ => lead + (&cb * 3 + 4) * pow2((c - 1) / 2) + &cb * 12 - 18,
    };
    div_exact(num, 27, "TS", c)
}

/// Total number of sign changes over knots with `c` crossings up to mirror
/// image.
pub fn closed_ts_star(c: u32) -> Result<BigInt> {
    assert!(c >= 3, "crossing number must be at least 3");
    let cb = c_big(c);
    let lead = (&cb * 3 - 4) * pow2(c - 2);
    let num = match c % 4 {
        0 => lead + (&cb * 3 - 8) * pow2((c - 2) / 2) - &cb * 18 + 32,
        1 => lead + (&cb * 3 + 4) * pow2((c - 1) / 2) + &cb * 18 - 38,
        2 => lead + (&cb * 3 - 8) * pow2((c - 2) / 2) - &cb * 12 + 24,
        _ => lead + (&cb * 3 + 4) * pow2((c - 1) / 2) + &cb * 12 - 18,
    };
    div_exact(num, 54, "TS*", c)
}

fn rat(n: BigInt, d: BigInt) -> Rational {
    Rational::new(n, d)
}

fn base_braid(c: u32) -> Rational {
    Rational::new(3 * c as i64 + 11, 9)
}

/// Average braid index over knots with `c` crossings, from its own
/// three-case formula (not derived from TS/TK).
pub fn closed_avg_braid(c: u32) -> Rational {
    assert!(c >= 3, "crossing number must be at least 3");
    let cb = c_big(c);
    let base = base_braid(c);
    match (c % 2, c % 4) {
        (0, _) => base + rat(&cb * 2 - 4, (pow2(c - 2) - 1) * 3),
        (_, 1) => {
            base - rat(
                pow2((c + 3) / 2) + &cb * 9 - 19,
                (pow2(c - 2) + pow2((c - 1) / 2)) * 9,
            )
        }
        _ => {
            base - rat(
                pow2((c + 3) / 2) + &cb * 3 - 5,
                (pow2(c - 2) + pow2((c - 1) / 2) + 2) * 9,
            )
        }
    }
}

/// Average braid index up to mirror image, from its four-case formula.
pub fn closed_avg_braid_star(c: u32) -> Rational {
    assert!(c >= 3, "crossing number must be at least 3");
    let cb = c_big(c);
    let base = base_braid(c);
    match c % 4 {
        0 => {
            base + rat(
                pow2(c / 2) + &cb * 9 - 16,
                (pow2(c - 2) + pow2((c - 2) / 2)) * 9,
            )
        }
        1 => {
            base - rat(
                pow2((c + 3) / 2) + &cb * 9 - 19,
                (pow2(c - 2) + pow2((c - 1) / 2)) * 9,
            )
        }
        2 => {
            base + rat(
                pow2(c / 2) + &cb * 3 - 8,
                (pow2(c - 2) + pow2((c - 2) / 2) - 2) * 9,
            )
        }
        _ => {
            base - rat(
                pow2((c + 3) / 2) + &cb * 3 - 5,
                (pow2(c - 2) + pow2((c - 1) / 2) + 2) * 9,
            )
        }
    }
}

/// Average genus over knots with `c` crossings.
pub fn closed_avg_genus(c: u32) -> Rational {
    assert!(c >= 3, "crossing number must be at least 3");
    let cb = c_big(c);
    let base = Rational::new(3 * c as i64 + 1, 12);
    match (c % 2, c % 4) {
        (0, _) => base + rat(&cb - 5, pow2(c) - 4),
        (_, 1) => base + rat(BigInt::one(), pow2((c - 3) / 2) * 3),
        _ => {
            base + rat(
                pow2(c.div_ceil(2)) - &cb * 3 + 11,
                (pow2(c - 3) + pow2((c - 3) / 2) + 1) * 12,
            )
        }
    }
}

/// `c/2 + 1 − (ts/tk)/2`, the average braid index implied by a sign-change
/// total.
pub fn avg_braid_from_totals(c: u32, tk: &BigInt, ts: &BigInt) -> Rational {
    Rational::new(c as i64 + 2, 2) - rat(ts.clone(), tk * 2)
}
