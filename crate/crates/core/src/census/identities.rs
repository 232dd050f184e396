//! Binomial-sum identities behind the sign-change totals, checked by exact
//! summation.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::rational::Rational;

use super::closed::pow2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub statement: &'static str,
    /// Parameter values (or pairs) that were checked.
    pub cases: usize,
    /// First failing parameter with both sides, if any.
    pub counterexample: Option<String>,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub n_max: u32,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(IdentityCheck::passed)
    }
}

/// Pascal's triangle as a lookup for `C(n, k)` with `0 ≤ n ≤ rows`.
struct Pascal {
    rows: Vec<Vec<BigInt>>,
}

impl Pascal {
    fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![BigInt::one()]);
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(BigInt::one());
            for k in 1..n {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(BigInt::one());
            rows.push(row);
        }
        Pascal { rows }
    }

    fn get(&self, n: i64, k: i64) -> BigInt {
        if n < 0 || k < 0 || k > n {
            return BigInt::zero();
        }
        self.rows[n as usize][k as usize].clone()
    }
}

struct Checker {
    check: IdentityCheck,
}

impl Checker {
    fn new(name: &'static str, statement: &'static str) -> Self {
        Checker {
            check: IdentityCheck {
                name,
                statement,
                cases: 0,
                counterexample: None,
            },
        }
    }

    fn record<T: PartialEq + std::fmt::Display>(&mut self, param: String, lhs: T, rhs: T) {
        self.check.cases += 1;
        if lhs != rhs && self.check.counterexample.is_none() {
            self.check.counterexample = Some(format!("{param}: sum = {lhs}, closed form = {rhs}"));
        }
    }
}

/// Checks the four binomial sums for `1 ≤ n ≤ n_max` and the three
/// partial-sum identities for `1 ≤ k ≤ n_max` and every admissible `l`.
pub fn verify_identities(n_max: u32) -> IdentityReport {
    let n_max_i = n_max as i64;
    let pascal = Pascal::new(2 * n_max as usize + 1);

    let mut odd = Checker::new(
        "binomial-sum-odd",
        "sum_{q=0}^{n-1} 2^q C(2n-1-q, q) = (4^n - 1)/3",
    );
    let mut even = Checker::new(
        "binomial-sum-even",
        "sum_{q=0}^{n} 2^q C(2n-q, q) = (2*4^n + 1)/3",
    );
    let mut w_odd = Checker::new(
        "weighted-sum-odd",
        "sum_{q=0}^{n-1} q 2^q C(2n-1-q, q) = 2((3n-2) 4^n - 6n + 2)/27",
    );
    let mut w_even = Checker::new(
        "weighted-sum-even",
        "sum_{q=0}^{n} q 2^q C(2n-q, q) = 2((6n-1) 4^n + 6n + 1)/27",
    );
    for n in 1..=n_max_i {
        let four_n = pow2(2 * n as u32);
        let nb = BigInt::from(n);
        let (mut s1, mut s2, mut s3, mut s4) = (
            BigInt::zero(),
            BigInt::zero(),
            BigInt::zero(),
            BigInt::zero(),
        );
        for q in 0..=n {
            let p = pow2(q as u32);
            if q < n {
                let t = &p * pascal.get(2 * n - 1 - q, q);
                s3 += &t * q;
                s1 += t;
            }
            let t = &p * pascal.get(2 * n - q, q);
            s4 += &t * q;
            s2 += t;
        }
        let param = format!("n = {n}");
        // Compare 3·lhs and 27·lhs against the numerators so no division is
        // needed on the closed side.
        odd.record(param.clone(), s1 * 3, &four_n - 1);
        even.record(param.clone(), s2 * 3, &four_n * 2 + 1);
        w_odd.record(
            param.clone(),
            s3 * 27,
            ((&nb * 3 - 2) * &four_n - &nb * 6 + 2) * 2,
        );
        w_even.record(param, s4 * 27, ((&nb * 6 - 1) * &four_n + &nb * 6 + 1) * 2);
    }

    let mut partial_odd = Checker::new(
        "partial-sum-odd-index",
        "sum_{m=l+1}^{floor((k+l)/2)} C(k-l-1, 2m-2l-1) = 2^{k-l-2} for 0 <= l <= k-2",
    );
    let mut partial_even = Checker::new(
        "partial-sum-even-index",
        "sum_{m=l+1}^{floor((k+l+1)/2)} C(k-l-1, 2m-2l-2) = 2^{k-l-2} (0 <= l <= k-2), 2^{-1} + 1/2 (l = k-1)",
    );
    let mut partial_half = Checker::new(
        "partial-sum-half-row",
        "sum_{m=l+1}^{(k+l+1)/2} C((k-l-1)/2, m-l-1) = 2^{(k-l-1)/2} when k+l+1 is even",
    );
    for k in 1..=n_max_i {
        for l in 0..k {
            let param = format!("k = {k}, l = {l}");
            if l <= k - 2 {
                let lhs: BigInt = (l + 1..=(k + l) / 2)
                    .map(|m| pascal.get(k - l - 1, 2 * m - 2 * l - 1))
                    .sum();
                partial_odd.record(param.clone(), lhs, pow2((k - l - 2) as u32));
            }

            let lhs: BigInt = (l + 1..=(k + l + 1) / 2)
                .map(|m| pascal.get(k - l - 1, 2 * m - 2 * l - 2))
                .sum();
            let rhs = if l <= k - 2 {
                Rational::from_integer(pow2((k - l - 2) as u32))
            } else {
                // 2^{k-l-2} = 1/2 at l = k - 1.
                Rational::new(1, 2) + Rational::new(1, 2)
            };
            partial_even.record(param.clone(), Rational::from_integer(lhs), rhs);

            if (k + l + 1) % 2 == 0 {
                let half = (k - l - 1) / 2;
                let lhs: BigInt = (l + 1..=(k + l + 1) / 2)
                    .map(|m| pascal.get(half, m - l - 1))
                    .sum();
                partial_half.record(param, lhs, pow2(half as u32));
            }
        }
    }

    IdentityReport {
        n_max,
        checks: vec![
            odd.check,
            even.check,
            w_odd.check,
            w_even.check,
            partial_odd.check,
            partial_even.check,
            partial_half.check,
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases_by_hand() {
        // n = 1: single term 1 = (4 - 1)/3.
        let r = verify_identities(1);
        assert!(r.all_passed());
        assert_eq!(r.checks[0].cases, 1);
        // n = 3: 1 + 2·C(4,1) + 4·C(3,2) = 1 + 8 + 12 = 21 = (64 - 1)/3.
        let n = 3i64;
        let p = Pascal::new(8);
        let s: BigInt = (0..n)
            .map(|q| pow2(q as u32) * p.get(2 * n - 1 - q, q))
            .sum();
        assert_eq!(s, BigInt::from(21));
    }

    #[test]
    fn boundary_partial_sum_is_one() {
        // (k, l) = (k, k - 1): the sum is C(0, 0) = 1.
        let p = Pascal::new(4);
        for k in 1..5i64 {
            let l = k - 1;
            let lhs: BigInt = (l + 1..=(k + l + 1) / 2)
                .map(|m| p.get(k - l - 1, 2 * m - 2 * l - 2))
                .sum();
            assert_eq!(lhs, BigInt::one());
        }
    }

    #[test]
    fn all_pass_to_forty() {
        let r = verify_identities(40);
        for c in &r.checks {
            assert!(c.passed(), "{}: {:?}", c.name, c.counterexample);
            assert!(c.cases > 0);
        }
    }

    #[test]
    fn a_wrong_identity_is_caught() {
        let mut ch = Checker::new("x", "x");
        ch.record("n = 1".into(), 1, 1);
        ch.record("n = 2".into(), 2, 3);
        ch.record("n = 3".into(), 4, 5);
        assert_eq!(ch.check.cases, 3);
        assert_eq!(
            ch.check.counterexample.as_deref(),
            Some("n = 2: sum = 2, closed form = 3")
        );
    }
}
