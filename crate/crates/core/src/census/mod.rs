//! Census of two-bridge knots by crossing number.
//!
//! [`brute_counts`] walks every knot with a given crossing number and
//! aggregates sign-change statistics; [`closed_row`] produces the same row
//! from closed formulas. [`compare_rows`] lists every field where the two
//! disagree.

mod closed;
mod enumerate;
mod identities;
pub mod table2;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

pub use closed::{
    avg_braid_from_totals, binomial, closed_avg_braid, closed_avg_braid_star, closed_avg_genus,
    closed_n, closed_tk, closed_tk_star, closed_ts, closed_ts_star,
};
pub use enumerate::{all_words, enumerate_words, length_sign_pairs, sign_patterns, SignPattern};
pub use identities::{verify_identities, IdentityCheck, IdentityReport};

use crate::error::{Error, Result};
use crate::knot::{is_le_rev_neg, is_mirror_canonical_entries};
use crate::par::{map_reduce, Parallelism};
use crate::rational::Rational;

pub const DEFAULT_ENUMERATION_CEILING: u32 = 22;

#[derive(Clone, Copy, Debug)]
pub struct CensusConfig {
    pub ceiling: u32,
    pub parallelism: Parallelism,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig {
            ceiling: DEFAULT_ENUMERATION_CEILING,
            parallelism: Parallelism::default(),
        }
    }
}

/// `N_{c,ℓ}`: knots with crossing number `c` and `ℓ` sign changes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignClassCount {
    pub c: u32,
    pub ell: u32,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub count: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub c: u32,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub tk: BigInt,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub ts: BigInt,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub tk_star: BigInt,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub ts_star: BigInt,
    pub avg_braid: Rational,
    pub avg_braid_star: Rational,
    pub avg_genus: Rational,
    pub by_ell: Vec<SignClassCount>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Tally {
    tk: u64,
    ts: u64,
    tk_star: u64,
    ts_star: u64,
    genus_sum: u64,
    by_ell: BTreeMap<u32, u64>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.tk += other.tk;
        self.ts += other.ts;
        self.tk_star += other.tk_star;
        self.ts_star += other.ts_star;
        self.genus_sum += other.genus_sum;
        for (ell, n) in other.by_ell {
            *self.by_ell.entry(ell).or_default() += n;
        }
        self
    }
}

fn tally_pattern(p: &SignPattern) -> Tally {
    let mut t = Tally::default();
    let ell = p.ell as u64;
    p.for_each_word(|e| {
        if !is_le_rev_neg(e) {
            return;
        }
        t.tk += 1;
        t.ts += ell;
        t.genus_sum += p.m as u64;
        if is_mirror_canonical_entries(e) {
            t.tk_star += 1;
            t.ts_star += ell;
        }
    });
    if t.tk > 0 {
        t.by_ell.insert(p.ell as u32, t.tk);
    }
    t
}

pub fn brute_counts(c: u32) -> Result<CensusRow> {
    brute_counts_with(c, &CensusConfig::default())
}

/// Enumerates every knot with `c` crossings and aggregates the census row.
/// Sign patterns are independent work items; totals do not depend on
/// scheduling.
pub fn brute_counts_with(c: u32, config: &CensusConfig) -> Result<CensusRow> {
    assert!(c >= 3, "crossing number must be at least 3");
    if c > config.ceiling {
        return Err(Error::ResourceBound {
            c,
            ceiling: config.ceiling,
        });
    }
    let t = map_reduce(
        sign_patterns(c),
        config.parallelism,
        |p| tally_pattern(&p),
        Tally::default,
        Tally::merge,
    );
    let tk = BigInt::from(t.tk);
    let ts = BigInt::from(t.ts);
    let tk_star = BigInt::from(t.tk_star);
    let ts_star = BigInt::from(t.ts_star);
    let max_ell = max_sign_changes(c);
    let by_ell = (0..=max_ell)
        .filter(|ell| (c + ell).is_multiple_of(2))
        .map(|ell| SignClassCount {
            c,
            ell,
            count: BigInt::from(t.by_ell.get(&ell).copied().unwrap_or(0)),
        })
        .collect();
    Ok(CensusRow {
        c,
        avg_braid: avg_braid_from_totals(c, &tk, &ts),
        avg_braid_star: avg_braid_from_totals(c, &tk_star, &ts_star),
        avg_genus: Rational::new(t.genus_sum as i64, t.tk as i64),
        tk,
        ts,
        tk_star,
        ts_star,
        by_ell,
    })
}

/// Largest possible sign-change count at crossing number `c`.
pub fn max_sign_changes(c: u32) -> u32 {
    if c.is_multiple_of(2) {
        c - 4
    } else {
        c - 2
    }
}

/// The census row computed from closed formulas only. Averages come from
/// their own formulas, not from the TS/TK ratio.
pub fn closed_row(c: u32) -> Result<CensusRow> {
    let by_ell = (0..=max_sign_changes(c))
        .filter(|ell| (c + ell).is_multiple_of(2))
        .map(|ell| SignClassCount {
            c,
            ell,
            count: closed_n(c, ell),
        })
        .collect();
    Ok(CensusRow {
        c,
        tk: closed_tk(c)?,
        ts: closed_ts(c)?,
        tk_star: closed_tk_star(c)?,
        ts_star: closed_ts_star(c)?,
        avg_braid: closed_avg_braid(c),
        avg_braid_star: closed_avg_braid_star(c),
        avg_genus: closed_avg_genus(c),
        by_ell,
    })
}

/// One disagreeing field between two census rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub c: u32,
    pub field: String,
    pub left: String,
    pub right: String,
}

/// Field-by-field comparison; empty when the rows agree exactly.
pub fn compare_rows(left: &CensusRow, right: &CensusRow) -> Vec<Mismatch> {
    let c = left.c;
    let mut out = Vec::new();
    let mut check = |field: &str, l: String, r: String| {
        if l != r {
            out.push(Mismatch {
                c,
                field: field.to_string(),
                left: l,
                right: r,
            });
        }
    };
    check("tk", left.tk.to_string(), right.tk.to_string());
    check("ts", left.ts.to_string(), right.ts.to_string());
    check(
        "tk_star",
        left.tk_star.to_string(),
        right.tk_star.to_string(),
    );
    check(
        "ts_star",
        left.ts_star.to_string(),
        right.ts_star.to_string(),
    );
    check(
        "avg_braid",
        left.avg_braid.to_string(),
        right.avg_braid.to_string(),
    );
    check(
        "avg_braid_star",
        left.avg_braid_star.to_string(),
        right.avg_braid_star.to_string(),
    );
    check(
        "avg_genus",
        left.avg_genus.to_string(),
        right.avg_genus.to_string(),
    );
    let counts = |row: &CensusRow| -> BTreeMap<u32, BigInt> {
        row.by_ell
            .iter()
            .map(|s| (s.ell, s.count.clone()))
            .collect()
    };
    let (lc, rc) = (counts(left), counts(right));
    let ells: std::collections::BTreeSet<u32> = lc.keys().chain(rc.keys()).copied().collect();
    for ell in ells {
        let zero = BigInt::from(0);
        let l = lc.get(&ell).unwrap_or(&zero);
        let r = rc.get(&ell).unwrap_or(&zero);
        check(&format!("N[{ell}]"), l.to_string(), r.to_string());
    }
    out
}

/// Brute force against closed forms for one crossing number.
pub fn verify_against_closed(c: u32, config: &CensusConfig) -> Result<Vec<Mismatch>> {
    Ok(compare_rows(
        &brute_counts_with(c, config)?,
        &closed_row(c)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contfrac::EvenWord;
    use crate::knot::crossing_number;
    use std::collections::HashSet;

    fn ew(v: &[i64]) -> EvenWord {
        EvenWord::new(v.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        let c3: Vec<_> = enumerate_words(3).collect();
        assert_eq!(c3, vec![ew(&[2, -2]), ew(&[-2, 2])]);
        let c4: Vec<_> = enumerate_words(4).collect();
        assert_eq!(c4, vec![ew(&[-2, -2])]);
        assert_eq!(enumerate_words(7).count(), 14);
    }

    #[test]
    fn words_have_requested_crossing() {
        for c in 3..=11 {
            for w in all_words(c) {
                assert_eq!(crossing_number(&w), c, "{w}");
            }
        }
    }

    #[test]
    fn buffer_walk_matches_iterator() {
        for c in 3..=12 {
            for p in sign_patterns(c) {
                let a: Vec<Vec<i64>> = p.words().collect();
                let mut b = Vec::new();
                p.for_each_word(|e| b.push(e.to_vec()));
                assert_eq!(a, b, "{p:?}");
            }
        }
    }

    #[test]
    fn all_words_are_distinct() {
        for c in 3..=12 {
            let words: Vec<_> = all_words(c).collect();
            let set: HashSet<_> = words.iter().cloned().collect();
            assert_eq!(words.len(), set.len());
        }
    }

    #[test]
    fn brute_examples() {
        let r10 = brute_counts(10).unwrap();
        assert_eq!(r10.tk, BigInt::from(85));
        assert_eq!(r10.ts, BigInt::from(242));
        assert_eq!(r10.avg_braid, Rational::new(389, 85));
        let r13 = brute_counts(13).unwrap();
        assert_eq!(r13.tk_star, BigInt::from(352));
        assert_eq!(r13.ts_star, BigInt::from(1382));
        assert_eq!(r13.avg_braid_star, Rational::new(1949, 352));
        let r4 = brute_counts(4).unwrap();
        assert_eq!(r4.ts, BigInt::from(0));
        assert_eq!(r4.avg_braid, Rational::from_integer(3));
    }

    #[test]
    fn avg_genus_at_six_matches_formula() {
        let r6 = brute_counts(6).unwrap();
        assert_eq!(r6.tk, BigInt::from(5));
        assert_eq!(r6.avg_genus, closed_avg_genus(6));
    }

    #[test]
    fn ceiling_is_enforced() {
        let cfg = CensusConfig {
            ceiling: 10,
            ..Default::default()
        };
        assert!(matches!(
            brute_counts_with(11, &cfg),
            Err(Error::ResourceBound { c: 11, ceiling: 10 })
        ));
    }

    #[test]
    fn row_sums_are_consistent() {
        for c in 3..=14 {
            let r = brute_counts(c).unwrap();
            let total: BigInt = r.by_ell.iter().map(|s| s.count.clone()).sum();
            let weighted: BigInt = r.by_ell.iter().map(|s| &s.count * s.ell).sum();
            assert_eq!(total, r.tk);
            assert_eq!(weighted, r.ts);
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        for c in [9, 14] {
            let seq = brute_counts_with(
                c,
                &CensusConfig {
                    parallelism: Parallelism::Sequential,
                    ..Default::default()
                },
            )
            .unwrap();
            let par = brute_counts(c).unwrap();
            assert_eq!(seq, par);
        }
    }

    #[test]
    fn compare_reports_fields() {
        let a = brute_counts(5).unwrap();
        let mut b = a.clone();
        b.ts = BigInt::from(9);
        let diff = compare_rows(&a, &b);
        assert_eq!(diff.len(), 1);
        assert_eq!(diff[0].field, "ts");
    }
}
