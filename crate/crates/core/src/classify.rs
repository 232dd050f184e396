//! Closed-form minimality for braid index at most 4.
//!
//! A knot of braid index ≤ 4 can only map onto a torus knot `T(2m+1, 2)`, and
//! every interleaving that does so has a rigid shape. The shapes are listed
//! here as explicit word patterns indexed by `(r, m, j_0, j_1)`; a knot is
//! non-minimal exactly when one of its words matches one of them. This module
//! never composes interleavings, so it is an independent check on
//! [`crate::epim`].
//!
//! Positions `i_0`, `i_1`, `j_0`, `j_1` are 1-based throughout.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::census::enumerate_words;
use crate::contfrac::EvenWord;
use crate::epim::{epi_targets, target_knots, SearchBudget};
use crate::error::Result;
use crate::knot::{braid_index, knot_from_word, KnotClass};
use crate::par::map_reduce;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Structure {
    B2,
    T3a,
    T3b,
    T4a,
    T4b,
    T4c,
    T4d,
    Other,
}

/// Which structural pattern a word of braid index ≤ 4 follows, after making
/// its leading entry positive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureTag {
    pub tag: Structure,
    pub positions: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Torus,
    A1,
    A2,
    B,
    FourA,
    FourB1,
    FourB2,
    FourB3,
    FourC1,
    FourC2,
    FourD,
}

impl Kind {
    pub const ALL: [Kind; 11] = [
        Kind::Torus,
        Kind::A1,
        Kind::A2,
        Kind::B,
        Kind::FourA,
        Kind::FourB1,
        Kind::FourB2,
        Kind::FourB3,
        Kind::FourC1,
        Kind::FourC2,
        Kind::FourD,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Kind::Torus => "2",
            Kind::A1 => "3A1",
            Kind::A2 => "3A2",
            Kind::B => "3B",
            Kind::FourA => "4A",
            Kind::FourB1 => "4B1",
            Kind::FourB2 => "4B2",
            Kind::FourB3 => "4B3",
            Kind::FourC1 => "4C1",
            Kind::FourC2 => "4C2",
            Kind::FourD => "4D",
        }
    }

    pub fn braid(self) -> u32 {
        match self {
            Kind::Torus => 2,
            Kind::A1 | Kind::A2 | Kind::B => 3,
            _ => 4,
        }
    }

    /// `(2r + 1)(2m + 1) − 2k` for this kind, where `2k` is the word length.
    fn length_defect(self) -> usize {
        match self {
            Kind::A2 | Kind::FourB2 | Kind::FourC2 => 3,
            Kind::FourB3 => 5,
            _ => 1,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for Kind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NonminimalType {
    pub kind: Kind,
    pub r: usize,
    pub m: usize,
    pub i0: Option<usize>,
    pub i1: Option<usize>,
    pub j0: Option<usize>,
    pub j1: Option<usize>,
}

fn alt(i: usize) -> i64 {
    if i % 2 == 1 {
        1
    } else {
        -1
    }
}

/// Word of length `len` with `s_i = (-1)^{i-1}` flipped on the 1-based
/// positions where `flipped(i)` holds, and magnitude `mag(i)`.
fn build(len: usize, flipped: impl Fn(usize) -> bool, mag: impl Fn(usize) -> i64) -> Vec<i64> {
    (1..=len)
        .map(|i| {
            let s = if flipped(i) { -alt(i) } else { alt(i) };
            s * mag(i)
        })
        .collect()
}

mod pattern {
    use super::build;

    pub fn torus(len: usize) -> Vec<i64> {
        build(len, |_| false, |_| 2)
    }

    pub fn one_big(len: usize, i0: usize, n: i64) -> Vec<i64> {
        build(len, |_| false, |i| if i == i0 { n } else { 2 })
    }

    pub fn two_fours(len: usize, i0: usize, i1: usize) -> Vec<i64> {
        build(len, |_| false, |i| if i == i0 || i == i1 { 4 } else { 2 })
    }

    /// Signs alternate up to `i0` and alternate the other way after it.
    pub fn one_break(len: usize, i0: usize) -> Vec<i64> {
        build(len, |i| i > i0, |_| 2)
    }

    pub fn four_with_break(len: usize, i0: usize, i1: usize) -> Vec<i64> {
        build(len, |i| i > i1, |i| if i == i0 { 4 } else { 2 })
    }

    pub fn two_breaks(len: usize, i0: usize, i1: usize) -> Vec<i64> {
        build(len, |i| i > i0 && i <= i1, |_| 2)
    }
}

/// Leading entry made positive by negation; positions are unchanged.
fn sign_normalized(w: &EvenWord) -> Vec<i64> {
    if w.entries()[0] < 0 {
        w.negate().entries().to_vec()
    } else {
        w.entries().to_vec()
    }
}

pub fn structure(w: &EvenWord) -> StructureTag {
    let other = StructureTag {
        tag: Structure::Other,
        positions: Vec::new(),
    };
    let braid = braid_index(w);
    if braid > 4 {
        return other;
    }
    let e = sign_normalized(w);
    let len = e.len();
    let big: Vec<usize> = (1..=len).filter(|&i| e[i - 1].abs() > 2).collect();
    let same: Vec<usize> = (1..len).filter(|&i| (e[i - 1] > 0) == (e[i] > 0)).collect();
    let mags: Vec<i64> = big.iter().map(|&i| e[i - 1].abs()).collect();

    let (tag, positions, expect) = match (big.as_slice(), mags.as_slice(), same.as_slice()) {
        ([], [], []) => (Structure::B2, vec![], pattern::torus(len)),
        ([i0], [4], []) => (Structure::T3a, vec![*i0], pattern::one_big(len, *i0, 4)),
        ([], [], [i0]) => (Structure::T3b, vec![*i0], pattern::one_break(len, *i0)),
        ([i0], [6], []) => (Structure::T4a, vec![*i0], pattern::one_big(len, *i0, 6)),
        ([i0, i1], [4, 4], []) => (
            Structure::T4b,
            vec![*i0, *i1],
            pattern::two_fours(len, *i0, *i1),
        ),
        ([i0], [4], [i1]) => (
            Structure::T4c,
            vec![*i0, *i1],
            pattern::four_with_break(len, *i0, *i1),
        ),
        ([], [], [i0, i1]) => (
            Structure::T4d,
            vec![*i0, *i1],
            pattern::two_breaks(len, *i0, *i1),
        ),
        _ => return other,
    };
    if expect != e {
        return other;
    }
    StructureTag { tag, positions }
}

/// Words of the mirror orbit with a positive leading entry, deduplicated.
fn positive_orbit(w: &EvenWord) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = [w.clone(), w.rev_neg(), w.negate(), w.reverse()]
        .into_iter()
        .filter(|x| x.entries()[0] > 0)
        .map(|x| x.entries().to_vec())
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Smallest word with positive leading entry in the mirror orbit of `w`.
pub fn display_word(w: &EvenWord) -> EvenWord {
    let first = positive_orbit(w)
        .into_iter()
        .next()
        .expect("negation always yields a positive leading entry");
    EvenWord::new(first).expect("orbit words are valid")
}

/// Candidate `(pattern, type)` pairs for a word length and kind.
fn candidates(kind: Kind, len: usize) -> Vec<(Vec<i64>, NonminimalType)> {
    let target = len + kind.length_defect();
    let mut out = Vec::new();
    for m in 1.. {
        let b = 2 * m + 1;
        if 3 * b > target {
            break;
        }
        if !target.is_multiple_of(b) || (target / b).is_multiple_of(2) {
            continue;
        }
        let r = (target / b - 1) / 2;
        if r == 0 {
            continue;
        }
        let t = |i0: Option<usize>, i1: Option<usize>, j0: Option<usize>, j1: Option<usize>| {
            NonminimalType {
                kind,
                r,
                m,
                i0,
                i1,
                j0,
                j1,
            }
        };
        let js = 1..=2 * r;
        let ok = |i: usize| i >= 1 && i <= len;
        match kind {
            Kind::Torus => out.push((pattern::torus(len), t(None, None, None, None))),
            Kind::A1 | Kind::A2 | Kind::FourA => {
                for j0 in js.clone() {
                    let i0 = if kind == Kind::A2 { j0 * b - 1 } else { j0 * b };
                    let n = if kind == Kind::FourA { 6 } else { 4 };
                    if ok(i0) {
                        out.push((
                            pattern::one_big(len, i0, n),
                            t(Some(i0), None, Some(j0), None),
                        ));
                    }
                }
            }
            Kind::B => {
                for j0 in js.clone() {
                    for i0 in [j0 * b, j0 * b - 1] {
                        if ok(i0) && i0 < len {
                            out.push((
                                pattern::one_break(len, i0),
                                t(Some(i0), None, Some(j0), None),
                            ));
                        }
                    }
                }
            }
            Kind::FourB1 | Kind::FourB2 | Kind::FourB3 => {
                for j0 in js.clone() {
                    for j1 in js.clone() {
                        let pos = match kind {
                            Kind::FourB1 if j0 != j1 => Some((j0 * b, j1 * b)),
                            Kind::FourB2 if j0 != j1 => {
                                let i1 = if j1 < j0 { j1 * b } else { j1 * b - 2 };
                                Some((j0 * b - 1, i1))
                            }
                            Kind::FourB3 if j0 < j1 => Some((j0 * b - 1, j1 * b - 3)),
                            _ => None,
                        };
                        if let Some((i0, i1)) = pos {
                            if ok(i0) && ok(i1) && i0 != i1 {
                                out.push((
                                    pattern::two_fours(len, i0, i1),
                                    t(Some(i0), Some(i1), Some(j0), Some(j1)),
                                ));
                            }
                        }
                    }
                }
            }
            Kind::FourC1 | Kind::FourC2 => {
                for j0 in js.clone() {
                    for j1 in js.clone() {
                        let (i0, i1s) = match kind {
                            Kind::FourC1 => (j0 * b, [j1 * b, j1 * b - 1]),
                            _ if j1 < j0 => (j0 * b - 1, [j1 * b, j1 * b - 1]),
                            _ if j1 > j0 => (j0 * b - 1, [j1 * b - 2, j1 * b - 3]),
                            _ => continue,
                        };
                        for i1 in i1s {
                            if ok(i0) && ok(i1) && i1 < len {
                                out.push((
                                    pattern::four_with_break(len, i0, i1),
                                    t(Some(i0), Some(i1), Some(j0), Some(j1)),
                                ));
                            }
                        }
                    }
                }
            }
            Kind::FourD => {
                for j0 in js.clone() {
                    for j1 in j0..=2 * r {
                        for i0 in [j0 * b - 1, j0 * b] {
                            for i1 in [j1 * b - 1, j1 * b] {
                                if ok(i0) && ok(i1) && i0 < i1 && i1 < len {
                                    out.push((
                                        pattern::two_breaks(len, i0, i1),
                                        t(Some(i0), Some(i1), Some(j0), Some(j1)),
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Every clause that certifies `w` as non-minimal, sorted by kind.
pub fn nonminimal_matches(w: &EvenWord) -> Vec<NonminimalType> {
    let braid = braid_index(w);
    if !(2..=4).contains(&braid) {
        return Vec::new();
    }
    let orbit = positive_orbit(w);
    let mut out = Vec::new();
    for kind in Kind::ALL.into_iter().filter(|k| k.braid() == braid) {
        for (pattern, ty) in candidates(kind, w.len()) {
            if orbit.contains(&pattern) {
                out.push(ty);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// First matching clause, or `None` when the knot is minimal.
pub fn nonminimal_type(w: &EvenWord) -> Option<NonminimalType> {
    nonminimal_matches(w).into_iter().next()
}

/// One row of the classification table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    pub braid: u32,
    /// Kind label from the classifier; `None` if only the search found an
    /// epimorphism.
    pub kind: Option<Kind>,
    pub crossing: u32,
    pub word: EvenWord,
    /// Names of the target knots.
    pub images: Vec<String>,
    /// Canonical words of the target knots.
    pub image_words: Vec<EvenWord>,
    /// Every clause that matched, when more than one did.
    pub all_kinds: Vec<NonminimalType>,
}

impl Table1Row {
    pub fn type_label(&self) -> &'static str {
        self.kind.map_or("?", Kind::label)
    }

    pub fn onto(&self) -> String {
        self.images.join(" and ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1 {
    pub c_max: u32,
    pub up_to_mirror: bool,
    pub rows: Vec<Table1Row>,
    /// Knots where the classifier and the search disagree.
    pub disagreements: Vec<String>,
}

/// Non-minimal knots with braid index ≤ 4 and crossing number ≤ `c_max`.
pub fn table1(c_max: u32, up_to_mirror: bool, budget: &SearchBudget) -> Result<Table1> {
    let mut knots: Vec<KnotClass> = Vec::new();
    for c in 3..=c_max {
        for w in enumerate_words(c) {
            if braid_index(&w) <= 4 {
                knots.push(knot_from_word(&w)?);
            }
        }
    }
    if up_to_mirror {
        let mut seen = std::collections::HashSet::new();
        knots.retain(|k| seen.insert(k.mirror_class()));
    }

    let evaluated = map_reduce(
        knots,
        budget.parallelism,
        |k| {
            let found = epi_targets(&k, budget).map(|w| {
                let kinds = nonminimal_matches(k.canon());
                (k, target_knots(&w), kinds)
            });
            vec![found]
        },
        Vec::new,
        |mut a, b| {
            a.extend(b);
            a
        },
    );

    let mut rows = Vec::new();
    let mut disagreements = Vec::new();
    for item in evaluated {
        let (k, targets, kinds) = item?;
        if targets.is_empty() != kinds.is_empty() {
            disagreements.push(format!(
                "{}: search finds {} target(s), classifier finds {} clause(s)",
                k.canon(),
                targets.len(),
                kinds.len()
            ));
        }
        if targets.is_empty() && kinds.is_empty() {
            continue;
        }
        let mut images: Vec<String> = targets.iter().map(|t| t.mirror_class().name()).collect();
        images.sort_by_key(|n| (n.len(), n.clone()));
        images.dedup();
        let word = if up_to_mirror {
            display_word(k.canon())
        } else {
            k.canon().clone()
        };
        rows.push(Table1Row {
            braid: k.braid(),
            kind: kinds.first().map(|t| t.kind),
            crossing: k.crossing(),
            word,
            images,
            image_words: targets.iter().map(|t| t.canon().clone()).collect(),
            all_kinds: if kinds.len() > 1 { kinds } else { Vec::new() },
        });
    }
    rows.sort_by(|a, b| {
        (a.braid, a.kind, a.crossing, &a.images, &a.word)
            .cmp(&(b.braid, b.kind, b.crossing, &b.images, &b.word))
    });
    disagreements.sort();
    Ok(Table1 {
        c_max,
        up_to_mirror,
        rows,
        disagreements,
    })
}

/// Difference between a computed table and the reference rows, as
/// human-readable lines. Only rows with crossing number ≤ `c_max` of the
/// reference are considered.
pub fn diff_against_reference(table: &Table1) -> Vec<String> {
    let want: Vec<String> = reference::ROWS
        .iter()
        .filter(|r| r.2 <= table.c_max)
        .map(|(b, t, c, w, onto)| format!("{b} | {t} | {c} | [{w}] | {onto}"))
        .collect();
    let got: Vec<String> = table
        .rows
        .iter()
        .map(|r| {
            let w = r
                .word
                .entries()
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ");
            format!(
                "{} | {} | {} | [{}] | {}",
                r.braid,
                r.type_label(),
                r.crossing,
                w,
                r.onto()
            )
        })
        .collect();
    let mut out = Vec::new();
    for line in &want {
        if !got.contains(line) {
            out.push(format!("- {line}"));
        }
    }
    for line in &got {
        if !want.contains(line) {
            out.push(format!("+ {line}"));
        }
    }
    if out.is_empty() && want != got {
        out.push("rows match but their order differs".to_string());
    }
    out
}

pub mod reference {
    //! Non-minimal knots with braid index ≤ 4 and at most 15 crossings, up to
    //! mirror image: (braid index, type, crossing number, word, targets).

    #[rustfmt::skip]
    pub const ROWS: [(u32, &str, u32, &str, &str); 28] = [
        (2, "2", 9, "2, -2, 2, -2, 2, -2, 2, -2", "3_1"),
        (2, "2", 15, "2, -2, 2, -2, 2, -2, 2, -2, 2, -2, 2, -2, 2, -2", "3_1 and 5_1"),
        (3, "3A1", 11, "2, -2, 2, -2, 2, -4, 2, -2", "3_1"),
        (3, "3A2", 9, "2, -4, 2, -2, 2, -2", "3_1"),
        (3, "3A2", 15, "2, -4, 2, -2, 2, -2, 2, -2, 2, -2, 2, -2", "3_1"),
        (3, "3A2", 15, "2, -2, 2, -2, 2, -2, 2, -4, 2, -2, 2, -2", "3_1"),
        (3, "3A2", 15, "2, -2, 2, -4, 2, -2, 2, -2, 2, -2, 2, -2", "5_1"),
        (3, "3B", 10, "2, -2, -2, 2, -2, 2, -2, 2", "3_1"),
        (3, "3B", 10, "2, -2, 2, -2, 2, 2, -2, 2", "3_1"),
        (4, "4A", 13, "2, -2, 2, -2, 2, -6, 2, -2", "3_1"),
        (4, "4B1", 13, "2, -2, 4, -2, 2, -4, 2, -2", "3_1"),
        (4, "4B2", 11, "2, -4, 2, -4, 2, -2", "3_1"),
        (4, "4B3", 9, "2, -4, 4, -2", "3_1"),
        (4, "4B3", 15, "2, -4, 2, -2, 2, -4, 2, -2, 2, -2", "3_1"),
        (4, "4B3", 15, "2, -4, 2, -2, 2, -2, 2, -2, 4, -2", "3_1"),
        (4, "4B3", 15, "2, -4, 4, -2, 2, -2, 2, -2, 2, -2", "3_1"),
        (4, "4B3", 15, "2, -2, 2, -2, 4, -4, 2, -2, 2, -2", "3_1"),
        (4, "4B3", 15, "2, -2, 2, -4, 2, -2, 4, -2, 2, -2", "5_1"),
        (4, "4C1", 12, "2, -2, -4, 2, -2, 2, -2, 2", "3_1"),
        (4, "4C1", 12, "2, -2, -2, 2, -2, 4, -2, 2", "3_1"),
        (4, "4C1", 12, "2, -2, 2, -2, 2, 4, -2, 2", "3_1"),
        (4, "4C1", 12, "2, -2, 2, 2, -2, 4, -2, 2", "3_1"),
        (4, "4C2", 10, "2, -4, 2, -2, -2, 2", "3_1"),
        (4, "4C2", 10, "2, -4, 2, 2, -2, 2", "3_1"),
        (4, "4D", 11, "2, -2, -2, -2, 2, -2, 2, -2", "3_1"),
        (4, "4D", 11, "2, -2, -2, 2, -2, -2, 2, -2", "3_1"),
        (4, "4D", 11, "2, -2, -2, 2, -2, 2, 2, -2", "3_1"),
        (4, "4D", 11, "2, -2, 2, 2, -2, -2, 2, -2", "3_1"),
    ];
}

/// The word `[2, -2, ..., 2, -2]` of length `2k`, i.e. `T(2k+1, 2)`.
pub fn torus_word(k: usize) -> EvenWord {
    EvenWord::new(pattern::torus(2 * k)).expect("k ≥ 1")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ew(v: &[i64]) -> EvenWord {
        EvenWord::new(v.to_vec()).unwrap()
    }

    #[test]
    fn structure_examples() {
        assert_eq!(structure(&ew(&[2, -2, 2, -2])).tag, Structure::B2);
        let s = structure(&ew(&[2, -4, 2, -2, 2, -2]));
        assert_eq!((s.tag, s.positions), (Structure::T3a, vec![2]));
        let s = structure(&ew(&[2, -2, -2, 2, -2, 2, -2, 2]));
        assert_eq!((s.tag, s.positions), (Structure::T3b, vec![2]));
        assert_eq!(structure(&ew(&[-2, 2, -6, 2])).tag, Structure::T4a);
        assert_eq!(structure(&ew(&[2, 8])).tag, Structure::Other);
    }

    #[test]
    fn nonminimal_examples() {
        assert_eq!(nonminimal_type(&ew(&[2, -2, 2, -2, 2, -2])), None);
        let t = nonminimal_type(&ew(&[2, -4, 4, -2])).unwrap();
        assert_eq!(t.kind, Kind::FourB3);
        assert_eq!((t.r, t.m), (1, 1));
        let t = nonminimal_type(&ew(&[2, -2, -2, -2, 2, -2, 2, -2])).unwrap();
        assert_eq!(t.kind, Kind::FourD);
        let t = nonminimal_type(&torus_word(4)).unwrap();
        assert_eq!((t.kind, t.r, t.m), (Kind::Torus, 1, 1));
        assert_eq!(nonminimal_type(&ew(&[2, -2])), None);
    }

    #[test]
    fn classification_is_mirror_invariant() {
        let w = ew(&[2, -2, -2, -2, 2, -2, 2, -2]);
        for x in [w.rev_neg(), w.negate(), w.reverse()] {
            assert_eq!(nonminimal_type(&x), nonminimal_type(&w));
        }
    }

    #[test]
    fn display_word_prefers_positive_lead() {
        assert_eq!(
            display_word(&ew(&[-2, 2, -2, 2, -4, 2])),
            ew(&[2, -4, 2, -2, 2, -2])
        );
    }

    #[test]
    fn small_tables() {
        let budget = SearchBudget::default();
        assert!(table1(3, true, &budget).unwrap().rows.is_empty());
        let t = table1(9, true, &budget).unwrap();
        let kinds: Vec<_> = t.rows.iter().map(|r| r.type_label()).collect();
        assert_eq!(kinds, vec!["2", "3A2", "4B3"]);
        assert!(t.disagreements.is_empty());
        assert!(
            diff_against_reference(&t).is_empty(),
            "{:?}",
            diff_against_reference(&t)
        );
    }
}
