//! Two-bridge knots as equivalence classes of reduced even words.
//!
//! `K(w)` and `K(rev_neg(w))` are the same knot; `negate(w)` and `reverse(w)`
//! give its mirror image. A [`KnotClass`] picks the lexicographically smaller
//! of `w` and `rev_neg(w)`, a [`MirrorClass`] the smallest of all four.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::contfrac::EvenWord;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KnotClass {
    canon: EvenWord,
    crossing: u32,
    braid: u32,
    genus: u32,
    signchg: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MirrorClass {
    canon: EvenWord,
}

pub fn crossing_number(w: &EvenWord) -> u32 {
    (w.abs_sum() - w.sign_changes() as i64) as u32
}

pub fn braid_index(w: &EvenWord) -> u32 {
    (w.abs_sum() / 2 - w.sign_changes() as i64 + 1) as u32
}

pub fn genus(w: &EvenWord) -> u32 {
    (w.len() / 2) as u32
}

/// Smaller of `w` and `rev_neg(w)`.
pub fn knot_canonical(w: &EvenWord) -> EvenWord {
    let rn = w.rev_neg();
    if rn < *w {
        rn
    } else {
        w.clone()
    }
}

/// Smallest word in `{w, rev_neg(w), negate(w), reverse(w)}`.
pub fn mirror_canonical(w: &EvenWord) -> EvenWord {
    [w.rev_neg(), w.negate(), w.reverse()]
        .into_iter()
        .fold(w.clone(), |best, x| if x < best { x } else { best })
}

/// True when `w` is the representative [`knot_from_word`] would pick.
pub fn is_knot_canonical(w: &EvenWord) -> bool {
    is_le_rev_neg(w.entries())
}

/// `w <= rev_neg(w)` without allocating.
pub(crate) fn is_le_rev_neg(e: &[i64]) -> bool {
    let n = e.len();
    for i in 0..n {
        let other = -e[n - 1 - i];
        match e[i].cmp(&other) {
            std::cmp::Ordering::Less => return true,
            std::cmp::Ordering::Greater => return false,
            std::cmp::Ordering::Equal => {}
        }
    }
    true
}

/// True when `w` is the minimum of its four-element mirror orbit.
pub(crate) fn is_mirror_canonical_entries(e: &[i64]) -> bool {
    let n = e.len();
    let le = |f: &dyn Fn(usize) -> i64| -> bool {
        for (i, x) in e.iter().enumerate() {
            match x.cmp(&f(i)) {
                std::cmp::Ordering::Less => return true,
                std::cmp::Ordering::Greater => return false,
                std::cmp::Ordering::Equal => {}
            }
        }
        true
    };
    le(&|i| -e[n - 1 - i]) && le(&|i| -e[i]) && le(&|i| e[n - 1 - i])
}

pub fn knot_from_word(w: &EvenWord) -> Result<KnotClass> {
    if w.eval().denom().is_even() {
        return Err(Error::NotAKnot(w.to_string()));
    }
    let canon = knot_canonical(w);
    Ok(KnotClass {
        crossing: crossing_number(&canon),
        braid: braid_index(&canon),
        genus: genus(&canon),
        signchg: canon.sign_changes() as u32,
        canon,
    })
}

impl KnotClass {
    pub fn canon(&self) -> &EvenWord {
        &self.canon
    }

    pub fn crossing(&self) -> u32 {
        self.crossing
    }

    pub fn braid(&self) -> u32 {
        self.braid
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn sign_changes(&self) -> u32 {
        self.signchg
    }

    /// `Some(2m+1)` when this is the torus knot `T(2m+1, 2)`.
    pub fn torus_parameter(&self) -> Option<u32> {
        is_torus_two_strand(self)
    }

    pub fn mirror_class(&self) -> MirrorClass {
        mirror_class(self)
    }

    /// Small built-in table of names; everything else is named by its word.
    pub fn name(&self) -> String {
        self.mirror_class().name()
    }
}

pub fn is_torus_two_strand(k: &KnotClass) -> Option<u32> {
    let e = k.canon.entries();
    let alternating = e
        .iter()
        .enumerate()
        .all(|(i, &a)| a == if i % 2 == 0 { 2 } else { -2 });
    if alternating {
        Some(e.len() as u32 + 1)
    } else {
        None
    }
}

pub fn mirror_class(k: &KnotClass) -> MirrorClass {
    MirrorClass {
        canon: mirror_canonical(&k.canon),
    }
}

impl MirrorClass {
    pub fn from_word(w: &EvenWord) -> MirrorClass {
        MirrorClass {
            canon: mirror_canonical(w),
        }
    }

    pub fn canon(&self) -> &EvenWord {
        &self.canon
    }

    /// Idempotent: the representative is already orbit-minimal.
    pub fn mirror_class(&self) -> MirrorClass {
        MirrorClass::from_word(&self.canon)
    }

    pub fn crossing(&self) -> u32 {
        crossing_number(&self.canon)
    }

    pub fn braid(&self) -> u32 {
        braid_index(&self.canon)
    }

    pub fn genus(&self) -> u32 {
        genus(&self.canon)
    }

    pub fn name(&self) -> String {
        match self.canon.entries() {
            [-2, 2] => "3_1".to_string(),
            [-2, -2] => "4_1".to_string(),
            [-2, 2, -2, 2] => "5_1".to_string(),
            _ => self.canon.to_string(),
        }
    }
}

impl fmt::Display for KnotClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K({})", self.canon)
    }
}

#[derive(Serialize, Deserialize)]
struct KnotJson {
    word: EvenWord,
    crossing: u32,
    braid: u32,
    genus: u32,
}

impl Serialize for KnotClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        KnotJson {
            word: self.canon.clone(),
            crossing: self.crossing,
            braid: self.braid,
            genus: self.genus,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for KnotClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = KnotJson::deserialize(d)?;
        let k = knot_from_word(&raw.word).map_err(serde::de::Error::custom)?;
        if (k.crossing, k.braid, k.genus) != (raw.crossing, raw.braid, raw.genus) {
            return Err(serde::de::Error::custom(format!(
                "invariants do not match word {}",
                raw.word
            )));
        }
        Ok(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ew(v: &[i64]) -> EvenWord {
        EvenWord::new(v.to_vec()).unwrap()
    }

    fn k(v: &[i64]) -> KnotClass {
        knot_from_word(&ew(v)).unwrap()
    }

    #[test]
    fn trefoil() {
        let t = k(&[2, -2]);
        assert_eq!((t.crossing(), t.braid(), t.genus()), (3, 2, 1));
        assert_eq!(is_torus_two_strand(&t), Some(3));
    }

    #[test]
    fn printed_examples() {
        let a = k(&[2, -4, 4, -2]);
        assert_eq!((a.crossing(), a.braid()), (9, 4));
        let t9 = k(&[2, -2, 2, -2, 2, -2, 2, -2]);
        assert_eq!((t9.crossing(), t9.braid()), (9, 2));
        assert_eq!(is_torus_two_strand(&t9), Some(9));
        assert_eq!(crossing_number(&ew(&[2, -2, 2, -2, 2, -4, 2, -2])), 11);
        assert_eq!(braid_index(&ew(&[2, 2])), 3);
        assert_eq!(genus(&ew(&[2, -2, 2, -2])), 2);
        assert_eq!(is_torus_two_strand(&k(&[2, 2])), None);
    }

    #[test]
    fn canonical_choice() {
        let a = k(&[2, -2, 4, -2, 2, -2, 2, -2]);
        let b = k(&[2, -2, 2, -2, 2, -4, 2, -2]);
        assert_eq!(a, b);
        assert_eq!(a.canon(), &ew(&[2, -2, 2, -2, 2, -4, 2, -2]));
    }

    #[test]
    fn mirror_examples() {
        assert_eq!(k(&[2, 2]).mirror_class(), k(&[-2, -2]).mirror_class());
        assert_ne!(k(&[2, -2]), k(&[-2, 2]));
        assert_eq!(k(&[2, -2]).mirror_class(), k(&[-2, 2]).mirror_class());
        let m = k(&[2, -4, 4, -2]).mirror_class();
        assert_eq!(m.mirror_class(), m);
        assert_eq!(k(&[2, -2]).name(), "3_1");
        assert_eq!(k(&[-2, 2, -2, 2]).name(), "5_1");
        assert_eq!(k(&[2, 2]).name(), "4_1");
    }

    #[test]
    fn canonicity_predicates_agree() {
        for w in [
            ew(&[2, -2]),
            ew(&[-2, 2]),
            ew(&[2, 4, -2, 2]),
            ew(&[-4, 2, 2, 2]),
            ew(&[2, 2, -2, -2]),
        ] {
            assert_eq!(is_knot_canonical(&w), knot_canonical(&w) == w);
            assert_eq!(
                is_mirror_canonical_entries(w.entries()),
                mirror_canonical(&w) == w
            );
        }
    }

    #[test]
    fn json_shape() {
        let json = serde_json::to_string(&k(&[2, -4, 4, -2])).unwrap();
        assert_eq!(
            json,
            r#"{"word":"2,-4,4,-2","crossing":9,"braid":4,"genus":2}"#
        );
        let back: KnotClass = serde_json::from_str(&json).unwrap();
        assert_eq!(back, k(&[2, -4, 4, -2]));
        assert!(serde_json::from_str::<KnotClass>(
            r#"{"word":"2,-4,4,-2","crossing":8,"braid":4,"genus":2}"#
        )
        .is_err());
    }
}
