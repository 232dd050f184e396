//! Enumeration of reduced even words by crossing number.
//!
//! A word of length `2m` with `ℓ` sign changes and entries `2·s_i·n_i`
//! (`n_i ≥ 1`) has crossing number `2·Σn_i − ℓ`. For fixed `c` the words are
//! therefore parameterized by `m`, `ℓ ≡ c (mod 2)` with `ℓ ≤ 2m − 1`, a sign
//! pattern (leading sign plus the set of change positions) and a composition
//! of `(c + ℓ)/2` into `2m` positive parts.

use itertools::Itertools;

use crate::contfrac::EvenWord;
use crate::knot::is_le_rev_neg;

/// One independent slice of the enumeration: every magnitude composition for
/// a fixed length and sign pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignPattern {
    /// Half the word length.
    pub m: usize,
    /// Number of sign changes.
    pub ell: usize,
    /// Sign of each entry, `+1` or `-1`.
    pub signs: Vec<i64>,
    /// `Σ n_i`, i.e. `(c + ℓ)/2`.
    pub magnitude: usize,
}

/// `(m, ℓ)` pairs that admit words of crossing number `c`, in increasing
/// order of `m` then `ℓ`.
pub fn length_sign_pairs(c: u32) -> Vec<(usize, usize)> {
    let c = c as usize;
    let mut out = Vec::new();
    for m in 1.. {
        // The smallest crossing number at length 2m is 2m + 1 (all ±2,
        // alternating), so m ≤ (c - 1)/2.
        if 2 * m + 1 > c {
            break;
        }
        for ell in (c % 2..2 * m).step_by(2) {
            if (c + ell) / 2 >= 2 * m {
                out.push((m, ell));
            }
        }
    }
    out
}

/// All sign patterns for crossing number `c`, in deterministic order.
pub fn sign_patterns(c: u32) -> Vec<SignPattern> {
    let mut out = Vec::new();
    for (m, ell) in length_sign_pairs(c) {
        let len = 2 * m;
        for lead in [1i64, -1] {
            for changes in (0..len - 1).combinations(ell) {
                let mut signs = Vec::with_capacity(len);
                let mut s = lead;
                let mut next_change = changes.iter().peekable();
                for i in 0..len {
                    signs.push(s);
                    if next_change.peek() == Some(&&i) {
                        next_change.next();
                        s = -s;
                    }
                }
                out.push(SignPattern {
                    m,
                    ell,
                    signs,
                    magnitude: (c as usize + ell) / 2,
                });
            }
        }
    }
    out
}

impl SignPattern {
    /// Every word with this sign pattern, canonical or not.
    pub fn words(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        let parts = self.signs.len();
        (1..self.magnitude)
            .combinations(parts - 1)
            .map(move |cuts| {
                let mut prev = 0;
                let mut entries = Vec::with_capacity(parts);
                for (i, &s) in self.signs.iter().enumerate() {
                    let end = if i + 1 == parts {
                        self.magnitude
                    } else {
                        cuts[i]
                    };
                    entries.push(2 * s * (end - prev) as i64);
                    prev = end;
                }
                entries
            })
    }

    /// Calls `f` on every word of this pattern, reusing one buffer. Same
    /// order as [`SignPattern::words`].
    pub fn for_each_word(&self, mut f: impl FnMut(&[i64])) {
        let parts = self.signs.len();
        // Magnitudes n_i ≥ 1 summing to `magnitude`, in lexicographic order.
        let mut n = vec![1usize; parts];
        n[parts - 1] = self.magnitude + 1 - parts;
        let mut buf = vec![0i64; parts];
        loop {
            for i in 0..parts {
                buf[i] = 2 * self.signs[i] * n[i] as i64;
            }
            f(&buf);
            // Bump the entry just left of the rightmost part above 1, then
            // push everything after it back to the minimal tail.
            let Some(p) = (1..parts).rev().find(|&i| n[i] > 1) else {
                break;
            };
            let j = p - 1;
            let tail: usize = n[j + 1..].iter().sum::<usize>() - 1;
            n[j] += 1;
            for x in &mut n[j + 1..parts - 1] {
                *x = 1;
            }
            n[parts - 1] = tail - (parts - 2 - j);
        }
    }
}

/// Canonical words (`w ≤ rev_neg(w)`) of crossing number `c`, one per knot,
/// in deterministic order.
pub fn enumerate_words(c: u32) -> impl Iterator<Item = EvenWord> {
    sign_patterns(c).into_iter().flat_map(|p| {
        p.words()
            .filter(|e| is_le_rev_neg(e))
            .map(EvenWord::from_vec_unchecked)
            .collect::<Vec<_>>()
    })
}

/// Every reduced even word of crossing number `c`, canonical or not.
pub fn all_words(c: u32) -> impl Iterator<Item = EvenWord> {
    sign_patterns(c).into_iter().flat_map(|p| {
        p.words()
            .map(EvenWord::from_vec_unchecked)
            .collect::<Vec<_>>()
    })
}
