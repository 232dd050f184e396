use num_bigint::BigInt;
use proptest::prelude::*;

use bridgekit_core::contfrac::{eval, to_reduced_even, IntWord};
use bridgekit_core::epim::{ors_compose, EpiWitness, OrsParams};
use bridgekit_core::knot::{
    braid_index, crossing_number, genus, knot_canonical, knot_from_word, mirror_canonical,
};
use bridgekit_core::{Error, EvenWord, Rational};

fn even_word(max_len: usize, max_half: i64) -> impl Strategy<Value = EvenWord> {
    (1..=max_len / 2)
        .prop_flat_map(move |m| {
            prop::collection::vec(
                (1..=max_half, any::<bool>()).prop_map(|(a, neg)| if neg { -2 * a } else { 2 * a }),
                2 * m,
            )
        })
        .prop_map(|v| EvenWord::new(v).unwrap())
}

fn int_word() -> impl Strategy<Value = IntWord> {
    prop::collection::vec((-9i64..=9).prop_filter("nonzero", |a| *a != 0), 1..10)
        .prop_map(|v| IntWord::new(v).unwrap())
}

/// `1/(a_1 + 1/(a_2 + ...))` as the Möbius product of `[[0, 1], [1, a_i]]`
/// applied to 0.
fn convergent_oracle(e: &[i64]) -> Option<(BigInt, BigInt)> {
    let (mut a, mut b, mut c, mut d) = (
        BigInt::from(1),
        BigInt::from(0),
        BigInt::from(0),
        BigInt::from(1),
    );
    for &x in e {
        // [[a, b], [c, d]] · [[0, 1], [1, x]]
        let (na, nb) = (b.clone(), &a + &b * x);
        let (nc, nd) = (d.clone(), &c + &d * x);
        (a, b, c, d) = (na, nb, nc, nd);
    }
    let _ = (a, c);
    (d != BigInt::from(0)).then_some((b, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn eval_matches_convergents(w in int_word()) {
        if let Ok(v) = eval(&w) {
            let (p, q) = convergent_oracle(w.entries()).expect("finite value has nonzero denominator");
            prop_assert_eq!(v, Rational::new(p, q));
        }
    }

    #[test]
    fn even_words_evaluate_and_round_trip(w in even_word(12, 4)) {
        let r = w.eval();
        let (p, q) = convergent_oracle(w.entries()).unwrap();
        prop_assert_eq!(&r, &Rational::new(p, q));
        prop_assert_eq!(to_reduced_even(&r).unwrap(), w);
    }

    #[test]
    fn display_parse_round_trip(w in even_word(12, 6)) {
        let s = w.to_string();
        prop_assert_eq!(s.parse::<EvenWord>().unwrap(), w);
    }

    #[test]
    fn orbit_maps_are_involutions(w in even_word(12, 4)) {
        prop_assert_eq!(w.reverse().reverse(), w.clone());
        prop_assert_eq!(w.negate().negate(), w.clone());
        prop_assert_eq!(w.rev_neg().rev_neg(), w.clone());
        prop_assert_eq!(w.reverse().negate(), w.rev_neg());
    }

    #[test]
    fn invariants_are_orbit_invariant(w in even_word(12, 4)) {
        for x in [w.reverse(), w.negate(), w.rev_neg()] {
            prop_assert_eq!(x.sign_changes(), w.sign_changes());
            prop_assert_eq!(crossing_number(&x), crossing_number(&w));
            prop_assert_eq!(braid_index(&x), braid_index(&w));
            prop_assert_eq!(genus(&x), genus(&w));
            prop_assert_eq!(mirror_canonical(&x), mirror_canonical(&w));
        }
        prop_assert_eq!(knot_canonical(&w.rev_neg()), knot_canonical(&w));
        let k = knot_canonical(&w);
        prop_assert_eq!(knot_canonical(&k), k);
    }

    #[test]
    fn crossing_bounds_braid(w in even_word(12, 4)) {
        // 2 ≤ braid ≤ c/2 + 1 for nontrivial two-bridge knots.
        let c = crossing_number(&w);
        let b = braid_index(&w);
        prop_assert!(b >= 2 && 2 * b <= c + 2);
    }

    #[test]
    fn odd_numerators_are_rejected(p in 1i64..500, q in 1i64..500) {
        let p = 2 * p + 1;
        let r = Rational::new(p, 2 * q + 1);
        if r.numer() % 2 != BigInt::from(0) {
            let rejected = matches!(to_reduced_even(&r), Err(Error::NotAKnotFraction { .. }));
            prop_assert!(rejected);
        }
    }

    #[test]
    fn even_over_odd_always_expands(p in 1i64..2000, q in 0i64..2000) {
        let (p, q) = (2 * p, 2 * q + 1);
        let r = Rational::new(p, q);
        if r.abs() < Rational::one() && !r.is_zero() {
            let w = to_reduced_even(&r).unwrap();
            prop_assert_eq!(w.eval(), r);
        }
    }

    #[test]
    fn compositions_are_witnesses(
        target in even_word(4, 2),
        r in 1u32..=2,
        signs in prop::collection::vec(any::<bool>(), 4),
        gaps in prop::collection::vec(-3i64..=3, 4),
    ) {
        let n = 2 * r as usize;
        let mut eps = vec![1i8];
        eps.extend(signs[..n].iter().map(|&s| if s { 1 } else { -1 }));
        let cvec: Vec<i64> = (0..n)
            .map(|j| if gaps[j] == 0 && eps[j] != eps[j + 1] { 1 } else { gaps[j] })
            .collect();
        let p = OrsParams::new(target.clone(), r, eps, cvec).unwrap();
        let w = EpiWitness::from_params(p.clone()).unwrap();
        prop_assert!(w.verify().is_ok());
        prop_assert_eq!(&w.small, &knot_from_word(&target).unwrap());
        let composed = ors_compose(&p).unwrap();
        prop_assert!(crossing_number(&composed) >= 3 * crossing_number(&target));
        prop_assert_eq!(w.audit.terms().iter().sum::<i64>(), w.audit.slack);
    }
}
