use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

use lucasap::apsearch::{canonical, companion, IndexForm};
use lucasap::{detect_families, find_aps, is_ap, verify_family, APFamily, Kind, LucasSequence, SeqParams, UniPoly};

fn config(cases: u32, seed: u64) -> ProptestConfig {
    ProptestConfig { cases, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..ProptestConfig::default() }
}

fn big() -> impl Strategy<Value = BigInt> {
    prop_oneof![(-20i64..=20).prop_map(BigInt::from), any::<i64>().prop_map(BigInt::from)]
}

fn index_form() -> impl Strategy<Value = IndexForm> {
    (-5i64..=5, 0i64..=3).prop_map(|(o, s)| IndexForm::new(o, s))
}

proptest! {
    #![proptest_config(config(2000, 0xa9_0001))]

    #[test]
    fn is_ap_is_symmetric(x in big(), y in big(), z in big()) {
        prop_assert_eq!(is_ap(&x, &y, &z), is_ap(&z, &y, &x));
    }

    #[test]
    fn is_ap_on_constructed_progressions(x in big(), d in big()) {
        let y = &x + &d;
        let z = &y + &d;
        prop_assert_eq!(is_ap(&x, &y, &z), d != BigInt::from(0));
    }

    #[test]
    fn triple_canonicalization_is_idempotent(k in 0usize..50, l in 0usize..50, m in 0usize..50) {
        let c = canonical(k, l, m);
        prop_assert_eq!(canonical(c.0, c.1, c.2), c);
        prop_assert_eq!(canonical(m, l, k), c);
    }

    #[test]
    fn family_canonicalization_is_idempotent(k in index_form(), l in index_form(), m in index_form(), t in -3i64..=3) {
        let f = APFamily::new(k, l, m, t);
        let c = f.canonical();
        prop_assert_eq!(c.canonical(), c.clone());
        // Same index sets, possibly reversed.
        for s in 0..5 {
            let (a, b, e) = f.indices_at(t + s);
            let got = c.indices_at(c.t_min + s);
            prop_assert!(got == (a, b, e) || got == (e, b, a), "{} vs {}", f, c);
        }
    }
}

fn pair() -> impl Strategy<Value = SeqParams> {
    (-12i64..=12, -12i64..=12).prop_filter_map("admissible", |(a, b)| SeqParams::new(a, b).ok())
}

proptest! {
    #![proptest_config(config(120, 0xa9_0002))]

    #[test]
    fn find_aps_output_revalidates(p in pair(), kind in prop_oneof![Just(Kind::First), Just(Kind::Second)]) {
        let aps = find_aps(p, kind, 80);
        let set: BTreeSet<_> = aps.iter().map(|t| t.indices()).collect();
        let mut fresh = LucasSequence::new(p, kind);
        for t in &aps {
            prop_assert!(t.k < t.m);
            prop_assert!(!set.contains(&(t.m, t.l, t.k)));
            let (x, y, z) = (fresh.term(t.k).clone(), fresh.term(t.l).clone(), fresh.term(t.m).clone());
            prop_assert!(is_ap(&x, &y, &z), "{} {}", p, t);
            prop_assert_eq!(&t.values, &[x, y, z]);
        }
        let keys: Vec<_> = aps.iter().map(|t| (t.m, t.k, t.l)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        prop_assert_eq!(keys, sorted);
    }
}

fn s_value(seq: &mut LucasSequence, (a, b, c): (i64, i64, i64)) -> BigInt {
    seq.term(a as usize).clone() - seq.term(b as usize) * 2u32 + seq.term(c as usize)
}

#[test]
fn family_certificates_are_sound_to_500() {
    let exceptional = [(1, 1), (-1, 1), (1, 2), (-1, 2), (-1, -2)];
    let mut verified = 0;
    for (a, b) in exceptional {
        let p = SeqParams::new(a, b).unwrap();
        for kind in Kind::BOTH {
            for f in detect_families(p, kind, 12) {
                if verify_family(&f, p, kind, 50).is_err() {
                    continue;
                }
                verified += 1;
                let mut seq = LucasSequence::new(p, kind);
                for t in f.t_min..=500 {
                    assert_eq!(s_value(&mut seq, f.indices_at(t)), BigInt::from(0), "{kind} {p} {f} t={t}");
                }
            }
        }
    }
    assert!(verified >= 5);
}

#[test]
fn divisibility_matches_identity() {
    let zero = BigInt::from(0);
    for a in -8i64..=8 {
        for b in -8i64..=8 {
            let Ok(p) = SeqParams::new(a, b) else { continue };
            let comp = companion(p);
            for kind in Kind::BOTH {
                let mut seq = LucasSequence::new(p, kind);
                let mut expected = BTreeSet::new();
                for e1 in 0..=12i64 {
                    for e2 in 0..=12i64 {
                        for e3 in e1 + 1..=12 {
                            if e2 == e1 || e2 == e3 {
                                continue;
                            }
                            let t = UniPoly::monomial(1, e1 as usize)
                                .add(&UniPoly::monomial(-2, e2 as usize))
                                .add(&UniPoly::monomial(1, e3 as usize));
                            let divides = t.divrem_monic(&comp).1.is_zero();
                            let s0 = s_value(&mut seq, (e1, e2, e3));
                            let s1 = s_value(&mut seq, (e1 + 1, e2 + 1, e3 + 1));
                            assert_eq!(divides, s0 == zero && s1 == zero, "{kind} {p} ({e1},{e2},{e3})");
                            if divides && e1.min(e2) == 0 {
                                expected.insert(APFamily::shift(e1, e2, e3));
                            }
                        }
                    }
                }
                let found: BTreeSet<_> = detect_families(p, kind, 12).into_iter().collect();
                assert_eq!(found, expected, "{kind} {p}");
            }
        }
    }
}

#[test]
fn equal_value_instances_are_trivial() {
    // (−1,−2): u_3 = u_2 = u_5 = −1 at t = 2 of (t+1, t, t+3).
    let p = SeqParams::new(-1, -2).unwrap();
    let f = APFamily::shift(1, 0, 3);
    let report = verify_family(&f, p, Kind::First, 40).unwrap();
    assert!(report.degenerate_t.contains(&2), "{report:?}");
    assert_eq!(report.checked, report.nontrivial);
}
