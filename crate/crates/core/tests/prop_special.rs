use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

use lucasap::special::{complex_companions, lucas_recurrence, multiplicity};
use lucasap::{mult_independence_check, quad_factors, sunit_constant, Kind, SeqParams, Shape, TrinomialSpec, UniPoly};

fn config(cases: u32, seed: u64) -> ProptestConfig {
    ProptestConfig { cases, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..ProptestConfig::default() }
}

fn shape() -> impl Strategy<Value = Shape> {
    prop_oneof![Just(Shape::MiddleTwo), Just(Shape::LowTwo), Just(Shape::TopTwo)]
}

fn spec() -> impl Strategy<Value = TrinomialSpec> {
    (shape(), 2u32..=64).prop_flat_map(|(s, a)| (Just(s), Just(a), 1..a)).prop_map(|(s, a, b)| TrinomialSpec::new(s, a, b).unwrap())
}

proptest! {
    #![proptest_config(config(200, 0x59_0001))]

    #[test]
    fn factors_multiply_back(t in spec()) {
        let poly = t.poly();
        for (p, q) in quad_factors(&t) {
            let h = UniPoly::from_i64(&[q, p, 1]);
            let (cof, rem) = poly.divrem_monic(&h);
            prop_assert!(rem.is_zero());
            prop_assert_eq!(cof.mul(&h), poly.clone());
        }
    }
}

#[test]
fn coefficient_box_is_large_enough() {
    // A wider search finds nothing the bounded one misses.
    for shape in [Shape::MiddleTwo, Shape::LowTwo, Shape::TopTwo] {
        for a in 2..=24 {
            for b in 1..a {
                let t = TrinomialSpec::new(shape, a, b).unwrap();
                let poly = t.poly();
                let mut wide = Vec::new();
                for p in -20i64..=20 {
                    for q in -20i64..=20 {
                        if poly.divrem_monic(&UniPoly::from_i64(&[q, p, 1])).1.is_zero() {
                            wide.push((p, q));
                        }
                    }
                }
                assert_eq!(wide, quad_factors(&t), "{t}");
            }
        }
    }
}

#[test]
fn only_one_complex_companion_up_to_24() {
    for a in 2..=24 {
        for b in 1..a {
            let t = TrinomialSpec::new(Shape::LowTwo, a, b).unwrap();
            for c in complex_companions(&t) {
                assert_eq!(c, (-1, -2), "{t}");
            }
        }
    }
}

/// `(kind, A, B, value, indices)` for every value taken more than three times.
fn over_three(window: usize) -> Vec<(Kind, i64, i64, BigInt, Vec<usize>)> {
    let mut out = Vec::new();
    for a in -10i64..=10 {
        for b in -10i64..=10 {
            let Ok(p) = SeqParams::new(a, b) else { continue };
            for kind in Kind::BOTH {
                let r = multiplicity(lucas_recurrence(p, kind), 0..=window);
                for (v, idx) in &r.values {
                    for &n in idx {
                        assert_eq!(&lucasap::term(p, kind, n), v);
                    }
                    if idx.len() > 3 {
                        out.push((kind, a, b, v.clone(), idx.clone()));
                    }
                }
            }
        }
    }
    out
}

#[test]
fn multiplicity_exceeds_three_only_once() {
    // u for (−1,−2): 0, 1, −1, −1, 3, −1, −5, 7, 3, −17, 11, 23, −45, −1.
    let mut u = [0i64; 14];
    u[1] = 1;
    for n in 2..14 {
        u[n] = -u[n - 1] - 2 * u[n - 2];
    }
    let ones: Vec<usize> = (0..14).filter(|&n| u[n] == -1).collect();
    assert_eq!(ones, vec![2, 3, 5, 13]);
    assert_eq!(over_three(300), vec![(Kind::First, -1, -2, BigInt::from(-1), vec![2, 3, 5, 13])]);
}

fn is_square(d: i64) -> bool {
    d >= 0 && (d as f64).sqrt().round().powi(2) as i64 == d
}

#[test]
fn independence_fails_only_for_rational_roots() {
    let mut dependent = Vec::new();
    for a in -30i64..=30 {
        for b in -30i64..=30 {
            if let Ok(p) = SeqParams::new(a, b) {
                if !mult_independence_check(p) {
                    assert!(is_square(p.d()), "{p}");
                    dependent.push((a, b));
                }
            }
        }
    }
    // α = −3, β = −9: α⁴ = β².
    assert!(dependent.contains(&(-12, -27)));
    assert_eq!((-3i64).pow(4), (-9i64).pow(2));
    assert!(mult_independence_check(SeqParams::new(-1, -2).unwrap()));
}

#[test]
fn sunit_digits_against_logarithm() {
    let c = sunit_constant();
    assert_eq!(c, sunit_constant());
    // The top term dominates: log10 C ≈ 7776·log10 2.
    let l = 7776.0 * 2f64.log10();
    assert_eq!(c.digits, l.floor() as usize + 1);
    let mantissa = 10f64.powf(l.fract());
    let leading: f64 = c.leading.parse::<f64>().unwrap() / 100.0;
    assert!((mantissa - leading).abs() < 0.011, "{mantissa} vs {leading}");
    let expected = (BigInt::from(1) << 7776) + (BigInt::from(3) << 2336) + (BigInt::from(18) << 999) + 39;
    assert_eq!(c.value, expected);
}
