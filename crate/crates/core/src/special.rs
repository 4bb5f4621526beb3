//! Trinomial factors, value multiplicities, multiplicative independence of the
//! roots and the S-unit counting constant.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::params::{Kind, SeqParams};
use crate::poly::UniPoly;
use crate::sequence::Recurrence;

/// Which normalized trinomial `X^{e1} − 2X^{e2} + X^{e3}` reduces to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    /// `X^a − 2X^b + 1`
    MiddleTwo,
    /// `X^a + X^b − 2`
    LowTwo,
    /// `2X^a − X^b − 1`
    TopTwo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TrinomialSpec {
    pub shape: Shape,
    pub a: u32,
    pub b: u32,
}

impl TrinomialSpec {
    pub fn new(shape: Shape, a: u32, b: u32) -> Option<Self> {
        (a > b && b >= 1).then_some(TrinomialSpec { shape, a, b })
    }

    /// From `X^{plus1} − 2X^{minus2} + X^{plus3}`, dividing out the lowest power.
    pub fn from_exponents(plus1: u32, minus2: u32, plus3: u32) -> Option<Self> {
        let (lo, hi) = (plus1.min(plus3), plus1.max(plus3));
        if lo == hi || minus2 == lo || minus2 == hi {
            return None;
        }
        let base = lo.min(minus2);
        if minus2 > hi {
            Self::new(Shape::TopTwo, minus2 - base, hi - base)
        } else if minus2 > lo {
            Self::new(Shape::MiddleTwo, hi - base, minus2 - base)
        } else {
            Self::new(Shape::LowTwo, hi - base, lo - base)
        }
    }

    pub fn poly(&self) -> UniPoly {
        let (a, b) = (self.a as usize, self.b as usize);
        let (ca, cb, c0) = match self.shape {
            Shape::MiddleTwo => (1, -2, 1),
            Shape::LowTwo => (1, 1, -2),
            Shape::TopTwo => (2, -1, -1),
        };
        UniPoly::monomial(ca, a).add(&UniPoly::monomial(cb, b)).add(&UniPoly::constant(c0))
    }
}

impl fmt::Display for TrinomialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly().fmt_in("X"))
    }
}

/// Largest exponent accepted by [`quad_factors`].
pub const TRINOMIAL_CAP: u32 = 64;

/// Every root of the three shapes has modulus at most 2, so `|p|, |q| ≤ 4`.
const COEFF_BOX: i64 = 4;

/// Monic quadratics `X² + pX + q` dividing the trinomial, ordered by `(p, q)`.
pub fn quad_factors(spec: &TrinomialSpec) -> Vec<(i64, i64)> {
    assert!(spec.a <= TRINOMIAL_CAP, "exponent above cap {TRINOMIAL_CAP}");
    let t = spec.poly();
    let mut out = Vec::new();
    for p in -COEFF_BOX..=COEFF_BOX {
        for q in -COEFF_BOX..=COEFF_BOX {
            let h = UniPoly::from_i64(&[q, p, 1]);
            let (cof, rem) = t.divrem_monic(&h);
            if rem.is_zero() {
                debug_assert_eq!(cof.mul(&h), t);
                out.push((p, q));
            }
        }
    }
    out
}

/// The exponent pairs left after the divisibility reduction for complex companions.
pub const COMPANION_EXPONENTS: [(u32, u32); 4] = [(3, 2), (3, 1), (2, 1), (4, 2)];

/// `(A, B)` with `X² − AX − B` a complex-root factor of `X^a + X^b − 2` for one of
/// [`COMPANION_EXPONENTS`], keeping only admissible pairs.
pub fn companion_candidates_complex() -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for (a, b) in COMPANION_EXPONENTS {
        let spec = TrinomialSpec::new(Shape::LowTwo, a, b).expect("valid exponents");
        out.extend(complex_companions(&spec));
    }
    out.sort();
    out.dedup();
    out
}

/// Admissible `(A, B) = (−p, −q)` for the negative-discriminant factors of `spec`.
pub fn complex_companions(spec: &TrinomialSpec) -> Vec<(i64, i64)> {
    quad_factors(spec)
        .into_iter()
        .filter(|&(p, q)| p * p - 4 * q < 0)
        .map(|(p, q)| (-p, -q))
        .filter(|&(a, b)| SeqParams::new(a, b).is_ok())
        .collect()
}

/// Exact value-to-indices map of a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityReport {
    pub window: RangeInclusive<usize>,
    pub values: BTreeMap<BigInt, Vec<usize>>,
}

impl MultiplicityReport {
    pub fn max_multiplicity(&self) -> usize {
        self.values.values().map(Vec::len).max().unwrap_or(0)
    }

    /// Values attaining the maximum multiplicity.
    pub fn witnesses(&self) -> Vec<(&BigInt, &[usize])> {
        let m = self.max_multiplicity();
        self.values.iter().filter(|(_, v)| v.len() == m).map(|(k, v)| (k, v.as_slice())).collect()
    }

    pub fn indices_of(&self, value: &BigInt) -> &[usize] {
        self.values.get(value).map_or(&[], Vec::as_slice)
    }

    /// Indices with `w_n = ±value`, sorted.
    pub fn indices_of_abs(&self, value: &BigInt) -> Vec<usize> {
        let mut v: Vec<usize> = self.indices_of(value).iter().chain(self.indices_of(&-value)).copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

pub fn multiplicity(mut rec: Recurrence, window: RangeInclusive<usize>) -> MultiplicityReport {
    let mut values: BTreeMap<BigInt, Vec<usize>> = BTreeMap::new();
    let terms = rec.terms(*window.end());
    for n in window.clone() {
        values.entry(terms[n].clone()).or_default().push(n);
    }
    MultiplicityReport { window, values }
}

pub fn lucas_recurrence(params: SeqParams, kind: Kind) -> Recurrence {
    let (w0, w1) = kind.initial_values(params.a());
    Recurrence::new(params.a(), params.b(), w0, w1)
}

/// Recurrence written as `u_n = A u_{n−1} − B u_{n−2}`, i.e. our `(A, −B)`.
pub fn minus_b_recurrence(a: i64, b: i64, u0: i64, u1: i64) -> Recurrence {
    Recurrence::new(a, -b, u0, u1)
}

/// Largest exponent searched by [`mult_independence_check`].
pub const INDEPENDENCE_RANGE: u32 = 12;

/// `true` unless `α^t = ±β^s` for some `1 ≤ t, s ≤` [`INDEPENDENCE_RANGE`].
///
/// Irrational roots are always independent for admissible pairs. Integer roots can
/// be dependent without degeneracy: `(−12, −27)` has `α = −3`, `β = −9`.
///
/// Uses `α^n = (v_n + u_n √D)/2` and `β^n = (v_n − u_n √D)/2`.
pub fn mult_independence_check(params: SeqParams) -> bool {
    let n = INDEPENDENCE_RANGE as usize;
    let mut u = lucas_recurrence(params, Kind::First);
    let mut v = lucas_recurrence(params, Kind::Second);
    let (u, v) = (u.terms(n).to_vec(), v.terms(n).to_vec());
    let d = BigInt::from(params.d());
    let r = (!d.is_negative()).then(|| d.sqrt()).filter(|r| r * r == d);
    for t in 1..=n {
        for s in 1..=n {
            for eps in [BigInt::one(), -BigInt::one()] {
                let hit = match &r {
                    // Rational roots: compare the integers 2α^t and ±2β^s.
                    Some(r) => &v[t] + &u[t] * r == &eps * (&v[s] - &u[s] * r),
                    None => v[t] == &eps * &v[s] && u[t] == -(&eps * &u[s]),
                };
                if hit {
                    return false;
                }
            }
        }
    }
    true
}

/// Term of the S-unit count as `(k, s)`, with bound `2^{35·B³}·d^{6·B²}`, `B = max(k+1, s)`.
pub const SUNIT_TERMS: [(u32, u32, u32); 4] = [(5, 2, 1), (3, 2, 3), (2, 2, 18), (0, 0, 39)];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SUnitConstant {
    #[serde(with = "crate::serde_bigint")]
    pub value: BigInt,
    /// Binary exponents of the bounded terms, with multipliers.
    pub terms: Vec<(u32, u32)>,
    pub digits: usize,
    /// First three significant digits.
    pub leading: String,
    /// `value = leading.xx · 10^exponent`.
    pub exponent: usize,
    /// `value < 6.45·10^2340`.
    pub below_bound: bool,
}

impl SUnitConstant {
    pub fn scientific(&self) -> String {
        format!("{}.{}e{}", &self.leading[..1], &self.leading[1..], self.exponent)
    }
}

/// `log₂` of the bound for `(k, s)` with `d = 2`.
pub fn sunit_exponent(k: u32, s: u32) -> u32 {
    let b = (k + 1).max(s);
    35 * b.pow(3) + 6 * b.pow(2)
}

pub fn sunit_constant() -> SUnitConstant {
    let mut value = BigInt::zero();
    let mut terms = Vec::new();
    for (k, s, mult) in SUNIT_TERMS {
        if k == 0 && s == 0 {
            value += mult;
            continue;
        }
        let e = sunit_exponent(k, s);
        terms.push((e, mult));
        value += BigInt::from(mult) << e;
    }
    let dec = value.to_string();
    let bound = BigInt::from(645) * num_traits::pow(BigInt::from(10), 2338);
    SUnitConstant {
        below_bound: value < bound,
        digits: dec.len(),
        leading: dec[..3].to_string(),
        exponent: dec.len() - 1,
        terms,
        value,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn low(a: u32, b: u32) -> TrinomialSpec {
        TrinomialSpec::new(Shape::LowTwo, a, b).unwrap()
    }

    #[test]
    fn normalization() {
        // X^5 − 2X^3 + X^2 = X^2 (X^3 − 2X + 1)
        assert_eq!(TrinomialSpec::from_exponents(5, 3, 2), TrinomialSpec::new(Shape::MiddleTwo, 3, 1));
        assert_eq!(TrinomialSpec::from_exponents(4, 1, 2).unwrap().to_string(), "X^3+X-2");
        assert_eq!(TrinomialSpec::from_exponents(0, 5, 2).unwrap().shape, Shape::TopTwo);
        assert_eq!(TrinomialSpec::from_exponents(2, 2, 1), None);
    }

    #[test]
    fn factor_lists() {
        assert_eq!(quad_factors(&low(3, 1)), vec![(1, 2)]);
        assert_eq!(quad_factors(&low(3, 2)), vec![(2, 2)]);
        let f = quad_factors(&low(4, 2));
        assert!(f.contains(&(0, 2)) && f.contains(&(0, -1)), "{f:?}");
    }

    #[test]
    fn companions() {
        assert_eq!(companion_candidates_complex(), vec![(-1, -2)]);
    }

    #[test]
    fn minus_b_lists() {
        let r = multiplicity(minus_b_recurrence(1, 2, 1, 1), 0..=20);
        assert_eq!(r.indices_of_abs(&BigInt::one()), vec![0, 1, 2, 4, 12]);
        let r = multiplicity(minus_b_recurrence(1, 2, 1, -1), 0..=20);
        assert_eq!(r.indices_of_abs(&BigInt::one()), vec![0, 1, 3, 11]);
    }

    #[test]
    fn jacobsthal_multiplicity() {
        let r = multiplicity(lucas_recurrence(SeqParams::new(1, 2).unwrap(), Kind::First), 0..=50);
        assert_eq!(r.max_multiplicity(), 2);
        assert_eq!(r.indices_of(&BigInt::one()), &[1, 2]);
    }

    #[test]
    fn independence() {
        assert!(mult_independence_check(SeqParams::new(-1, -2).unwrap()));
        assert!(mult_independence_check(SeqParams::new(1, 1).unwrap()));
        assert!(mult_independence_check(SeqParams::new(3, -2).unwrap()));
    }

    #[test]
    fn sunit_exponents() {
        assert_eq!(sunit_exponent(5, 2), 7776);
        assert_eq!(sunit_exponent(3, 2), 2336);
        assert_eq!(sunit_exponent(2, 2), 999);
    }
}
