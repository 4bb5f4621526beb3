//! Big-integer term generation with an append-only memo.

use num_bigint::BigInt;
use serde::Serialize;

use crate::params::{Kind, SeqParams};
use crate::surd::SurdValue;

/// `w_{n+2} = A·w_{n+1} + B·w_n` with arbitrary initial values.
///
/// Terms are computed on demand and cached; the cache only ever grows, so a
/// slice handed out by [`Recurrence::terms`] stays valid as a prefix.
#[derive(Debug, Clone)]
pub struct Recurrence {
    a: BigInt,
    b: BigInt,
    memo: Vec<BigInt>,
}

impl Recurrence {
    pub fn new(a: i64, b: i64, w0: impl Into<BigInt>, w1: impl Into<BigInt>) -> Self {
        Recurrence { a: a.into(), b: b.into(), memo: vec![w0.into(), w1.into()] }
    }

    fn extend_to(&mut self, n: usize) {
        while self.memo.len() <= n {
            let len = self.memo.len();
            let next = &self.a * &self.memo[len - 1] + &self.b * &self.memo[len - 2];
            self.memo.push(next);
        }
    }

    pub fn term(&mut self, n: usize) -> &BigInt {
        self.extend_to(n);
        &self.memo[n]
    }

    /// Terms `0..=n`.
    pub fn terms(&mut self, n: usize) -> &[BigInt] {
        self.extend_to(n);
        &self.memo[..=n]
    }

    pub fn computed_len(&self) -> usize {
        self.memo.len()
    }
}

/// A Lucas sequence of either kind for a validated pair.
#[derive(Debug, Clone)]
pub struct LucasSequence {
    params: SeqParams,
    kind: Kind,
    rec: Recurrence,
}

impl LucasSequence {
    pub fn new(params: SeqParams, kind: Kind) -> Self {
        let (w0, w1) = kind.initial_values(params.a());
        LucasSequence { params, kind, rec: Recurrence::new(params.a(), params.b(), w0, w1) }
    }

    pub fn params(&self) -> SeqParams {
        self.params
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn term(&mut self, n: usize) -> &BigInt {
        self.rec.term(n)
    }

    pub fn terms(&mut self, n: usize) -> &[BigInt] {
        self.rec.terms(n)
    }
}

/// One-shot term evaluation.
pub fn term(params: SeqParams, kind: Kind, n: usize) -> BigInt {
    LucasSequence::new(params, kind).term(n).clone()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedFormReport {
    pub checked_up_to: usize,
    /// First index where the closed form disagrees with the recurrence.
    pub first_failure: Option<usize>,
}

impl ClosedFormReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Checks `α^n − β^n = u_n (α − β)` (first kind) or `α^n + β^n = v_n` (second kind)
/// for every `n ≤ n_max`, in exact surd arithmetic.
pub fn closed_form_check(params: SeqParams, kind: Kind, n_max: usize) -> ClosedFormReport {
    let d = params.d();
    let (alpha, beta) = params.alpha_beta();
    let diff = &alpha - &beta;
    let mut seq = LucasSequence::new(params, kind);
    let mut pa = SurdValue::one(d);
    let mut pb = SurdValue::one(d);
    for n in 0..=n_max {
        let w = SurdValue::from_int(seq.term(n).clone(), d);
        let ok = match kind {
            Kind::First => &pa - &pb == &w * &diff,
            Kind::Second => &pa + &pb == w,
        };
        if !ok {
            return ClosedFormReport { checked_up_to: n, first_failure: Some(n) };
        }
        pa = &pa * &alpha;
        pb = &pb * &beta;
    }
    ClosedFormReport { checked_up_to: n_max, first_failure: None }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: i64, b: i64) -> SeqParams {
        SeqParams::new(a, b).unwrap()
    }

    #[test]
    fn small_terms() {
        assert_eq!(term(p(1, 1), Kind::First, 7), BigInt::from(13));
        let v: Vec<i64> = LucasSequence::new(p(1, 3), Kind::Second)
            .terms(5)
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect();
        assert_eq!(v, [2, 1, 7, 10, 31, 61]);
        let u: Vec<i64> = LucasSequence::new(p(-1, -2), Kind::First)
            .terms(6)
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect();
        assert_eq!(u, [0, 1, -1, -1, 3, -1, -5]);
    }

    #[test]
    fn memo_is_prefix_stable() {
        let mut s = LucasSequence::new(p(2, 1), Kind::First);
        let big = s.term(40).clone();
        assert_eq!(s.term(3), &BigInt::from(5));
        assert_eq!(s.term(40), &big);
        assert_eq!(s.rec.computed_len(), 41);
    }

    #[test]
    fn closed_forms() {
        assert!(closed_form_check(p(1, 1), Kind::First, 50).passed());
        assert!(closed_form_check(p(-3, -1), Kind::Second, 50).passed());
        assert!(closed_form_check(p(6, -2), Kind::First, 100).passed());
        assert!(closed_form_check(p(-1, -2), Kind::Second, 60).passed());
    }
}
