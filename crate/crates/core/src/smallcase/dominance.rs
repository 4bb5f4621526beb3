//! An `|A|` cutoff valid for every equation when `A² + 4B > 0`.
//!
//! The terms are weighted homogeneous (`A` of weight 1, `B` of weight 2): `u_n` has
//! weight `n − 1` and `v_n` weight `n`, so `w_n(A, B) = A^{wt} W_n(z)` with `z = B/A²`.
//! With `z = s − 1/4` the polynomial `W_n` has positive coefficients in `s`, and
//! `D > 0` means `s > 0`. Dividing the equation by the top term then bounds `|A|`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::params::Kind;
use crate::smallcase::poly_term;

fn weight(kind: Kind, n: usize) -> i64 {
    match kind {
        Kind::First => n as i64 - 1,
        Kind::Second => n as i64,
    }
}

/// Coefficients of `W_n(s − 1/4)` in `s`, ascending.
pub fn shifted_profile(kind: Kind, n: usize) -> Vec<BigRational> {
    let at_one = poly_term(kind, n).at_a(&BigInt::one());
    let shift = BigRational::new(BigInt::from(-1), BigInt::from(4));
    // Horner in s: P(s + shift).
    let mut acc: Vec<BigRational> = Vec::new();
    for c in at_one.coeffs().iter().rev() {
        let mut next = vec![BigRational::zero(); acc.len() + 1];
        for (i, a) in acc.iter().enumerate() {
            next[i + 1] += a.clone();
            next[i] += a * &shift;
        }
        next[0] += BigRational::from_integer(c.clone());
        acc = next;
    }
    while acc.last().is_some_and(|c| c.is_zero()) {
        acc.pop();
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DominanceBound {
    /// No solution with `D > 0` has `|A| > a_cut`.
    pub a_cut: u64,
    /// `max_j W_i[j]/W_top[j]` for each lower term, as `p/q` strings.
    pub ratios: Vec<String>,
}

/// Cutoff for `Σ cᵢ w_{nᵢ} = 0`; terms that vanish identically must be dropped by
/// the caller. Returns `None` when fewer than two terms remain.
pub fn dominance_bound(kind: Kind, terms: &[(i64, usize)]) -> Option<DominanceBound> {
    let mut terms = terms.to_vec();
    terms.sort_by_key(|x| std::cmp::Reverse(x.1));
    let (&(c_top, n_top), rest) = terms.split_first()?;
    if rest.is_empty() {
        return None;
    }
    let top = shifted_profile(kind, n_top);
    let mut parts: Vec<(BigRational, i64)> = Vec::new();
    let mut ratios = Vec::new();
    for &(c, n) in rest {
        let prof = shifted_profile(kind, n);
        assert!(prof.len() <= top.len());
        let r = prof
            .iter()
            .zip(&top)
            .map(|(a, t)| {
                assert!(a.is_positive() && t.is_positive(), "profile coefficients must be positive");
                a / t
            })
            .max()
            .expect("non-empty profile");
        ratios.push(r.to_string());
        parts.push((r * BigInt::from(c.abs()), weight(kind, n_top) - weight(kind, n)));
    }
    let lhs = BigRational::from_integer(BigInt::from(c_top.abs()));
    let mut n: u64 = 1;
    loop {
        let base = BigInt::from(n);
        let rhs: BigRational = parts
            .iter()
            .map(|(r, dw)| r / BigRational::from_integer(num_traits::pow(base.clone(), *dw as usize)))
            .sum();
        if lhs > rhs {
            // The right side decreases in |A|, so every |A| ≥ n is excluded.
            return Some(DominanceBound { a_cut: n - 1, ratios });
        }
        n += 1;
    }
}
