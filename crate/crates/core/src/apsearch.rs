//! Three-term arithmetic progressions among sequence terms.
//!
//! A progression is an index triple `(k, l, m)` with `2·w_l = w_k + w_m` and three
//! pairwise distinct values. Either monotone direction counts, so `(k, l, m)` and
//! `(m, l, k)` describe the same progression; the canonical form has `k < m`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::FamilyError;
use crate::params::{Kind, SeqParams};
use crate::poly::UniPoly;
use crate::sequence::LucasSequence;

/// `2y = x + z` with `x, y, z` pairwise distinct.
pub fn is_ap(x: &BigInt, y: &BigInt, z: &BigInt) -> bool {
    x != y && y != z && x != z && (y * 2u32) == x + z
}

/// Canonical orientation: outer indices ascending.
pub fn canonical(k: usize, l: usize, m: usize) -> (usize, usize, usize) {
    if k <= m {
        (k, l, m)
    } else {
        (m, l, k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct APTriple {
    pub k: usize,
    pub l: usize,
    pub m: usize,
    /// `[w_k, w_l, w_m]`, serialized as decimal strings.
    #[serde(with = "crate::serde_bigint::array3")]
    pub values: [BigInt; 3],
}

impl APTriple {
    pub fn indices(&self) -> (usize, usize, usize) {
        (self.k, self.l, self.m)
    }

    pub fn max_index(&self) -> usize {
        self.k.max(self.l).max(self.m)
    }

    fn sort_key(&self) -> (usize, usize, usize) {
        (self.m, self.k, self.l)
    }
}

impl fmt::Display for APTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.k, self.l, self.m)
    }
}

/// All canonical progressions among `terms[0..]`, sorted by `(m, k, l)`.
///
/// Each value occurs at most a handful of times, so the value→indices map keeps the
/// search at `O(n²)` lookups.
pub fn find_aps_in(terms: &[BigInt]) -> Vec<APTriple> {
    let mut by_value: HashMap<&BigInt, Vec<usize>> = HashMap::new();
    for (i, v) in terms.iter().enumerate() {
        by_value.entry(v).or_default().push(i);
    }
    let mut out = Vec::new();
    for m in 0..terms.len() {
        for k in 0..m {
            let (wk, wm) = (&terms[k], &terms[m]);
            if wk == wm {
                continue;
            }
            let sum = wk + wm;
            if sum.is_odd() {
                continue;
            }
            let mid: BigInt = sum / 2;
            if let Some(ls) = by_value.get(&mid) {
                for &l in ls {
                    debug_assert!(l != k && l != m);
                    out.push(APTriple { k, l, m, values: [wk.clone(), mid.clone(), wm.clone()] });
                }
            }
        }
    }
    out.sort_by_key(APTriple::sort_key);
    out
}

/// Progressions with all indices `≤ n_max`.
pub fn find_aps(params: SeqParams, kind: Kind, n_max: usize) -> Vec<APTriple> {
    let mut seq = LucasSequence::new(params, kind);
    find_aps_in(seq.terms(n_max))
}

/// `offset + step·t`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexForm {
    pub offset: i64,
    pub step: i64,
}

impl IndexForm {
    pub const fn new(offset: i64, step: i64) -> Self {
        IndexForm { offset, step }
    }

    pub const fn shift(offset: i64) -> Self {
        IndexForm { offset, step: 1 }
    }

    pub fn at(&self, t: i64) -> i64 {
        self.offset + self.step * t
    }
}

impl fmt::Display for IndexForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = match self.step {
            0 => return write!(f, "{}", self.offset),
            1 => "t".to_string(),
            s => format!("{s}t"),
        };
        match self.offset {
            0 => write!(f, "{var}"),
            o if o > 0 => write!(f, "{var}+{o}"),
            o => write!(f, "{var}{o}"),
        }
    }
}

/// A parametric progression `(k(t), l(t), m(t))` for `t ≥ t_min`; `l` carries the
/// `−2` coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct APFamily {
    pub k: IndexForm,
    pub l: IndexForm,
    pub m: IndexForm,
    pub t_min: i64,
}

impl APFamily {
    pub fn new(k: IndexForm, l: IndexForm, m: IndexForm, t_min: i64) -> Self {
        APFamily { k, l, m, t_min }
    }

    /// Shift family `(t + a, t + b, t + c)`.
    pub fn shift(a: i64, b: i64, c: i64) -> Self {
        APFamily::new(IndexForm::shift(a), IndexForm::shift(b), IndexForm::shift(c), 0)
    }

    pub fn indices_at(&self, t: i64) -> (i64, i64, i64) {
        (self.k.at(t), self.l.at(t), self.m.at(t))
    }

    /// Reparametrize so that `t_min = 0`, then orient so that `k(0) < m(0)`.
    pub fn canonical(&self) -> APFamily {
        let re = |f: IndexForm| IndexForm::new(f.at(self.t_min), f.step);
        let (mut k, l, mut m) = (re(self.k), re(self.l), re(self.m));
        if (k.offset, k.step) > (m.offset, m.step) {
            std::mem::swap(&mut k, &mut m);
        }
        APFamily { k, l, m, t_min: 0 }
    }

    /// Number of geometric sequences `s_t` can be built from: each distinct non-zero
    /// step `b` contributes `α^b` and `β^b`, and a zero step contributes the constant 1.
    /// Numerically coinciding bases are still counted separately; the count is an upper
    /// bound on the order of the annihilating recurrence, which is what the certificate
    /// needs.
    pub fn order(&self) -> usize {
        let mut steps: Vec<i64> = [self.k.step, self.l.step, self.m.step].into();
        steps.sort_unstable();
        steps.dedup();
        steps.iter().map(|&s| if s == 0 { 1 } else { 2 }).sum()
    }

    fn max_index_at(&self, t: i64) -> i64 {
        let (a, b, c) = self.indices_at(t);
        a.max(b).max(c)
    }
}

impl fmt::Display for APFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{}), t≥{}", self.k, self.l, self.m, self.t_min)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub family: APFamily,
    pub order: usize,
    /// `t` values at which `s_t = 0` was verified for the identity certificate.
    pub certified_t: Vec<i64>,
    /// Instances `t_min..=t_probe` with three distinct values.
    pub nontrivial: usize,
    /// Instances with a repeated value (allowed, excluded from progression counts).
    pub degenerate_t: Vec<i64>,
    /// Number of instances with distinct indices that are genuinely arithmetic
    /// progressions; equals `nontrivial` whenever the identity holds.
    pub checked: usize,
}

fn s_value(seq: &mut LucasSequence, idx: (i64, i64, i64)) -> BigInt {
    let (a, b, c) = (idx.0 as usize, idx.1 as usize, idx.2 as usize);
    let wa = seq.term(a).clone();
    let wb = seq.term(b).clone();
    let wc = seq.term(c).clone();
    wa - wb * 2u32 + wc
}

/// Identity certificate plus instance statistics.
///
/// `s_t` is a fixed linear combination of at most `order` geometric sequences, so
/// vanishing at `order` consecutive `t` forces `s_t = 0` for every `t ≥ t_min`.
pub fn verify_family(
    family: &APFamily,
    params: SeqParams,
    kind: Kind,
    t_probe: i64,
) -> Result<FamilyReport, FamilyError> {
    let order = family.order();
    let last = (family.t_min + order as i64 - 1).max(t_probe);
    for t in family.t_min..=last {
        let (a, b, c) = family.indices_at(t);
        if a < 0 || b < 0 || c < 0 {
            return Err(FamilyError::NegativeIndex { t });
        }
    }
    let mut seq = LucasSequence::new(params, kind);
    seq.terms(family.max_index_at(last).max(0) as usize);
    let mut certified_t = Vec::with_capacity(order);
    for t in family.t_min..family.t_min + order as i64 {
        let s = s_value(&mut seq, family.indices_at(t));
        if !s.is_zero() {
            return Err(FamilyError::CertificateFailure { t, value: s.to_string() });
        }
        certified_t.push(t);
    }
    let mut nontrivial = 0;
    let mut checked = 0;
    let mut degenerate_t = Vec::new();
    for t in family.t_min..=t_probe {
        let (a, b, c) = family.indices_at(t);
        let (wa, wb, wc) =
            (seq.term(a as usize).clone(), seq.term(b as usize).clone(), seq.term(c as usize).clone());
        if wa == wb || wb == wc || wa == wc {
            degenerate_t.push(t);
        } else {
            nontrivial += 1;
            if is_ap(&wa, &wb, &wc) {
                checked += 1;
            }
        }
    }
    Ok(FamilyReport { family: family.clone(), order, certified_t, nontrivial, degenerate_t, checked })
}

/// `X² − AX − B`
pub fn companion(params: SeqParams) -> UniPoly {
    UniPoly::from_i64(&[-params.b(), -params.a(), 1])
}

/// All shift families `(t + a₁, t + a₂, t + a₃)` with `min aᵢ = 0`, `max aᵢ ≤ e_max`
/// and `X² − AX − B | X^{a₁} − 2X^{a₂} + X^{a₃}`.
///
/// Divisibility is decided from exact remainders of the monomials modulo the
/// companion polynomial; each hit is cross-checked against `s_0 = s_1 = 0`.
pub fn detect_families(params: SeqParams, kind: Kind, e_max: usize) -> Vec<APFamily> {
    let comp = companion(params);
    let residues: Vec<(BigInt, BigInt)> = (0..=e_max)
        .map(|n| {
            let (_, r) = UniPoly::monomial(1, n).divrem_monic(&comp);
            (r.coeff(0), r.coeff(1))
        })
        .collect();
    let mut seq = LucasSequence::new(params, kind);
    seq.terms(e_max + 1);
    let mut out = Vec::new();
    for a2 in 0..=e_max {
        for a1 in 0..=e_max {
            if a1 == a2 {
                continue;
            }
            for a3 in a1 + 1..=e_max {
                if a3 == a2 || a1.min(a2) != 0 {
                    continue;
                }
                let c0 = &residues[a1].0 - &residues[a2].0 * 2u32 + &residues[a3].0;
                let c1 = &residues[a1].1 - &residues[a2].1 * 2u32 + &residues[a3].1;
                let divides = c0.is_zero() && c1.is_zero();
                let s0 = s_value(&mut seq, (a1 as i64, a2 as i64, a3 as i64));
                let s1 = s_value(&mut seq, (a1 as i64 + 1, a2 as i64 + 1, a3 as i64 + 1));
                assert_eq!(
                    divides,
                    s0.is_zero() && s1.is_zero(),
                    "divisibility and identity disagree for {params} offsets ({a1},{a2},{a3})"
                );
                if divides {
                    out.push(APFamily::shift(a1 as i64, a2 as i64, a3 as i64));
                }
            }
        }
    }
    out.sort_by_key(|f| (f.k.offset.max(f.l.offset).max(f.m.offset), f.k.offset, f.l.offset));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: i64, b: i64) -> SeqParams {
        SeqParams::new(a, b).unwrap()
    }

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn predicate_examples() {
        assert!(is_ap(&b(0), &b(1), &b(2)));
        assert!(is_ap(&b(1), &b(0), &b(-1)));
        assert!(!is_ap(&b(1), &b(1), &b(1)));
        assert!(!is_ap(&b(0), &b(1), &b(3)));
    }

    #[test]
    fn fibonacci_window() {
        let aps: Vec<_> = find_aps(p(1, 1), Kind::First, 5).iter().map(APTriple::indices).collect();
        assert!(aps.contains(&(0, 1, 3)));
        assert!(aps.contains(&(2, 3, 4)));
    }

    #[test]
    fn lucas_13_single_triple() {
        let aps: Vec<_> = find_aps(p(1, 3), Kind::Second, 20).iter().map(APTriple::indices).collect();
        assert_eq!(aps, vec![(1, 4, 5)]);
    }

    #[test]
    fn empty_window() {
        assert!(find_aps(p(5, 1), Kind::First, 50).is_empty());
    }

    #[test]
    fn detect_known_families() {
        assert!(detect_families(p(-1, -2), Kind::First, 10).contains(&APFamily::shift(1, 0, 3)));
        assert!(detect_families(p(1, 1), Kind::First, 10).contains(&APFamily::shift(0, 2, 3)));
        assert!(detect_families(p(5, 1), Kind::First, 10).is_empty());
    }

    #[test]
    fn family_certificates() {
        let jacobsthal = APFamily::new(IndexForm::new(1, 0), IndexForm::new(1, 2), IndexForm::new(2, 2), 1);
        let rep = verify_family(&jacobsthal, p(1, 2), Kind::First, 30).unwrap();
        assert_eq!(rep.order, 3);
        assert_eq!(rep.certified_t, vec![1, 2, 3]);

        let f = APFamily::shift(2, 0, 1);
        let rep = verify_family(&f, p(-1, 2), Kind::First, 20).unwrap();
        assert!(rep.degenerate_t.is_empty());
        let mut s = LucasSequence::new(p(-1, 2), Kind::First);
        assert_eq!(
            (s.term(2).clone(), s.term(0).clone(), s.term(1).clone()),
            (b(-1), b(0), b(1))
        );

        let bad = APFamily::shift(0, 1, 3);
        assert_eq!(
            verify_family(&bad, p(1, 1), Kind::First, 10),
            Err(FamilyError::CertificateFailure { t: 1, value: "2".into() })
        );
    }

    #[test]
    fn family_canonical_form() {
        let f = APFamily::new(IndexForm::shift(0), IndexForm::shift(-1), IndexForm::shift(1), 1);
        assert_eq!(f.canonical(), APFamily::shift(1, 0, 2));
        let g = APFamily::shift(2, 0, 1);
        assert_eq!(g.canonical(), APFamily::shift(1, 0, 2));
        assert_eq!(g.to_string(), "(t+2,t,t+1), t≥0");
    }
}
