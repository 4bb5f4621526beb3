//! Gap patterns and their exact index bounds.
//!
//! A progression among `w_{n1}, w_{n2}, w_{n3}` with `n1 > n2 > n3` is a relation
//! `F(α) = ε F(β)` where `F(X) = c1 X^{n1} + c2 X^{n2} + c3 X^{n3}`, one `cᵢ` is `−2`
//! and the others are `1`. Writing `g1 = n1 − n2` and `g2 = n2 − n3`, each pattern
//! constrains the two gaps to a fixed value or a lower bound.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::apsearch::{APFamily, IndexForm};
use crate::params::{Kind, SeqParams};
use crate::surd::SurdValue;

/// Which exponent carries the `−2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Placement {
    /// On `n1`, the largest exponent.
    Top,
    Middle,
    /// On `n3`, the smallest exponent.
    Bottom,
}

impl Placement {
    pub const ALL: [Placement; 3] = [Placement::Top, Placement::Middle, Placement::Bottom];

    /// `(c1, c2, c3)` on `(n1, n2, n3)`.
    pub fn coeffs(self) -> [i64; 3] {
        match self {
            Placement::Top => [-2, 1, 1],
            Placement::Middle => [1, -2, 1],
            Placement::Bottom => [1, 1, -2],
        }
    }

    /// Assemble a progression `(k, l, m)` from forms for `n1 > n2 > n3`.
    fn orient(self, n1: IndexForm, n2: IndexForm, n3: IndexForm) -> (IndexForm, IndexForm, IndexForm) {
        match self {
            Placement::Top => (n3, n1, n2),
            Placement::Middle => (n3, n2, n1),
            Placement::Bottom => (n2, n3, n1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Gap {
    Fixed(u32),
    AtLeast(u32),
}

impl fmt::Display for Gap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gap::Fixed(v) => write!(f, "={v}"),
            Gap::AtLeast(l) => write!(f, "≥{l}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GapPattern {
    pub placement: Placement,
    pub kind: Kind,
    pub g1: Gap,
    pub g2: Gap,
}

impl GapPattern {
    /// The unconstrained pattern `g1 ≥ 1, g2 ≥ 1`.
    pub fn root(placement: Placement, kind: Kind) -> Self {
        GapPattern { placement, kind, g1: Gap::AtLeast(1), g2: Gap::AtLeast(1) }
    }

    pub fn epsilon(&self) -> i64 {
        self.kind.side_sign() as i64
    }

    /// Split the first free gap `≥ L` into `= L` and `≥ L + 1`.
    pub fn split(&self) -> Option<(GapPattern, GapPattern)> {
        match (self.g1, self.g2) {
            (Gap::AtLeast(l), _) => Some((
                GapPattern { g1: Gap::Fixed(l), ..*self },
                GapPattern { g1: Gap::AtLeast(l + 1), ..*self },
            )),
            (_, Gap::AtLeast(l)) => Some((
                GapPattern { g2: Gap::Fixed(l), ..*self },
                GapPattern { g2: Gap::AtLeast(l + 1), ..*self },
            )),
            _ => None,
        }
    }

    /// Lower bound of the gap that [`GapPattern::split`] would fix.
    pub fn split_value(&self) -> Option<u32> {
        match (self.g1, self.g2) {
            (Gap::AtLeast(l), _) | (_, Gap::AtLeast(l)) => Some(l),
            _ => None,
        }
    }
}

impl fmt::Display for GapPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at = match self.placement {
            Placement::Top => "n1",
            Placement::Middle => "n2",
            Placement::Bottom => "n3",
        };
        let eps = if self.epsilon() > 0 { '+' } else { '-' };
        write!(f, "-2@{at} g1{} g2{} eps{eps}", self.g1, self.g2)
    }
}

/// How a pattern was settled.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "argument")]
pub enum Derivation {
    /// `|α|^{n1−s}·margin ≤ |F(α)| = |F(β)| ≤ 4·max(1,|β|)^{n1}` fails for `n1 ≥ n_exclusive`.
    Margin { margin: String, s: u64, n_exclusive: u64 },
    /// Both gaps fixed: `α^{n3} Q(α) = ε β^{n3} Q(β)` has at most one solution `n3`.
    SingleCandidate { q_alpha: String, q_beta: String, n3: Option<u64> },
    /// Exactly one of `Q(α)`, `Q(β)` vanishes.
    OneSideVanishes { q_alpha: String, q_beta: String },
    /// `Q(α) = Q(β) = 0`: the companion polynomial divides `Q`.
    Divisibility { q: String },
    /// The two top terms cancel exactly (`α` rational, `|β| = 1`), leaving an equation
    /// periodic in `g2`.
    TopCancellation { beta: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternOutcome {
    /// Largest possible `n1` (`None`: no solution in the pattern).
    Bound { n1_max: Option<u64>, derivation: Derivation },
    FixNextGap,
    FamilyDetected { families: Vec<APFamily>, derivation: Derivation },
    Undecided { reason: String },
}

/// Roots and derived constants shared by all patterns of one pair.
pub(crate) struct Field {
    alpha: SurdValue,
    beta: SurdValue,
    abs_alpha: SurdValue,
    bstar: SurdValue,
    d: i64,
}

impl Field {
    pub(crate) fn new(params: SeqParams) -> Field {
        assert!(params.is_dominant());
        let d = params.d();
        let (alpha, beta) = params.dominant_roots();
        let abs_alpha = alpha.abs_real();
        let abs_beta = beta.abs_real();
        let one = SurdValue::one(d);
        let bstar = if SurdValue::cmp_real(&abs_beta, &one) == Ordering::Greater { abs_beta } else { one };
        Field { alpha, beta, abs_alpha, bstar, d }
    }

    fn int(&self, n: i64) -> SurdValue {
        SurdValue::from_int(n, self.d)
    }
}

fn is_zero(x: &SurdValue) -> bool {
    x.signum_real() == Ordering::Equal
}

fn same(x: &SurdValue, y: &SurdValue) -> bool {
    is_zero(&(x - y))
}

fn positive(x: &SurdValue) -> bool {
    x.signum_real() == Ordering::Greater
}

/// Safety valve for the margin search; the ratio `|α|/max(1,|β|)` exceeds 1 for every
/// dominant pair, so this is never reached for reasonable coefficients.
const MAX_MARGIN_STEPS: u64 = 100_000;

pub fn pattern_bound(pattern: &GapPattern, params: SeqParams) -> PatternOutcome {
    bound_in(&Field::new(params), pattern)
}

pub(crate) fn bound_in(fd: &Field, pat: &GapPattern) -> PatternOutcome {
    let [c1, c2, c3] = pat.placement.coeffs();
    let x = &fd.abs_alpha;
    let (margin, s) = match (pat.g1, pat.g2) {
        (Gap::AtLeast(l1), Gap::AtLeast(l2)) => {
            let s = l1 + l2;
            let m = x.pow(s).scale(c1.abs()) - x.pow(l2).scale(c2.abs()) - fd.int(c3.abs());
            (m, s)
        }
        (Gap::Fixed(v1), Gap::AtLeast(l2)) => {
            let t = fd.alpha.pow(v1).scale(c1) + fd.int(c2);
            if is_zero(&t) {
                return top_cancellation(fd, pat, v1, l2);
            }
            (t.abs_real() * x.pow(l2) - fd.int(c3.abs()), v1 + l2)
        }
        (Gap::AtLeast(l1), Gap::Fixed(v2)) => {
            let r = fd.alpha.pow(v2).scale(c2) + fd.int(c3);
            (x.pow(l1 + v2).scale(c1.abs()) - r.abs_real(), l1 + v2)
        }
        (Gap::Fixed(v1), Gap::Fixed(v2)) => return both_fixed(fd, pat, v1, v2),
    };
    if !positive(&margin) {
        return PatternOutcome::FixNextGap;
    }
    // Smallest N ≥ s with |α|^{N−s}·margin > 4·b*^N.
    let four = fd.int(4);
    let mut lhs = margin.clone();
    let mut rhs = &four * &fd.bstar.pow(s);
    let mut n = s as u64;
    while SurdValue::cmp_real(&lhs, &rhs) != Ordering::Greater {
        if n - s as u64 > MAX_MARGIN_STEPS {
            return PatternOutcome::Undecided { reason: format!("margin search for {pat} did not terminate") };
        }
        lhs = &lhs * x;
        rhs = &rhs * &fd.bstar;
        n += 1;
    }
    let n1_max = if n > s as u64 { Some(n - 1) } else { None };
    PatternOutcome::Bound {
        n1_max,
        derivation: Derivation::Margin { margin: margin.to_string(), s: s as u64, n_exclusive: n },
    }
}

/// `Q(X) = c1 X^{g1+g2} + c2 X^{g2} + c3`
fn q_at(fd: &Field, root: &SurdValue, pat: &GapPattern, v1: u32, v2: u32) -> SurdValue {
    let [c1, c2, c3] = pat.placement.coeffs();
    root.pow(v1 + v2).scale(c1) + root.pow(v2).scale(c2) + fd.int(c3)
}

fn both_fixed(fd: &Field, pat: &GapPattern, v1: u32, v2: u32) -> PatternOutcome {
    let qa = q_at(fd, &fd.alpha, pat, v1, v2);
    let qb = q_at(fd, &fd.beta, pat, v1, v2);
    let (za, zb) = (is_zero(&qa), is_zero(&qb));
    if za && zb {
        let (n1, n2, n3) = (
            IndexForm::shift((v1 + v2) as i64),
            IndexForm::shift(v2 as i64),
            IndexForm::shift(0),
        );
        let (k, l, m) = pat.placement.orient(n1, n2, n3);
        let [c1, c2, c3] = pat.placement.coeffs();
        let q = format!("{c1}X^{}{:+}X^{}{:+}", v1 + v2, c2, v2, c3);
        return PatternOutcome::FamilyDetected {
            families: vec![APFamily::new(k, l, m, 0)],
            derivation: Derivation::Divisibility { q },
        };
    }
    if za || zb {
        return PatternOutcome::Bound {
            n1_max: None,
            derivation: Derivation::OneSideVanishes { q_alpha: qa.to_string(), q_beta: qb.to_string() },
        };
    }
    // |α^{n3} Q(α)| / |β^{n3} Q(β)| is strictly increasing in n3, so the absolute
    // values agree for at most one n3.
    let eps = pat.epsilon();
    let mut lhs = qa.clone();
    let mut rhs = qb.scale(eps);
    let mut n3 = 0u64;
    let found = loop {
        match SurdValue::cmp_abs(&lhs, &rhs) {
            Ordering::Less => {
                lhs = &lhs * &fd.alpha;
                rhs = &rhs * &fd.beta;
                n3 += 1;
            }
            Ordering::Equal => break same(&lhs, &rhs).then_some(n3),
            Ordering::Greater => break None,
        }
    };
    PatternOutcome::Bound {
        n1_max: found.map(|n3| n3 + (v1 + v2) as u64),
        derivation: Derivation::SingleCandidate { q_alpha: qa.to_string(), q_beta: qb.to_string(), n3: found },
    }
}

/// `c1 α^{v1} + c2 = 0`. Then `α` is rational and `c3 α^{n3} = ε β^{n3}(β^{g2}(c1 β^{v1} + c2) + c3)`.
/// For `β = ±1` the right side only depends on the parities of `n3` and `g2` and is
/// bounded by 4, so finitely many `n3` remain, each giving a family over one parity class
/// of `g2`.
fn top_cancellation(fd: &Field, pat: &GapPattern, v1: u32, l2: u32) -> PatternOutcome {
    let one = fd.int(1);
    let beta_unit = same(&fd.beta, &one) || same(&fd.beta, &-&one);
    if !beta_unit {
        return PatternOutcome::Undecided {
            reason: format!("top terms cancel in {pat} but |β| ≠ 1"),
        };
    }
    let [c1, c2, c3] = pat.placement.coeffs();
    let eps = pat.epsilon();
    let t_beta = fd.beta.pow(v1).scale(c1) + fd.int(c2);
    let bound = fd.int(4);
    let mut families = Vec::new();
    let mut n3 = 0u32;
    loop {
        let lhs = fd.alpha.pow(n3).scale(c3);
        if SurdValue::cmp_abs(&lhs, &bound) == Ordering::Greater {
            break;
        }
        for r in [l2, l2 + 1] {
            let rhs = (fd.beta.pow(r) * &t_beta + fd.int(c3)) * fd.beta.pow(n3);
            if same(&lhs, &rhs.scale(eps)) {
                let n3f = IndexForm::new(n3 as i64, 0);
                let n2f = IndexForm::new((n3 + r) as i64, 2);
                let n1f = IndexForm::new((n3 + r + v1) as i64, 2);
                let (k, l, m) = pat.placement.orient(n1f, n2f, n3f);
                families.push(APFamily::new(k, l, m, 0));
            }
        }
        n3 += 1;
    }
    let derivation = Derivation::TopCancellation { beta: fd.beta.to_string() };
    if families.is_empty() {
        PatternOutcome::Bound { n1_max: None, derivation }
    } else {
        PatternOutcome::FamilyDetected { families, derivation }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: i64, b: i64) -> SeqParams {
        SeqParams::new(a, b).unwrap()
    }

    #[test]
    fn silver_margin() {
        let pat = GapPattern { placement: Placement::Middle, kind: Kind::First, g1: Gap::AtLeast(2), g2: Gap::AtLeast(1) };
        match pattern_bound(&pat, p(2, 1)) {
            PatternOutcome::Bound { n1_max, derivation: Derivation::Margin { margin, s, n_exclusive } } => {
                assert_eq!(margin, "4+3√2");
                assert_eq!((s, n_exclusive, n1_max), (3, 3, None));
            }
            other => panic!("{other:?}"),
        }
        let root = GapPattern::root(Placement::Middle, Kind::First);
        assert_eq!(pattern_bound(&root, p(2, 1)), PatternOutcome::FixNextGap);
    }

    #[test]
    fn golden_shift_family() {
        let pat = GapPattern { placement: Placement::Middle, kind: Kind::First, g1: Gap::Fixed(1), g2: Gap::Fixed(2) };
        match pattern_bound(&pat, p(1, 1)) {
            PatternOutcome::FamilyDetected { families, .. } => {
                assert_eq!(families, vec![APFamily::shift(0, 2, 3)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn golden_bottom_single_candidate() {
        let pat = GapPattern { placement: Placement::Bottom, kind: Kind::First, g1: Gap::Fixed(1), g2: Gap::Fixed(1) };
        match pattern_bound(&pat, p(1, 1)) {
            PatternOutcome::Bound { n1_max: None, derivation: Derivation::SingleCandidate { n3: None, .. } } => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn jacobsthal_mixed_families() {
        let pat = GapPattern { placement: Placement::Middle, kind: Kind::First, g1: Gap::Fixed(1), g2: Gap::AtLeast(1) };
        match pattern_bound(&pat, p(1, 2)) {
            PatternOutcome::FamilyDetected { families, .. } => {
                let canon: Vec<_> = families.iter().map(APFamily::canonical).collect();
                assert!(canon.contains(
                    &APFamily::new(IndexForm::new(1, 0), IndexForm::new(1, 2), IndexForm::new(2, 2), 1).canonical()
                ));
                assert!(canon.contains(
                    &APFamily::new(IndexForm::new(2, 0), IndexForm::new(1, 2), IndexForm::new(2, 2), 1).canonical()
                ));
            }
            other => panic!("{other:?}"),
        }
    }
}
