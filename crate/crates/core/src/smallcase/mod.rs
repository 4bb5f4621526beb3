//! Symbolic analysis of progressions with small indices.
//!
//! For `k < l < m ≤ cap` each of the three placements of the `−2` gives a polynomial
//! equation `E(A, B) = 0`; [`solve_case`] finds all its integer solutions and
//! [`solve_all`] merges them into the progressions they induce.

pub mod dominance;
pub mod solve;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::SolveError;
use crate::params::{Kind, SeqParams};
use crate::poly::{BivarPoly, UniPoly};
use crate::sequence::LucasSequence;

pub use solve::{linear_candidates, solve_case, CaseSolution, RawSolutions, Step};

/// `w_n` as a polynomial in `A` and `B`.
pub fn poly_term(kind: Kind, n: usize) -> BivarPoly {
    let (w0, w1) = match kind {
        Kind::First => (BivarPoly::zero(), BivarPoly::constant(1)),
        Kind::Second => (BivarPoly::constant(2), BivarPoly::var_a()),
    };
    let (a, b) = (BivarPoly::var_a(), BivarPoly::var_b());
    let mut prev = w0;
    let mut cur = w1;
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = a.mul(&cur).add(&b.mul(&prev));
        prev = cur;
        cur = next;
    }
    cur
}

/// Where the `−2` sits for a sorted triple `k < l < m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Provenance {
    pub triple: (usize, usize, usize),
    /// 1: `w_k − 2w_l + w_m`; 2: `w_l − 2w_k + w_m`; 3: `w_k − 2w_m + w_l`.
    pub variant: u8,
}

impl Provenance {
    /// `(coefficient, index)` pairs.
    pub fn terms(&self) -> [(i64, usize); 3] {
        let (k, l, m) = self.triple;
        match self.variant {
            1 => [(1, k), (-2, l), (1, m)],
            2 => [(-2, k), (1, l), (1, m)],
            3 => [(1, k), (-2, m), (1, l)],
            v => panic!("variant {v}"),
        }
    }

    /// The induced progression in canonical orientation (middle index carries `−2`).
    pub fn ap(&self) -> (usize, usize, usize) {
        let (k, l, m) = self.triple;
        match self.variant {
            1 => (k, l, m),
            2 => (l, k, m),
            _ => (k, m, l),
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (k, l, m) = self.triple;
        write!(f, "({k},{l},{m})/{}", self.variant)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseEquation {
    pub kind: Kind,
    pub triple: (usize, usize, usize),
    pub variant: u8,
    pub poly: BivarPoly,
    /// Other triples and variants with the same polynomial up to sign.
    pub duplicates: Vec<Provenance>,
}

impl CaseEquation {
    pub fn new(kind: Kind, triple: (usize, usize, usize), variant: u8) -> Self {
        let prov = Provenance { triple, variant };
        let poly = prov
            .terms()
            .iter()
            .fold(BivarPoly::zero(), |acc, &(c, n)| acc.add(&poly_term(kind, n).scale(&BigInt::from(c))));
        CaseEquation { kind, triple, variant, poly, duplicates: Vec::new() }
    }

    pub fn provenance(&self) -> Provenance {
        Provenance { triple: self.triple, variant: self.variant }
    }

    pub fn provenances(&self) -> Vec<Provenance> {
        std::iter::once(self.provenance()).chain(self.duplicates.iter().copied()).collect()
    }

    /// Terms of the primary provenance that are not identically zero.
    pub fn nonzero_terms(&self) -> Vec<(i64, usize)> {
        self.provenance()
            .terms()
            .into_iter()
            .filter(|&(_, n)| !poly_term(self.kind, n).is_zero())
            .collect()
    }
}

impl fmt::Display for CaseEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}=0", self.kind, self.provenance(), self.poly.fmt_grouped_by_b())
    }
}

/// All equations for `k < l < m ≤ m_cap`, deduplicated up to sign.
pub fn case_equations(kind: Kind, m_cap: usize) -> Vec<CaseEquation> {
    let mut out: Vec<CaseEquation> = Vec::new();
    for m in 2..=m_cap {
        for l in 1..m {
            for k in 0..l {
                for variant in 1..=3u8 {
                    let eq = CaseEquation::new(kind, (k, l, m), variant);
                    let neg = eq.poly.scale(&BigInt::from(-1));
                    match out.iter_mut().find(|o| o.poly == eq.poly || o.poly == neg) {
                        Some(o) => o.duplicates.push(eq.provenance()),
                        None => out.push(eq),
                    }
                }
            }
        }
    }
    out
}

/// Which pairs count as solutions, beyond `AB ≠ 0` and non-degeneracy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DomainFilter {
    /// Require `A² + 4B > 0`.
    pub dominant: bool,
    /// Allow the weighted dominance cutoff when the discriminant cannot be squeezed.
    pub dominance_fallback: bool,
}

impl Default for DomainFilter {
    fn default() -> Self {
        DomainFilter { dominant: true, dominance_fallback: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rejection {
    ZeroCoefficient,
    Degenerate(u32),
    NotDominant,
    EqualValues,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::ZeroCoefficient => f.write_str("AB = 0"),
            Rejection::Degenerate(o) => write!(f, "degenerate({o})"),
            Rejection::NotDominant => f.write_str("A²+4B ≤ 0"),
            Rejection::EqualValues => f.write_str("equal values"),
        }
    }
}

/// Membership of `(A, B)` in the domain, ignoring the progression itself.
pub fn admit(a: &BigInt, b: &BigInt, filter: &DomainFilter) -> Result<SeqParams, Rejection> {
    let (Some(a), Some(b)) = (a.to_i64(), b.to_i64()) else {
        return Err(Rejection::NotDominant);
    };
    match SeqParams::new(a, b) {
        Ok(p) if filter.dominant && !p.is_dominant() => Err(Rejection::NotDominant),
        Ok(p) => Ok(p),
        Err(crate::error::ParamError::Degenerate { order }) => Err(Rejection::Degenerate(order)),
        Err(_) => Err(Rejection::ZeroCoefficient),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Sporadic {
    #[serde(rename = "A", with = "crate::serde_bigint")]
    pub a: BigInt,
    #[serde(rename = "B", with = "crate::serde_bigint")]
    pub b: BigInt,
    pub triple: (usize, usize, usize),
    pub source: String,
}

/// `A` fixed, `B` free subject to `B ≥ b_min` (if bounded) and `B ∉ excluded`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BFamily {
    #[serde(rename = "A", with = "crate::serde_bigint")]
    pub a: BigInt,
    pub b_min: Option<String>,
    pub excluded: Vec<String>,
    pub triple: (usize, usize, usize),
    pub source: String,
}

impl BFamily {
    pub fn contains(&self, b: &BigInt) -> bool {
        let above = self.b_min.as_ref().is_none_or(|m| b >= &m.parse::<BigInt>().expect("decimal"));
        above && !self.excluded.iter().any(|x| x.parse::<BigInt>().ok().as_ref() == Some(b))
    }
}

/// `B = g(A)` for all admissible `A`; never produced for index caps up to 7.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CurveFamily {
    pub b_of_a: String,
    pub triple: (usize, usize, usize),
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Rejected {
    pub candidate: String,
    pub source: String,
    pub reason: Rejection,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionSet {
    pub sporadic: Vec<Sporadic>,
    pub families: Vec<BFamily>,
    pub curves: Vec<CurveFamily>,
    pub rejected: Vec<Rejected>,
}

impl SolutionSet {
    /// Progressions predicted at `(A, B)`.
    pub fn triples_at(&self, a: i64, b: i64) -> BTreeSet<(usize, usize, usize)> {
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        let mut out: BTreeSet<_> = self.sporadic.iter().filter(|s| s.a == a && s.b == b).map(|s| s.triple).collect();
        out.extend(self.families.iter().filter(|f| f.a == a && f.contains(&b)).map(|f| f.triple));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("solution set serializes")
    }
}

fn distinct_values(params: SeqParams, kind: Kind, t: (usize, usize, usize)) -> bool {
    let mut s = LucasSequence::new(params, kind);
    let (x, y, z) = (s.term(t.0).clone(), s.term(t.1).clone(), s.term(t.2).clone());
    x != y && y != z && x != z
}

/// Smallest `B` with `A² + 4B > 0`.
fn dominant_b_min(a: &BigInt) -> BigInt {
    let a2: BigInt = a * a;
    (-a2).div_floor(&BigInt::from(4)) + 1
}

fn family_for(
    kind: Kind,
    a: &BigInt,
    prov: Provenance,
    filter: &DomainFilter,
    set: &mut SolutionSet,
) {
    let t = prov.ap();
    let source = prov.to_string();
    let polys: Vec<UniPoly> = [t.0, t.1, t.2].iter().map(|&n| poly_term(kind, n).at_a(a)).collect();
    let mut excluded: BTreeSet<BigInt> = BTreeSet::new();
    for (i, j) in [(0, 1), (1, 2), (0, 2)] {
        let diff = polys[i].sub(&polys[j]);
        if diff.is_zero() {
            set.rejected.push(Rejected { candidate: format!("A={a}, B free"), source, reason: Rejection::EqualValues });
            return;
        }
        excluded.extend(diff.integer_roots());
    }
    excluded.insert(BigInt::zero());
    let a2: BigInt = a * a;
    for k in 1..=4 {
        let (q, r) = (-&a2).div_rem(&BigInt::from(k));
        if r.is_zero() {
            excluded.insert(q);
        }
    }
    let mut b_min = filter.dominant.then(|| dominant_b_min(a));
    if let Some(m) = b_min.as_mut() {
        excluded.retain(|x| x >= m);
        while excluded.remove(m) {
            *m += 1;
        }
    }
    set.families.push(BFamily {
        a: a.clone(),
        b_min: b_min.map(|m| m.to_string()),
        excluded: excluded.iter().map(|x| x.to_string()).collect(),
        triple: t,
        source,
    });
}

fn curve_for(kind: Kind, g: &UniPoly, prov: Provenance, filter: &DomainFilter, set: &mut SolutionSet) {
    let source = prov.to_string();
    let a2 = UniPoly::monomial(1, 2);
    // Identically degenerate along the curve.
    if (1..=4).any(|k| a2.add(&g.scale(&BigInt::from(k))).is_zero()) {
        set.rejected.push(Rejected { candidate: format!("B={}", g.fmt_in("A")), source, reason: Rejection::Degenerate(0) });
        return;
    }
    if filter.dominant {
        let d = a2.add(&g.scale(&BigInt::from(4)));
        let bounded = d.is_zero() || (d.degree().unwrap_or(0).is_multiple_of(2) && d.leading().is_negative());
        if bounded {
            let cut = if d.is_zero() { BigInt::zero() } else { d.root_bound() };
            let c = cut.to_i64().expect("small bound");
            let mut any = false;
            for a in (-c..=c).filter(|&a| a != 0) {
                let a = BigInt::from(a);
                let b = g.eval(&a);
                any |= point_for(kind, &a, &b, prov, filter, set);
            }
            if !any {
                set.rejected.push(Rejected { candidate: format!("B={}", g.fmt_in("A")), source, reason: Rejection::NotDominant });
            }
            return;
        }
    }
    set.curves.push(CurveFamily { b_of_a: g.fmt_in("A"), triple: prov.ap(), source });
}

fn point_for(kind: Kind, a: &BigInt, b: &BigInt, prov: Provenance, filter: &DomainFilter, set: &mut SolutionSet) -> bool {
    let source = prov.to_string();
    let status = admit(a, b, filter).and_then(|p| {
        if distinct_values(p, kind, prov.ap()) {
            Ok(())
        } else {
            Err(Rejection::EqualValues)
        }
    });
    match status {
        Ok(()) => {
            set.sporadic.push(Sporadic { a: a.clone(), b: b.clone(), triple: prov.ap(), source });
            true
        }
        Err(reason) => {
            set.rejected.push(Rejected { candidate: format!("(A,B)=({a},{b})"), source, reason });
            false
        }
    }
}

/// Apply the filter to one equation's raw solutions, for each of its provenances.
pub fn classify_solutions(eq: &CaseEquation, sol: &CaseSolution, filter: &DomainFilter) -> SolutionSet {
    let mut set = SolutionSet::default();
    for prov in eq.provenances() {
        for (a, b) in &sol.raw.points {
            point_for(eq.kind, a, b, prov, filter, &mut set);
        }
        for a in &sol.raw.free_a {
            if a.is_zero() {
                continue;
            }
            family_for(eq.kind, a, prov, filter, &mut set);
        }
        for g in &sol.raw.curves {
            curve_for(eq.kind, g, prov, filter, &mut set);
        }
    }
    set
}

/// Solve every case equation up to `m_cap` and merge the results.
pub fn solve_all(kind: Kind, m_cap: usize, filter: &DomainFilter) -> Result<SolutionSet, SolveError> {
    let mut all = SolutionSet::default();
    for eq in case_equations(kind, m_cap) {
        let sol = solve_case(&eq, filter)?;
        let set = classify_solutions(&eq, &sol, filter);
        all.sporadic.extend(set.sporadic);
        all.families.extend(set.families);
        all.curves.extend(set.curves);
        all.rejected.extend(set.rejected);
    }
    all.sporadic.sort_by(|x, y| (&x.a, &x.b, x.triple).cmp(&(&y.a, &y.b, y.triple)));
    all.sporadic.dedup_by(|x, y| (&x.a, &x.b, x.triple) == (&y.a, &y.b, y.triple));
    all.families.sort_by(|x, y| (&x.a, x.triple).cmp(&(&y.a, y.triple)));
    all.families.dedup_by(|x, y| (&x.a, x.triple) == (&y.a, y.triple));
    // A sporadic point inside a family adds nothing.
    let fams = all.families.clone();
    all.sporadic.retain(|s| !fams.iter().any(|f| f.a == s.a && f.triple == s.triple && f.contains(&s.b)));
    all.rejected.sort();
    all.rejected.dedup();
    Ok(all)
}

/// `|B| ≤ b_cap` values of a family, for reports.
pub fn family_members(f: &BFamily, b_cap: i64) -> Vec<i64> {
    (-b_cap..=b_cap).filter(|&b| f.contains(&BigInt::from(b))).collect()
}
