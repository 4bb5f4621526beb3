//! Completeness certificates for the dominant-root case.
//!
//! Outside a short list of exceptional pairs, the terms grow fast enough that
//! `|w_n| > 3|w_{n'}|` for all `n' < n` once `n > n0`, and no progression can have its
//! largest index there. Exceptional pairs go through the gap-pattern engine in
//! [`pattern`].

pub mod pattern;

use serde::{Deserialize, Serialize};

use crate::apsearch::{detect_families, find_aps, verify_family, APFamily, APTriple};
use crate::error::CertifyError;
use crate::params::{Kind, SeqParams};
use crate::sequence::LucasSequence;
use crate::TOOL_VERSION;

pub use pattern::{pattern_bound, Derivation, Gap, GapPattern, PatternOutcome, Placement};

/// Whether `(A, B)` is excluded from the growth lemma of the given kind.
pub fn growth_exception(params: SeqParams, kind: Kind) -> bool {
    let (a, b) = (params.a().abs(), params.b());
    match kind {
        Kind::First => (b < 0 && a <= 6) || (a == 1 && 0 < b && b <= 9) || (a == 2 && 0 < b && b <= 3),
        Kind::Second => (b < 0 && a <= 7) || (a == 1 && 0 < b && b <= 14) || (a == 2 && 0 < b && b <= 3),
    }
}

/// Index bound from the growth lemmas.
pub fn growth_n0(kind: Kind) -> usize {
    match kind {
        Kind::First => 7,
        Kind::Second => 6,
    }
}

/// `|w_n| > factor · |w_{n'}|` for every `n' < n`, decided exactly.
pub fn dominates_previous(seq: &mut LucasSequence, n: usize, factor: u32) -> bool {
    let terms = seq.terms(n);
    let top = num_traits::Signed::abs(&terms[n]);
    terms[..n].iter().all(|t| top > num_traits::Signed::abs(t) * factor)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertifyConfig {
    /// Largest value a free gap may be fixed to.
    pub gap_cap: u32,
    /// Largest number of gap splits along one branch.
    pub depth: u32,
    /// Exponent bound for the shift-family pre-check.
    pub family_exponent: usize,
    /// Brute-force window reported alongside infinite families.
    pub window: usize,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig { gap_cap: 12, depth: 12, family_exponent: 12, window: 40 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    GrowthLemma,
    GapPattern,
}

/// One settled leaf of the pattern tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternRecord {
    pub pattern: String,
    /// Largest `n1` this pattern permits; absent when it has no solution.
    pub n1_max: Option<u64>,
    pub derivation: Derivation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CompletenessCertificate {
    pub method: Method,
    #[serde(rename = "A")]
    pub a: i64,
    #[serde(rename = "B")]
    pub b: i64,
    pub kind: Kind,
    pub n0: usize,
    pub complete: bool,
    /// Growth lemma: the exception check and the exact ratio spot check.
    pub evidence: Vec<String>,
    pub patterns: Vec<PatternRecord>,
    pub aps: Vec<APTriple>,
    pub tool_version: String,
}

impl CompletenessCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Enumeration {
    Certified { aps: Vec<APTriple>, certificate: CompletenessCertificate },
    /// The sequence has infinitely many progressions; no certificate is issued.
    Infinite { families: Vec<APFamily>, window: usize, aps: Vec<APTriple> },
}

impl Enumeration {
    pub fn aps(&self) -> &[APTriple] {
        match self {
            Enumeration::Certified { aps, .. } | Enumeration::Infinite { aps, .. } => aps,
        }
    }

    pub fn certificate(&self) -> Option<&CompletenessCertificate> {
        match self {
            Enumeration::Certified { certificate, .. } => Some(certificate),
            Enumeration::Infinite { .. } => None,
        }
    }
}

/// Output of the pattern engine.
#[derive(Debug, Clone, Default)]
pub struct EngineRun {
    pub leaves: Vec<PatternRecord>,
    pub families: Vec<APFamily>,
    pub open: Vec<String>,
}

/// Settle all three placements, splitting gaps until every leaf is decided or the
/// configured limits are hit.
pub fn run_engine(params: SeqParams, kind: Kind, config: &CertifyConfig) -> EngineRun {
    let fd = pattern::Field::new(params);
    let mut run = EngineRun::default();
    let mut stack: Vec<(GapPattern, u32)> =
        Placement::ALL.iter().rev().map(|&pl| (GapPattern::root(pl, kind), 0)).collect();
    while let Some((pat, depth)) = stack.pop() {
        match pattern::bound_in(&fd, &pat) {
            PatternOutcome::Bound { n1_max, derivation } => {
                run.leaves.push(PatternRecord { pattern: pat.to_string(), n1_max, derivation });
            }
            PatternOutcome::FamilyDetected { families, derivation } => {
                run.families.extend(families);
                run.leaves.push(PatternRecord { pattern: pat.to_string(), n1_max: None, derivation });
            }
            PatternOutcome::Undecided { reason } => run.open.push(format!("{pat}: {reason}")),
            PatternOutcome::FixNextGap => {
                let within = pat.split_value().is_some_and(|v| v <= config.gap_cap);
                match pat.split() {
                    Some((fixed, free)) if depth < config.depth && within => {
                        stack.push((free, depth + 1));
                        stack.push((fixed, depth + 1));
                    }
                    _ => run.open.push(format!("{pat}: limits reached")),
                }
            }
        }
    }
    run
}

fn merge_families(mut fams: Vec<APFamily>) -> Vec<APFamily> {
    for f in fams.iter_mut() {
        *f = f.canonical();
    }
    fams.sort();
    fams.dedup();
    fams
}

/// Enumerate every progression of a dominant sequence, with proof of completeness,
/// or report the families that make the set infinite.
pub fn certified_enumerate(
    params: SeqParams,
    kind: Kind,
    config: &CertifyConfig,
) -> Result<Enumeration, CertifyError> {
    if !params.is_dominant() {
        return Err(CertifyError::NotDominant { d: params.d() });
    }
    let shift = detect_families(params, kind, config.family_exponent);
    if !growth_exception(params, kind) {
        if !shift.is_empty() {
            return infinite(params, kind, shift, config);
        }
        let n0 = growth_n0(kind);
        let mut seq = LucasSequence::new(params, kind);
        let spot = n0 + 40;
        if let Some(n) = (n0 + 1..=spot).find(|&n| !dominates_previous(&mut seq, n, 3)) {
            return Err(CertifyError::Inconclusive {
                reason: format!("growth condition fails at n = {n} for {params}"),
                open_patterns: vec![],
            });
        }
        let aps = find_aps(params, kind, n0);
        let certificate = CompletenessCertificate {
            method: Method::GrowthLemma,
            a: params.a(),
            b: params.b(),
            kind,
            n0,
            complete: true,
            evidence: vec![
                "growth_exception = false".into(),
                format!("|w_n| > 3·max_{{n'<n}} |w_n'| verified exactly for {} < n ≤ {spot}", n0),
            ],
            patterns: vec![],
            aps: aps.clone(),
            tool_version: TOOL_VERSION.into(),
        };
        return Ok(Enumeration::Certified { aps, certificate });
    }

    let run = run_engine(params, kind, config);
    let mut families = shift;
    families.extend(run.families.iter().cloned());
    if !families.is_empty() {
        return infinite(params, kind, families, config);
    }
    if !run.open.is_empty() {
        return Err(CertifyError::Inconclusive {
            reason: format!("{} pattern(s) left open for {params} ({kind})", run.open.len()),
            open_patterns: run.open,
        });
    }
    let n0 = run.leaves.iter().filter_map(|r| r.n1_max).max().unwrap_or(2).max(2) as usize;
    let aps = find_aps(params, kind, n0);
    let mut patterns = run.leaves;
    patterns.sort_by(|x, y| x.pattern.cmp(&y.pattern));
    let certificate = CompletenessCertificate {
        method: Method::GapPattern,
        a: params.a(),
        b: params.b(),
        kind,
        n0,
        complete: true,
        evidence: vec!["growth_exception = true".into()],
        patterns,
        aps: aps.clone(),
        tool_version: TOOL_VERSION.into(),
    };
    Ok(Enumeration::Certified { aps, certificate })
}

fn infinite(
    params: SeqParams,
    kind: Kind,
    families: Vec<APFamily>,
    config: &CertifyConfig,
) -> Result<Enumeration, CertifyError> {
    let families = merge_families(families);
    for f in &families {
        if let Err(e) = verify_family(f, params, kind, 0) {
            return Err(CertifyError::Inconclusive {
                reason: format!("family {f} failed its identity certificate: {e}"),
                open_patterns: vec![],
            });
        }
    }
    let aps = find_aps(params, kind, config.window);
    Ok(Enumeration::Infinite { families, window: config.window, aps })
}

/// Default re-check window for a certificate.
pub fn default_probe(cert: &CompletenessCertificate) -> usize {
    (4 * cert.n0).max(100)
}

/// Re-validate a certificate against a fresh brute-force window.
///
/// Fails for pairs with any shift family, for a probe below `n0`, and whenever the
/// window holds a progression not listed in the certificate.
pub fn check_certificate(cert: &CompletenessCertificate, params: SeqParams, kind: Kind, probe: usize) -> bool {
    if (cert.a, cert.b, cert.kind) != (params.a(), params.b(), kind) || probe < cert.n0 || !cert.complete {
        return false;
    }
    if !detect_families(params, kind, 12).is_empty() {
        return false;
    }
    if cert.aps.iter().any(|t| t.max_index() > cert.n0) {
        return false;
    }
    find_aps(params, kind, probe) == cert.aps
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: i64, b: i64) -> SeqParams {
        SeqParams::new(a, b).unwrap()
    }

    fn idx(aps: &[APTriple]) -> Vec<(usize, usize, usize)> {
        aps.iter().map(APTriple::indices).collect()
    }

    #[test]
    fn exception_lists() {
        assert!(growth_exception(p(1, 9), Kind::First));
        assert!(!growth_exception(p(1, 10), Kind::First));
        assert!(growth_exception(p(1, 14), Kind::Second));
        assert!(!growth_exception(p(1, 15), Kind::Second));
        assert!(growth_exception(p(-7, -3), Kind::Second));
        assert!(!growth_exception(p(-7, -3), Kind::First));
    }

    #[test]
    fn silver_pair_certificate() {
        let e = certified_enumerate(p(2, 1), Kind::First, &CertifyConfig::default()).unwrap();
        assert_eq!(idx(e.aps()), vec![(0, 1, 2)]);
        let cert = e.certificate().unwrap();
        assert_eq!(cert.method, Method::GapPattern);
        assert!(cert.patterns.iter().any(|r| matches!(&r.derivation, Derivation::Margin { margin, .. } if margin == "4+3√2")));
        assert!(check_certificate(cert, p(2, 1), Kind::First, default_probe(cert)));
    }

    #[test]
    fn growth_lemma_path() {
        let e = certified_enumerate(p(5, 1), Kind::First, &CertifyConfig::default()).unwrap();
        assert!(e.aps().is_empty());
        assert_eq!(e.certificate().unwrap().method, Method::GrowthLemma);
        assert_eq!(e.certificate().unwrap().n0, 7);
    }

    #[test]
    fn second_kind_pairs() {
        let e = certified_enumerate(p(1, 3), Kind::Second, &CertifyConfig::default()).unwrap();
        assert_eq!(idx(e.aps()), vec![(1, 4, 5)]);
        assert_eq!(e.certificate().unwrap().method, Method::GapPattern);
        let e = certified_enumerate(p(-3, -1), Kind::Second, &CertifyConfig::default()).unwrap();
        assert_eq!(idx(e.aps()), vec![(1, 0, 2)]);
        assert!(check_certificate(e.certificate().unwrap(), p(-3, -1), Kind::Second, 100));
    }

    #[test]
    fn families_never_certified() {
        for (a, b) in [(1, 1), (1, 2), (-1, 1)] {
            let e = certified_enumerate(p(a, b), Kind::First, &CertifyConfig::default()).unwrap();
            assert!(matches!(e, Enumeration::Infinite { .. }), "{a},{b}");
        }
    }

    #[test]
    fn certificate_json_round_trip() {
        let e = certified_enumerate(p(2, 1), Kind::First, &CertifyConfig::default()).unwrap();
        let cert = e.certificate().unwrap();
        let json = cert.to_json();
        assert!(json.contains("\"toolVersion\""));
        assert_eq!(&CompletenessCertificate::from_json(&json).unwrap(), cert);
    }
}
