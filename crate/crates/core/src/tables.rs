//! The published classification tables and their end-to-end verification.
//!
//! The data ships as `data/tables.json`; see `data/tables.schema.json`. Each row keeps
//! the printed orientation next to the canonical form, and all comparisons use the
//! canonical form.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::apsearch::{find_aps, is_ap, verify_family, APFamily};
use crate::certify::{certified_enumerate, CertifyConfig, Enumeration};
use crate::error::TableError;
use crate::params::{Kind, SeqParams};
use crate::sequence::LucasSequence;

pub const TABLES_JSON: &str = include_str!("../data/tables.json");
pub const TABLES_SCHEMA: &str = include_str!("../data/tables.schema.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PairConstraint {
    Fixed {
        #[serde(rename = "A")]
        a: i64,
        #[serde(rename = "B")]
        b: i64,
    },
    /// `(A, B)` for every `B ≥ b_min`.
    BFamily {
        #[serde(rename = "A")]
        a: i64,
        #[serde(rename = "B_min")]
        b_min: i64,
    },
}

impl PairConstraint {
    pub fn matches(&self, a: i64, b: i64) -> bool {
        match *self {
            PairConstraint::Fixed { a: x, b: y } => (x, y) == (a, b),
            PairConstraint::BFamily { a: x, b_min } => x == a && b >= b_min,
        }
    }

    /// Pairs covered by the row, with `B` capped at `b_cap` for families.
    pub fn pairs(&self, b_cap: i64) -> Vec<(i64, i64)> {
        match *self {
            PairConstraint::Fixed { a, b } => vec![(a, b)],
            PairConstraint::BFamily { a, b_min } => (b_min..=b_cap).map(|b| (a, b)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub sporadic: Vec<[usize; 3]>,
    pub families: Vec<APFamily>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub pair: PairConstraint,
    pub verbatim: String,
    /// As printed; the middle index is the one carrying `−2`.
    pub sporadic: Vec<[usize; 3]>,
    pub families: Vec<APFamily>,
    pub canonical: CanonicalForm,
}

impl TableEntry {
    fn computed_canonical(&self) -> CanonicalForm {
        let mut sporadic: Vec<[usize; 3]> = self
            .sporadic
            .iter()
            .map(|&[k, l, m]| if k <= m { [k, l, m] } else { [m, l, k] })
            .collect();
        sporadic.sort_by_key(|t| (t[2], t[0], t[1]));
        CanonicalForm { sporadic, families: self.families.iter().map(APFamily::canonical).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub id: u32,
    pub kind: Kind,
    pub rows: Vec<TableEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tables {
    pub schema: String,
    pub tables: Vec<Table>,
}

impl Tables {
    pub fn parse(s: &str) -> Result<Tables, TableError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn builtin() -> Tables {
        Tables::parse(TABLES_JSON).expect("bundled table resource is well-formed")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tables serialize")
    }

    pub fn for_kind(&self, kind: Kind) -> &Table {
        self.tables.iter().find(|t| t.kind == kind).expect("one table per kind")
    }

    /// The row covering `(A, B)`, if any.
    pub fn lookup(&self, kind: Kind, a: i64, b: i64) -> Option<&TableEntry> {
        self.for_kind(kind).rows.iter().find(|r| r.pair.matches(a, b))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub sporadic_checked: usize,
    pub families_checked: usize,
    pub pairs_certified: usize,
    pub pairs_infinite: usize,
    pub absent_pairs_checked: usize,
    /// Table content the tools contradict. Must be empty.
    pub mismatches: Vec<String>,
    /// Genuine progressions found by the tools that the printed table does not list.
    pub omissions: Vec<String>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Window used to compare infinite pairs with their table rows.
pub const FAMILY_WINDOW: usize = 60;
/// Grid of pairs that must be progression-free when absent from the tables.
pub const ABSENT_GRID: i64 = 10;

fn family_covers(f: &APFamily, t: (usize, usize, usize)) -> bool {
    (f.t_min..=FAMILY_WINDOW as i64).any(|s| {
        let (k, l, m) = f.indices_at(s);
        let key = (k as usize, l as usize, m as usize);
        l >= 0 && (key == t || (key.2, key.1, key.0) == t)
    })
}

fn check_row(
    kind: Kind,
    row: &TableEntry,
    a: i64,
    b: i64,
    config: &CertifyConfig,
    report: &mut TableReport,
) {
    let tag = format!("{kind} ({a},{b})");
    let Ok(params) = SeqParams::new(a, b) else {
        return;
    };
    let mut seq = LucasSequence::new(params, kind);
    for &[k, l, m] in &row.sporadic {
        let (x, y, z) = (seq.term(k).clone(), seq.term(l).clone(), seq.term(m).clone());
        report.sporadic_checked += 1;
        if !is_ap(&x, &y, &z) {
            report.mismatches.push(format!("{tag}: ({k},{l},{m}) is not a progression"));
        }
    }
    for f in &row.families {
        report.families_checked += 1;
        if let Err(e) = verify_family(f, params, kind, 50) {
            report.mismatches.push(format!("{tag}: family {f}: {e}"));
        }
    }
    if !params.is_dominant() {
        return;
    }
    let canon = &row.canonical;
    let want: BTreeSet<(usize, usize, usize)> = canon.sporadic.iter().map(|t| (t[0], t[1], t[2])).collect();
    match certified_enumerate(params, kind, config) {
        Ok(Enumeration::Certified { aps, .. }) => {
            report.pairs_certified += 1;
            if !canon.families.is_empty() {
                report.mismatches.push(format!("{tag}: certified finite but the table lists families"));
            }
            let got: BTreeSet<_> = aps.iter().map(|t| t.indices()).collect();
            for t in want.difference(&got) {
                report.mismatches.push(format!("{tag}: table triple {t:?} not found"));
            }
            for t in got.difference(&want) {
                report.omissions.push(format!("{tag}: {t:?}"));
            }
        }
        Ok(Enumeration::Infinite { families, .. }) => {
            report.pairs_infinite += 1;
            let fg: BTreeSet<_> = families.iter().cloned().collect();
            let fw: BTreeSet<_> = canon.families.iter().cloned().collect();
            if fg != fw {
                report.mismatches.push(format!("{tag}: families differ, engine {fg:?}, table {fw:?}"));
            }
            let got: BTreeSet<_> = find_aps(params, kind, FAMILY_WINDOW).iter().map(|t| t.indices()).collect();
            for t in want.difference(&got) {
                report.mismatches.push(format!("{tag}: table triple {t:?} not found"));
            }
            for &t in got.difference(&want) {
                if !fw.iter().any(|f| family_covers(f, t)) {
                    report.omissions.push(format!("{tag}: {t:?}"));
                }
            }
        }
        Err(e) => report.mismatches.push(format!("{tag}: {e}")),
    }
}

/// Cross-check both tables against the enumeration, family and certification tools.
pub fn verify_tables(b_cap: i64) -> TableReport {
    verify_tables_with(&Tables::builtin(), b_cap, &CertifyConfig::default())
}

pub fn verify_tables_with(tables: &Tables, b_cap: i64, config: &CertifyConfig) -> TableReport {
    let mut report = TableReport::default();
    for table in &tables.tables {
        for row in &table.rows {
            if row.computed_canonical() != row.canonical {
                report.mismatches.push(format!("{} {}: stored canonical form is stale", table.kind, row.verbatim));
            }
            for (a, b) in row.pair.pairs(b_cap) {
                check_row(table.kind, row, a, b, config, &mut report);
            }
        }
        for a in -ABSENT_GRID..=ABSENT_GRID {
            for b in -ABSENT_GRID..=ABSENT_GRID {
                if table.rows.iter().any(|r| r.pair.matches(a, b)) {
                    continue;
                }
                let Ok(params) = SeqParams::new(a, b) else { continue };
                if !params.is_dominant() {
                    continue;
                }
                report.absent_pairs_checked += 1;
                let tag = format!("{} ({a},{b})", table.kind);
                match certified_enumerate(params, table.kind, config) {
                    Ok(Enumeration::Certified { aps, .. }) if aps.is_empty() => {}
                    Ok(Enumeration::Certified { aps, .. }) => {
                        let shown: Vec<_> = aps.iter().map(|t| t.indices()).collect();
                        report.omissions.push(format!("{tag}: {shown:?}"));
                    }
                    Ok(Enumeration::Infinite { families, .. }) => {
                        report.omissions.push(format!("{tag}: infinite, {} famil(ies)", families.len()));
                    }
                    Err(e) => report.mismatches.push(format!("{tag}: {e}")),
                }
            }
        }
    }
    report
}

/// `(A, B)` pairs for the first and second kind.
pub type PairLists = (Vec<(i64, i64)>, Vec<(i64, i64)>);

/// Pairs with infinitely many progressions, by kind, as `(A, B)` lists.
pub fn infinite_pairs() -> PairLists {
    (
        vec![(1, 1), (-1, 1), (1, 2), (-1, 2), (-1, -2)],
        vec![(1, 1), (-1, 1), (-1, 2), (-1, -2)],
    )
}
