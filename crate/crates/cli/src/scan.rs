use std::fmt::Write as _;
use std::path::Path;

use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use lucasap::params::degeneracy_order;
use lucasap::{certified_enumerate, detect_families, find_aps, CertifyConfig, Enumeration, Kind, SeqParams};

/// Largest number of (A, B, kind) jobs one scan accepts.
pub const MAX_JOBS: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScanFormat {
    Json,
    Csv,
    Text,
}

pub struct ScanJob {
    pub a_range: (i64, i64),
    pub b_range: (i64, i64),
    pub kinds: Vec<Kind>,
    pub max_index: usize,
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    #[serde(rename = "A")]
    pub a: i64,
    #[serde(rename = "B")]
    pub b: i64,
    pub kind: Kind,
    pub classification: String,
    pub ap_count_window: usize,
    pub family_count: usize,
    pub certified: bool,
    pub n0: Option<usize>,
}

/// Parses `LO..HI` (both ends included).
pub fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected LO..HI, got `{s}`"))?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: i64 = lo.trim().parse().map_err(|e| format!("bad lower end `{lo}`: {e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("bad upper end `{hi}`: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    if lo < -lucasap::params::COEFF_LIMIT || hi > lucasap::params::COEFF_LIMIT {
        return Err(format!("range {lo}..{hi} exceeds the coefficient limit"));
    }
    Ok((lo, hi))
}

fn scan_one(a: i64, b: i64, kind: Kind, max_index: usize, config: &CertifyConfig) -> ScanRow {
    let mut row = ScanRow {
        a,
        b,
        kind,
        classification: String::new(),
        ap_count_window: 0,
        family_count: 0,
        certified: false,
        n0: None,
    };
    let p = match SeqParams::new(a, b) {
        Ok(p) => p,
        Err(_) => {
            let order = degeneracy_order(a, b).unwrap_or(0);
            row.classification = format!("degenerate({order})");
            return row;
        }
    };
    row.classification = p.classify().to_string();
    row.ap_count_window = find_aps(p, kind, max_index).len();
    row.family_count = detect_families(p, kind, config.family_exponent).len();
    if p.is_dominant() {
        if let Ok(Enumeration::Certified { certificate, .. }) = certified_enumerate(p, kind, config) {
            row.certified = certificate.complete;
            row.n0 = Some(certificate.n0);
        }
    }
    row
}

/// Rows ordered by (A, B, kind). Pairs with AB = 0 are skipped.
pub fn scan_rows(job: &ScanJob) -> Result<Vec<ScanRow>, String> {
    let mut kinds = job.kinds.clone();
    kinds.sort();
    kinds.dedup();
    let mut cells = Vec::new();
    for a in job.a_range.0..=job.a_range.1 {
        for b in job.b_range.0..=job.b_range.1 {
            if a == 0 || b == 0 {
                continue;
            }
            for &k in &kinds {
                cells.push((a, b, k));
                if cells.len() > MAX_JOBS {
                    return Err(format!("scan exceeds {MAX_JOBS} jobs"));
                }
            }
        }
    }
    let config = CertifyConfig::default();
    let work = || cells.par_iter().map(|&(a, b, k)| scan_one(a, b, k, job.max_index, &config)).collect();
    match job.jobs {
        Some(0) => Err("--jobs must be at least 1".into()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(|e| e.to_string())?;
            Ok(pool.install(work))
        }
        None => Ok(work()),
    }
}

pub fn render(rows: &[ScanRow], job: &ScanJob, format: ScanFormat) -> Result<String, String> {
    match format {
        ScanFormat::Json => {
            let doc = json!({
                "aRange": [job.a_range.0, job.a_range.1],
                "bRange": [job.b_range.0, job.b_range.1],
                "maxIndex": job.max_index,
                "rows": rows,
            });
            Ok(serde_json::to_string_pretty(&doc).expect("json") + "\n")
        }
        ScanFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r).map_err(|e| e.to_string())?;
            }
            if rows.is_empty() {
                w.write_record(CSV_HEADER).map_err(|e| e.to_string())?;
            }
            String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
        }
        ScanFormat::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{:>6} {:>6} {:<6} {:<18} {:>4} {:>4} {:<9} {:>3}", "A", "B", "kind", "class", "aps", "fam", "certified", "n0");
            for r in rows {
                let n0 = r.n0.map(|n| n.to_string()).unwrap_or_else(|| "-".into());
                let _ = writeln!(
                    s,
                    "{:>6} {:>6} {:<6} {:<18} {:>4} {:>4} {:<9} {:>3}",
                    r.a,
                    r.b,
                    r.kind.as_str(),
                    r.classification,
                    r.ap_count_window,
                    r.family_count,
                    r.certified,
                    n0
                );
            }
            Ok(s)
        }
    }
}

pub const CSV_HEADER: [&str; 8] =
    ["A", "B", "kind", "classification", "ap_count_window", "family_count", "certified", "n0"];

fn infer_format(out: &Path) -> ScanFormat {
    match out.extension().and_then(|e| e.to_str()) {
        Some("csv") => ScanFormat::Csv,
        Some("txt") => ScanFormat::Text,
        _ => ScanFormat::Json,
    }
}

pub fn run(job: &ScanJob, out: &Path, format: Option<ScanFormat>) -> Result<Value, String> {
    let format = format.unwrap_or_else(|| infer_format(out));
    let rows = scan_rows(job)?;
    let body = render(&rows, job, format)?;
    std::fs::write(out, body).map_err(|e| format!("cannot write {}: {e}", out.display()))?;
    Ok(json!({
        "out": out.display().to_string(),
        "format": format!("{format:?}").to_lowercase(),
        "rows": rows.len(),
        "certified": rows.iter().filter(|r| r.certified).count(),
    }))
}
