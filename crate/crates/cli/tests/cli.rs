use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::OnceLock;

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_lucasap");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn validator() -> &'static jsonschema::Validator {
    static V: OnceLock<jsonschema::Validator> = OnceLock::new();
    V.get_or_init(|| {
        let text = include_str!("../schema/output.schema.json");
        let schema: Value = serde_json::from_str(text).unwrap();
        jsonschema::validator_for(&schema).unwrap()
    })
}

fn assert_valid(doc: &Value) {
    let errors: Vec<String> = validator().iter_errors(doc).map(|e| format!("{e} at {}", e.instance_path)).collect();
    assert!(validator().is_valid(doc), "{errors:?}");
}

/// Runs, checks the exit status and validates stdout against the schema.
fn json(args: &[&str], code: i32) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    assert_valid(&doc);
    doc
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn certify_silver_pair() {
    let doc = json(&["certify", "--A", "2", "--B", "1", "--kind", "first"], 0);
    let aps = doc["aps"].as_array().unwrap();
    assert_eq!(aps.len(), 1);
    assert_eq!((aps[0]["k"].as_u64(), aps[0]["l"].as_u64(), aps[0]["m"].as_u64()), (Some(0), Some(1), Some(2)));
    assert_eq!(doc["certificate"]["method"], "gap_pattern");
    assert_eq!(doc["certificate"]["complete"], true);
}

#[test]
fn degenerate_pair_is_invalid_input() {
    let out = run(&["classify", "--A", "1", "--B", "-1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degenerate: (α/β) has order 3"));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_valid(&doc);
}

#[test]
fn classify_reports_roots() {
    let doc = json(&["classify", "--A", "1", "--B", "-3"], 0);
    assert_eq!(doc["D"], "-11");
    assert_eq!(doc["classification"]["type"], "complex_conjugate");
    assert_eq!(doc["dominant"], false);
}

#[test]
fn sunit_bound() {
    let doc = json(&["sunit-bound"], 0);
    assert_eq!(doc["digits"], 2341);
    assert_eq!(doc["belowBound"], true);
    assert_eq!(doc["bound"], "6.45e2340");
    assert_eq!(doc["value"].as_str().unwrap().len(), 2341);
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["classify", "--A", "3"][..],
        &["frobnicate"],
        &["certify", "--A", "2", "--B", "1", "--kind", "third"],
        &["scan", "--a-range", "3..1", "--b-range", "1..2", "--out", "x.json"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("Grammar:"), "{args:?}");
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn complex_pair_cannot_be_certified() {
    let doc = json(&["certify", "--A", "1", "--B", "-3", "--kind", "first"], 1);
    assert!(doc["error"].as_str().unwrap().contains("D = -11"));
}

#[test]
fn infinite_pair_reports_families() {
    let doc = json(&["certify", "--A", "1", "--B", "2", "--kind", "first"], 0);
    assert_eq!(doc["infinite"], true);
    let fam = json(&["families", "--A", "1", "--B", "2", "--kind", "first", "--max-exponent", "12"], 0);
    let reports = fam["families"].as_array().unwrap();
    assert!(!reports.is_empty());
    for r in reports {
        assert_eq!(r["checked"], r["nontrivial"]);
    }
}

#[test]
fn enumerate_fibonacci() {
    let doc = json(&["enumerate", "--A", "1", "--B", "1", "--kind", "first", "--max-index", "12"], 0);
    let last = doc["aps"].as_array().unwrap().last().unwrap().clone();
    // 34, 89, 144
    assert_eq!(last["values"], serde_json::json!(["34", "89", "144"]));
}

#[test]
fn small_cases_grid_check() {
    let doc = json(&["smallcases", "--kind", "both", "--max-index", "5", "--grid-check", "8"], 0);
    assert_eq!(doc["mismatches"].as_array().unwrap().len(), 0);
    assert_eq!(doc["results"].as_array().unwrap().len(), 2);
    let steps = json(&["smallcases", "--kind", "first", "--max-index", "4", "--steps"], 0);
    assert!(steps["results"][0]["cases"].as_array().is_some_and(|c| !c.is_empty()));
}

#[test]
fn tables_small_cap() {
    let doc = json(&["verify-tables", "--b-cap", "6"], 0);
    assert!(doc["mismatches"].as_array().unwrap().is_empty());
}

#[test]
fn factor_trinomial_finds_complex_companion() {
    let doc = json(&["factor-trinomial", "--shape", "low", "--a", "3", "--b", "1"], 0);
    let f = &doc["factors"][0];
    assert_eq!(f["factor"], "X^2+X+2");
    assert_eq!(f["pair"]["A"], -1);
    assert_eq!(f["pair"]["B"], -2);
    json(&["factor-trinomial", "--shape", "low", "--a", "1", "--b", "3"], 1);
}

#[test]
fn scan_is_identical_across_worker_counts() {
    let mut bodies = Vec::new();
    for (jobs, name) in [("1", "scan1.csv"), ("4", "scan4.csv"), ("8", "scan8.csv")] {
        let path = tmp(name);
        let p = path.to_str().unwrap();
        json(&["scan", "--a-range", "-5..5", "--b-range", "-4..8", "--max-index", "40", "--out", p, "--jobs", jobs], 0);
        bodies.push(std::fs::read(&path).unwrap());
    }
    assert!(bodies.windows(2).all(|w| w[0] == w[1]));
    let text = String::from_utf8(bodies.remove(0)).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("A,B,kind,classification,ap_count_window,family_count,certified,n0"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    // 10 nonzero A times 12 nonzero B, both kinds.
    assert_eq!(rows.len(), 10 * 12 * 2);
    let keys: Vec<(i64, i64, &str)> = rows.iter().map(|r| (r[0].parse().unwrap(), r[1].parse().unwrap(), r[2])).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    let silver = rows.iter().find(|r| r[0] == "2" && r[1] == "1" && r[2] == "first").unwrap();
    assert_eq!((silver[4], silver[5], silver[6]), ("1", "0", "true"));
    let degenerate = rows.iter().find(|r| r[0] == "1" && r[1] == "-1").unwrap();
    assert_eq!(degenerate[3], "degenerate(3)");
}

#[test]
fn scan_json_matches_schema() {
    let path = tmp("scan.json");
    let p = path.to_str().unwrap();
    json(&["scan", "--a-range", "-2..2", "--b-range", "-2..2", "--kind", "first", "--max-index", "30", "--out", p], 0);
    let doc: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_valid(&doc);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 16);
    let text = tmp("scan.txt");
    json(&["scan", "--a-range", "1..2", "--b-range", "1..2", "--out", text.to_str().unwrap()], 0);
    assert!(std::fs::read_to_string(&text).unwrap().starts_with("     A"));
}

#[test]
fn exhausted_gap_cap_is_inconclusive() {
    let doc = json(&["certify", "--A", "2", "--B", "1", "--kind", "first", "--gap-cap", "0"], 2);
    assert!(doc["error"].as_str().unwrap().starts_with("inconclusive"));
    assert!(!doc["openPatterns"].as_array().unwrap().is_empty());
}
