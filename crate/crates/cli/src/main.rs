use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lucasap::certify::default_probe;
use lucasap::special::quad_factors;
use lucasap::{
    case_equations, certified_enumerate, check_certificate, detect_families, find_aps, solve_all, solve_case,
    sunit_constant, verify_family, verify_tables, CertifyConfig, CertifyError, DomainFilter, Enumeration, Kind,
    SeqParams, Shape, TrinomialSpec, TOOL_VERSION,
};

mod scan;

/// Exit status for invalid input, including degenerate pairs.
const EXIT_INPUT: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

const GRAMMAR: &str = "\
Grammar:
  lucasap classify --A <int> --B <int>
  lucasap enumerate --A <int> --B <int> --kind first|second --max-index N [--format json|text]
  lucasap certify --A <int> --B <int> --kind first|second [--gap-cap N]
  lucasap families --A <int> --B <int> --kind first|second --max-exponent N
  lucasap smallcases --kind first|second|both --max-index N [--grid-check [R]] [--steps]
  lucasap verify-tables [--b-cap N]
  lucasap scan --a-range LO..HI --b-range LO..HI [--kind first|second|both] --max-index N --out PATH [--jobs N] [--format json|csv|text]
  lucasap factor-trinomial --shape middle|low|top --a A --b B
  lucasap sunit-bound";

#[derive(Parser)]
#[command(name = "lucasap", version = TOOL_VERSION, about = "Arithmetic progressions in Lucas sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Pair {
    #[arg(long = "A", allow_negative_numbers = true)]
    a: i64,
    #[arg(long = "B", allow_negative_numbers = true)]
    b: i64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    First,
    Second,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::First => Kind::First,
            KindArg::Second => Kind::Second,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindSel {
    First,
    Second,
    Both,
}

impl KindSel {
    pub fn kinds(self) -> Vec<Kind> {
        match self {
            KindSel::First => vec![Kind::First],
            KindSel::Second => vec![Kind::Second],
            KindSel::Both => Kind::BOTH.to_vec(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ShapeArg {
    /// X^a − 2X^b + 1
    Middle,
    /// X^a + X^b − 2
    Low,
    /// 2X^a − X^b − 1
    Top,
}

#[derive(Subcommand)]
enum Command {
    /// Degeneracy and root type of (A, B).
    Classify {
        #[command(flatten)]
        pair: Pair,
    },
    /// All progressions with indices up to --max-index.
    Enumerate {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 60)]
        max_index: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Complete enumeration with a completeness certificate (dominant pairs).
    Certify {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 12)]
        gap_cap: u32,
    },
    /// Infinite families: shift families and those found by the pattern engine.
    Families {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 12)]
        max_exponent: usize,
    },
    /// Symbolic solution of all cases with indices up to --max-index.
    Smallcases {
        #[arg(long, value_enum)]
        kind: KindSel,
        #[arg(long, default_value_t = 6)]
        max_index: usize,
        /// Compare against brute force on |A|, |B| ≤ R.
        #[arg(long, value_name = "R", num_args = 0..=1, default_missing_value = "40")]
        grid_check: Option<i64>,
        /// Include the per-equation reasoning steps.
        #[arg(long)]
        steps: bool,
    },
    /// Cross-check the bundled classification tables.
    VerifyTables {
        #[arg(long, default_value_t = 25)]
        b_cap: i64,
    },
    /// Batch grid scan.
    Scan {
        #[arg(long, value_parser = scan::parse_range, allow_hyphen_values = true)]
        a_range: (i64, i64),
        #[arg(long, value_parser = scan::parse_range, allow_hyphen_values = true)]
        b_range: (i64, i64),
        #[arg(long, value_enum, default_value_t = KindSel::Both)]
        kind: KindSel,
        #[arg(long, default_value_t = 60)]
        max_index: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum)]
        format: Option<scan::ScanFormat>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Monic quadratic factors of a normalized trinomial.
    FactorTrinomial {
        #[arg(long, value_enum)]
        shape: ShapeArg,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
    },
    /// The S-unit counting constant and its comparison with 6.45e2340.
    SunitBound,
}

struct Failure {
    code: u8,
    doc: Value,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, doc: json!({ "error": message.into() }) }
}

type Outcome = Result<Value, Failure>;

fn params(pair: Pair) -> Result<SeqParams, Failure> {
    SeqParams::new(pair.a, pair.b).map_err(|e| fail(EXIT_INPUT, e.to_string()))
}

fn classify(pair: Pair) -> Outcome {
    let p = params(pair)?;
    Ok(json!({
        "A": p.a(),
        "B": p.b(),
        "D": p.d().to_string(),
        "classification": p.classify(),
        "dominant": p.is_dominant(),
    }))
}

fn enumerate(pair: Pair, kind: Kind, max_index: usize) -> Outcome {
    let p = params(pair)?;
    let aps = find_aps(p, kind, max_index);
    Ok(json!({ "A": p.a(), "B": p.b(), "kind": kind, "maxIndex": max_index, "aps": aps }))
}

fn certify(pair: Pair, kind: Kind, gap_cap: u32) -> Outcome {
    let p = params(pair)?;
    let config = CertifyConfig { gap_cap, ..CertifyConfig::default() };
    match certified_enumerate(p, kind, &config) {
        Ok(Enumeration::Certified { aps, certificate }) => {
            if !check_certificate(&certificate, p, kind, default_probe(&certificate)) {
                return Err(fail(EXIT_MISMATCH, format!("certificate for {p} failed its re-check")));
            }
            Ok(json!({ "aps": aps, "certificate": certificate }))
        }
        Ok(Enumeration::Infinite { families, window, aps }) => {
            Ok(json!({ "infinite": true, "families": families, "window": window, "aps": aps }))
        }
        Err(e @ CertifyError::NotDominant { .. }) => Err(fail(EXIT_INPUT, e.to_string())),
        Err(CertifyError::Inconclusive { reason, open_patterns }) => Err(Failure {
            code: EXIT_INCONCLUSIVE,
            doc: json!({ "error": format!("inconclusive: {reason}"), "openPatterns": open_patterns }),
        }),
    }
}

fn families(pair: Pair, kind: Kind, max_exponent: usize) -> Outcome {
    let p = params(pair)?;
    let mut found = detect_families(p, kind, max_exponent);
    // Families with non-shift steps come out of the pattern engine.
    if p.is_dominant() {
        let config = CertifyConfig { family_exponent: max_exponent, ..CertifyConfig::default() };
        if let Ok(Enumeration::Infinite { families, .. }) = certified_enumerate(p, kind, &config) {
            found.extend(families);
        }
    }
    let mut seen = std::collections::BTreeSet::new();
    found.retain(|f| seen.insert(format!("{}", f.canonical())));
    let mut reports = Vec::new();
    for f in found {
        match verify_family(&f, p, kind, 50) {
            Ok(r) => reports.push(r),
            Err(e) => return Err(fail(EXIT_MISMATCH, format!("family {f}: {e}"))),
        }
    }
    Ok(json!({ "A": p.a(), "B": p.b(), "kind": kind, "maxExponent": max_exponent, "families": reports }))
}

fn smallcases(kinds: Vec<Kind>, max_index: usize, grid: Option<i64>, steps: bool) -> Outcome {
    let filter = DomainFilter::default();
    let mut out = Vec::new();
    let mut mismatches = Vec::new();
    for kind in kinds {
        let set = solve_all(kind, max_index, &filter).map_err(|e| fail(EXIT_INCONCLUSIVE, e.to_string()))?;
        let eqs = case_equations(kind, max_index);
        let mut doc = json!({
            "kind": kind,
            "maxIndex": max_index,
            "equations": eqs.len(),
            "solutions": set,
        });
        if steps {
            let mut cases = Vec::new();
            for eq in &eqs {
                cases.push(solve_case(eq, &filter).map_err(|e| fail(EXIT_INCONCLUSIVE, e.to_string()))?);
            }
            doc["cases"] = serde_json::to_value(cases).expect("steps serialize");
        }
        if let Some(r) = grid {
            let mut checked = 0usize;
            for a in -r..=r {
                for b in -r..=r {
                    let Ok(p) = SeqParams::new(a, b) else { continue };
                    if !p.is_dominant() {
                        continue;
                    }
                    checked += 1;
                    let brute: std::collections::BTreeSet<_> = find_aps(p, kind, max_index + 1)
                        .iter()
                        .filter(|t| t.max_index() <= max_index)
                        .map(|t| t.indices())
                        .collect();
                    if set.triples_at(a, b) != brute {
                        mismatches.push(format!("{kind} ({a},{b})"));
                    }
                }
            }
            doc["gridCheck"] = json!({ "radius": r, "pairs": checked });
        }
        out.push(doc);
    }
    let doc = json!({ "results": out, "mismatches": mismatches });
    if mismatches.is_empty() {
        Ok(doc)
    } else {
        Err(Failure { code: EXIT_MISMATCH, doc })
    }
}

fn tables(b_cap: i64) -> Outcome {
    let report = verify_tables(b_cap);
    let doc = serde_json::to_value(&report).expect("report serializes");
    if report.passed() {
        Ok(doc)
    } else {
        Err(Failure { code: EXIT_MISMATCH, doc })
    }
}

fn factor(shape: ShapeArg, a: u32, b: u32) -> Outcome {
    let shape = match shape {
        ShapeArg::Middle => Shape::MiddleTwo,
        ShapeArg::Low => Shape::LowTwo,
        ShapeArg::Top => Shape::TopTwo,
    };
    let spec = TrinomialSpec::new(shape, a, b).ok_or_else(|| fail(EXIT_INPUT, "exponents must satisfy a > b ≥ 1"))?;
    if spec.a > lucasap::special::TRINOMIAL_CAP {
        return Err(fail(EXIT_INPUT, format!("exponent a above {}", lucasap::special::TRINOMIAL_CAP)));
    }
    let t = spec.poly();
    let factors: Vec<Value> = quad_factors(&spec)
        .into_iter()
        .map(|(p, q)| {
            let h = lucasap::UniPoly::from_i64(&[q, p, 1]);
            let (cof, _) = t.divrem_monic(&h);
            json!({
                "factor": h.fmt_in("X"),
                "cofactor": cof.fmt_in("X"),
                "p": p.to_string(),
                "q": q.to_string(),
                "discriminant": (p * p - 4 * q).to_string(),
                "pair": { "A": -p, "B": -q, "admissible": SeqParams::new(-p, -q).is_ok() },
            })
        })
        .collect();
    Ok(json!({ "trinomial": spec.to_string(), "shape": spec.shape, "factors": factors }))
}

fn sunit() -> Outcome {
    let c = sunit_constant();
    Ok(json!({
        "expression": "2^7776 + 3·2^2336 + 18·2^999 + 39",
        "digits": c.digits,
        "leading": c.leading,
        "scientific": c.scientific(),
        "belowBound": c.below_bound,
        "bound": "6.45e2340",
        "value": c.value.to_string(),
    }))
}

fn render_text(doc: &Value) -> String {
    let Some(aps) = doc.get("aps").and_then(Value::as_array) else {
        return serde_json::to_string_pretty(doc).expect("json");
    };
    let mut s = String::new();
    for t in aps {
        let (k, l, m) = (&t["k"], &t["l"], &t["m"]);
        let v = &t["values"];
        s.push_str(&format!("({k},{l},{m})  {} {} {}\n", v[0].as_str().unwrap_or(""), v[1].as_str().unwrap_or(""), v[2].as_str().unwrap_or("")));
    }
    s.push_str(&format!("{} progression(s)", aps.len()));
    s
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{s}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            if !e.use_stderr() {
                return ExitCode::SUCCESS;
            }
            eprintln!("\n{GRAMMAR}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    let mut format = Format::Json;
    let result = match cli.command {
        Command::Classify { pair } => classify(pair),
        Command::Enumerate { pair, kind, max_index, format: f } => {
            format = f;
            enumerate(pair, kind.into(), max_index)
        }
        Command::Certify { pair, kind, gap_cap } => certify(pair, kind.into(), gap_cap),
        Command::Families { pair, kind, max_exponent } => families(pair, kind.into(), max_exponent),
        Command::Smallcases { kind, max_index, grid_check, steps } => {
            smallcases(kind.kinds(), max_index, grid_check, steps)
        }
        Command::VerifyTables { b_cap } => tables(b_cap),
        Command::Scan { a_range, b_range, kind, max_index, out, format, jobs } => {
            let job = scan::ScanJob { a_range, b_range, kinds: kind.kinds(), max_index, jobs };
            scan::run(&job, &out, format).map_err(|e| fail(EXIT_INPUT, e))
        }
        Command::FactorTrinomial { shape, a, b } => factor(shape, a, b),
        Command::SunitBound => sunit(),
    };
    match result {
        Ok(doc) => {
            match format {
                Format::Json => emit(&serde_json::to_string_pretty(&doc).expect("json")),
                Format::Text => emit(&render_text(&doc)),
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            emit(&serde_json::to_string_pretty(&f.doc).expect("json"));
            if let Some(msg) = f.doc.get("error").and_then(Value::as_str) {
                eprintln!("{msg}");
            }
            ExitCode::from(f.code)
        }
    }
}
