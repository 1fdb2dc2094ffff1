//! Deterministic reports in JSON, markdown and CSV.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::check::{CheckReport, DimCell, Verdict};

/// Bumped whenever the JSON layout changes; see `schema/report.schema.json`.
pub const SCHEMA_VERSION: u32 = 1;
const CSV_HEADER: &str = "kind,name,verdict,checked,unverified_hypothesis,w,d,n,r,p,q,dim,skipped_reason\n";
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Markdown,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "md" => Ok(Format::Markdown),
            "csv" => Ok(Format::Csv),
            _ => Err(format!("unknown format {s:?} (json, md, csv)")),
        }
    }
}

/// A homology table row, keyed by `(complex, w, d, n, r)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct DimRow {
    pub complex: String,
    pub w: u32,
    pub d: i64,
    pub n: Option<u32>,
    pub r: Option<u32>,
    /// `(p, q) = (2r, d − r)` under `--gs-grading`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pq: Option<(i64, i64)>,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub engine_version: String,
    pub input_name: String,
    pub input_sha256: String,
    pub all_passed: bool,
    pub checks: Vec<CheckReport>,
    pub homology: Vec<DimRow>,
    /// Each failing leaf as `path: witness`.
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u128>>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Report {
    pub fn new(input_name: &str, input_text: &str) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            engine_version: ENGINE_VERSION.to_string(),
            input_name: input_name.to_string(),
            input_sha256: sha256_hex(input_text.as_bytes()),
            all_passed: true,
            checks: Vec::new(),
            homology: Vec::new(),
            failures: Vec::new(),
            timings_ms: None,
        }
    }

    pub fn add_check(&mut self, c: CheckReport) {
        if c.verdict == Verdict::Fail {
            self.all_passed = false;
        }
        self.failures.extend(c.failures());
        self.checks.push(c);
    }

    pub fn add_dims(&mut self, cells: impl IntoIterator<Item = DimCell>) {
        for c in cells {
            self.homology.push(DimRow { complex: c.complex, w: c.w, d: c.d, n: c.n, r: c.r, pq: None, dim: c.dim });
        }
        self.homology.sort();
        self.homology.dedup();
    }

    pub fn add_timing(&mut self, stage: &str, ms: u128) {
        self.timings_ms.get_or_insert_with(BTreeMap::new).insert(stage.to_string(), ms);
    }

    /// Labels every row with a filtration index `r` by `(p, q) = (2r, d − r)`.
    pub fn with_gs_grading(mut self) -> Self {
        for row in &mut self.homology {
            if let Some(r) = row.r {
                row.pq = Some((2 * r as i64, row.d - r as i64));
            }
        }
        self
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_passed {
            0
        } else {
            1
        }
    }
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "FAIL",
        Verdict::Skipped => "skipped",
    }
}

fn md_check(out: &mut String, c: &CheckReport, depth: usize) {
    let pad = "  ".repeat(depth);
    let _ = write!(out, "{pad}- **{}**: {} ({} checked)", c.name, verdict_str(c.verdict), c.checked);
    if let Some(r) = &c.skipped_reason {
        let _ = write!(out, ", {r}");
    }
    if c.unverified_hypothesis {
        out.push_str(", hypothesis unverified");
    }
    out.push('\n');
    for n in &c.notes {
        let _ = writeln!(out, "{pad}  - note: {n}");
    }
    for w in c.witnesses.iter().filter(|w| !w.starts_with("sub-check ")) {
        let _ = writeln!(out, "{pad}  - witness: {w}");
    }
    for s in &c.sub {
        md_check(out, s, depth + 1);
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(T::to_string).unwrap_or_default()
}

fn csv_check(out: &mut String, c: &CheckReport, path: &str) {
    let path = if path.is_empty() { c.name.clone() } else { format!("{path}/{}", c.name) };
    let _ = writeln!(
        out,
        "check,{},{},{},{},,,,,,,,{}",
        csv_field(&path),
        verdict_str(c.verdict),
        c.checked,
        c.unverified_hypothesis,
        csv_field(c.skipped_reason.as_deref().unwrap_or(""))
    );
    for s in &c.sub {
        csv_check(out, s, &path);
    }
}

/// Serializes a report. The output depends only on the report contents.
pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Markdown => {
            let mut out = String::new();
            let _ = writeln!(out, "# Report: {}\n", report.input_name);
            let _ = writeln!(out, "- engine version: {}", report.engine_version);
            let _ = writeln!(out, "- input sha256: `{}`", report.input_sha256);
            let _ = writeln!(out, "- all passed: {}\n", report.all_passed);
            if !report.checks.is_empty() {
                out.push_str("## Checks\n\n");
                for c in &report.checks {
                    md_check(&mut out, c, 0);
                }
                out.push('\n');
            }
            if !report.homology.is_empty() {
                let gs = report.homology.iter().any(|r| r.pq.is_some());
                out.push_str("## Homology\n\n");
                out.push_str(if gs { "| complex | w | d | n | r | (p,q) | dim |\n|---|---|---|---|---|---|---|\n" } else { "| complex | w | d | n | r | dim |\n|---|---|---|---|---|---|\n" });
                for r in &report.homology {
                    let _ = write!(out, "| {} | {} | {} | {} | {} |", r.complex, r.w, r.d, opt(&r.n), opt(&r.r));
                    if gs {
                        let _ = write!(out, " {} |", r.pq.map(|(p, q)| format!("({p},{q})")).unwrap_or_default());
                    }
                    let _ = writeln!(out, " {} |", r.dim);
                }
                out.push('\n');
            }
            if let Some(t) = &report.timings_ms {
                out.push_str("## Timings (ms)\n\n");
                for (k, v) in t {
                    let _ = writeln!(out, "- {k}: {v}");
                }
            }
            out
        }
        Format::Csv => {
            let mut out = String::from(CSV_HEADER);
            for c in &report.checks {
                csv_check(&mut out, c, "");
            }
            for r in &report.homology {
                let (p, q) = r.pq.map(|(p, q)| (p.to_string(), q.to_string())).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "homology,{},,,,{},{},{},{},{p},{q},{},",
                    csv_field(&r.complex),
                    r.w,
                    r.d,
                    opt(&r.n),
                    opt(&r.r),
                    r.dim
                );
            }
            out
        }
    }
}
