//! Structured verdicts for identity, chain-map and quasi-isomorphism checks.

use serde::Serialize;

use crate::complex::Window;

const MAX_WITNESSES: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

/// One homology-dimension cell. `n` is a Hodge count or column index, `r` a
/// filtration index; both are optional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, PartialOrd, Ord)]
pub struct DimCell {
    pub complex: String,
    pub w: u32,
    pub d: i64,
    pub n: Option<u32>,
    pub r: Option<u32>,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub window: Option<Window>,
    pub n_range: Option<(u32, u32)>,
    pub r_range: Option<(u32, u32)>,
    pub verdict: Verdict,
    pub failures: usize,
    pub witnesses: Vec<String>,
    pub notes: Vec<String>,
    pub skipped_reason: Option<String>,
    pub unverified_hypothesis: bool,
    pub dims: Vec<DimCell>,
    pub checked: usize,
    pub sub: Vec<CheckReport>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            window: None,
            n_range: None,
            r_range: None,
            verdict: Verdict::Pass,
            failures: 0,
            witnesses: Vec::new(),
            notes: Vec::new(),
            skipped_reason: None,
            unverified_hypothesis: false,
            dims: Vec::new(),
            checked: 0,
            sub: Vec::new(),
        }
    }

    pub fn with_window(mut self, w: &Window) -> Self {
        self.window = Some(w.clone());
        self
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        let mut r = CheckReport::new(name);
        r.skip(reason);
        r
    }

    pub fn fail(&mut self, witness: String) {
        self.verdict = Verdict::Fail;
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(witness);
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn skip(&mut self, reason: impl Into<String>) {
        if self.verdict != Verdict::Fail {
            self.verdict = Verdict::Skipped;
        }
        self.skipped_reason = Some(reason.into());
    }

    /// True unless the verdict is `Fail` (skipped checks do not fail).
    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }

    pub fn is_skipped(&self) -> bool {
        self.verdict == Verdict::Skipped
    }

    /// Attaches a sub-report; a failing sub-report fails this one.
    pub fn push(&mut self, sub: CheckReport) {
        if sub.verdict == Verdict::Fail {
            self.fail(format!("sub-check {} failed", sub.name));
        }
        self.sub.push(sub);
    }

    pub fn count(&mut self, n: usize) {
        self.checked += n;
    }

    /// A flat list of `(name, verdict)` over this report and all sub-reports.
    pub fn flatten(&self) -> Vec<(String, Verdict)> {
        let mut out = vec![(self.name.clone(), self.verdict)];
        for s in &self.sub {
            for (n, v) in s.flatten() {
                out.push((format!("{}/{}", self.name, n), v));
            }
        }
        out
    }

    /// Witnesses of every failing leaf, prefixed with its path.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.verdict == Verdict::Fail {
            let leaf: Vec<_> = self.witnesses.iter().filter(|w| !w.starts_with("sub-check ")).collect();
            out.extend(leaf.into_iter().map(|w| format!("{}: {}", self.name, w)));
        }
        for s in &self.sub {
            out.extend(s.failures().into_iter().map(|f| format!("{} / {}", self.name, f)));
        }
        out
    }
}
