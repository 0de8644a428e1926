//! Structured pass/fail records with numeric witnesses.
//!
//! Serialized reports are byte-deterministic for a fixed seed: checks are
//! sorted by name, every real number is rendered as a 17-significant-digit
//! decimal string, and per-check runtimes are deliberately excluded from
//! the serialized payload (they ride along in the run manifest instead).

use serde::Serialize;

/// Fixed project-wide rendering of reals: 17 significant digits, enough
/// for a bit-exact f64 round trip.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabeledValue {
    pub label: String,
    pub value: String,
}

/// Outcome of one theorem check. Every fail carries concrete witnesses;
/// statuses are never coerced.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: CheckStatus,
    pub witnesses: Vec<LabeledValue>,
    pub tolerances: Vec<LabeledValue>,
    pub caveats: Vec<String>,
    #[serde(skip)]
    pub runtime_ms: u64,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: CheckStatus::Inconclusive,
            witnesses: Vec::new(),
            tolerances: Vec::new(),
            caveats: Vec::new(),
            runtime_ms: 0,
        }
    }

    pub fn witness(&mut self, label: impl Into<String>, value: f64) -> &mut Self {
        self.witnesses.push(LabeledValue { label: label.into(), value: fmt_f64(value) });
        self
    }

    pub fn witness_int(&mut self, label: impl Into<String>, value: i64) -> &mut Self {
        self.witnesses.push(LabeledValue { label: label.into(), value: value.to_string() });
        self
    }

    pub fn witness_text(&mut self, label: impl Into<String>, value: impl Into<String>) -> &mut Self {
        self.witnesses.push(LabeledValue { label: label.into(), value: value.into() });
        self
    }

    pub fn tolerance(&mut self, label: impl Into<String>, value: f64) -> &mut Self {
        self.tolerances.push(LabeledValue { label: label.into(), value: fmt_f64(value) });
        self
    }

    pub fn caveat(&mut self, text: impl Into<String>) -> &mut Self {
        self.caveats.push(text.into());
        self
    }

    pub fn resolve(&mut self, pass: bool) -> &mut Self {
        self.status = if pass { CheckStatus::Pass } else { CheckStatus::Fail };
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

/// Deterministic aggregate of check records.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
    pub totals: Totals,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub overall: Option<String>,
}

/// Sorts by name and totals the statuses. The overall status is omitted
/// for an empty check list, "fail" when any check failed, else "pass"
/// (inconclusive checks count toward neither side and appear in totals).
pub fn assemble_report(seed: u64, mut checks: Vec<CheckRecord>) -> VerificationReport {
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    let totals = Totals {
        pass: checks.iter().filter(|c| c.status == CheckStatus::Pass).count(),
        fail: checks.iter().filter(|c| c.status == CheckStatus::Fail).count(),
        inconclusive: checks
            .iter()
            .filter(|c| c.status == CheckStatus::Inconclusive)
            .count(),
    };
    let overall = if checks.is_empty() {
        None
    } else if totals.fail > 0 {
        Some("fail".to_string())
    } else {
        Some("pass".to_string())
    };
    VerificationReport { seed, checks, totals, overall }
}

impl VerificationReport {
    pub fn overall_pass(&self) -> bool {
        self.totals.fail == 0
    }

    /// Deterministic JSON payload (runtimes excluded).
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Per-check runtimes for the manifest.
    pub fn runtimes_ms(&self) -> Vec<(String, u64)> {
        self.checks
            .iter()
            .map(|c| (c.name.clone(), c.runtime_ms))
            .collect()
    }
}
