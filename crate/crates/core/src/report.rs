//! Structured verification results and their JSON form.

use serde::Serialize;

use crate::hc::HcElement;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub suite: String,
    pub check: String,
    /// The identity or property being verified.
    pub anchor: String,
    pub status: Status,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckRecord {
    pub fn new(suite: &str, check: impl Into<String>, anchor: impl Into<String>, status: Status) -> CheckRecord {
        CheckRecord {
            suite: suite.to_string(),
            check: check.into(),
            anchor: anchor.into(),
            status,
            elapsed_ms: 0,
            witness: None,
            note: None,
        }
    }

    pub fn bool(suite: &str, check: impl Into<String>, anchor: impl Into<String>, ok: bool) -> CheckRecord {
        CheckRecord::new(suite, check, anchor, if ok { Status::Pass } else { Status::Fail })
    }

    /// Passes iff `residual` is zero; otherwise its largest term is the witness.
    pub fn zero(suite: &str, check: impl Into<String>, anchor: impl Into<String>, residual: &HcElement) -> CheckRecord {
        let mut r = CheckRecord::bool(suite, check, anchor, residual.is_zero());
        r.witness = residual.witness();
        r
    }

    pub fn skipped(suite: &str, check: impl Into<String>, anchor: impl Into<String>, why: impl Into<String>) -> CheckRecord {
        CheckRecord::new(suite, check, anchor, Status::Skipped).with_note(why)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> CheckRecord {
        self.note = Some(note.into());
        self
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> CheckRecord {
        self.witness = Some(w.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub config: serde_json::Value,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: serde_json::Value, checks: Vec<CheckRecord>) -> Report {
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
        Report { schema: SCHEMA_VERSION, config, checks, summary }
    }

    pub fn ok(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}
