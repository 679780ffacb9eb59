//! Check records and the JSON report format `cproj-report/1`.

use std::fmt::Display;
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::catalog::{Provenance, Tagged};

pub const REPORT_SCHEMA: &str = "cproj-report/1";

/// One comparison of an expected value with a computed one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    /// What the expected value refers to, e.g. "type II symmetry list".
    pub anchor: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
    pub provenance: String,
}

impl CheckRecord {
    /// `pass` is exact string equality of the rendered values.
    pub fn compare(check: &str, anchor: &str, expected: impl Display, computed: impl Display, provenance: Provenance) -> Self {
        let expected = expected.to_string();
        let computed = computed.to_string();
        CheckRecord {
            check: check.into(),
            anchor: anchor.into(),
            pass: expected == computed,
            expected,
            computed,
            provenance: provenance_name(provenance).into(),
        }
    }

    pub fn tagged<T: Display>(check: &str, anchor: &str, expected: &Tagged<T>, computed: impl Display) -> Self {
        CheckRecord::compare(check, anchor, &expected.value, computed, expected.provenance)
    }

    /// A property that must hold.
    pub fn holds(check: &str, anchor: &str, value: bool, provenance: Provenance) -> Self {
        CheckRecord::compare(check, anchor, true, value, provenance)
    }
}

pub fn provenance_name(p: Provenance) -> &'static str {
    match p {
        Provenance::Published => "published",
        Provenance::Derived => "derived",
        Provenance::Elementary => "elementary",
    }
}

/// Fields that vary between otherwise identical runs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Timestamp {
    pub unix_seconds: u64,
    pub wall_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema: String,
    pub tool: String,
    pub version: String,
    pub command: String,
    pub checks: Vec<CheckRecord>,
    /// Items reported but not checked.
    pub notes: Vec<String>,
    pub pass: bool,
    pub timestamp: Timestamp,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            schema: REPORT_SCHEMA.into(),
            tool: "cproj".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            checks: Vec::new(),
            notes: Vec::new(),
            pass: true,
            timestamp: Timestamp {
                unix_seconds: 0,
                wall_ms: 0,
            },
        }
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.pass &= record.pass;
        self.checks.push(record);
    }

    pub fn extend(&mut self, records: impl IntoIterator<Item = CheckRecord>) {
        for r in records {
            self.push(r);
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn finish(&mut self, elapsed: Duration) {
        self.pass = self.checks.iter().all(|c| c.pass);
        self.timestamp = Timestamp {
            unix_seconds: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
            wall_ms: elapsed.as_millis() as u64,
        };
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }
}
