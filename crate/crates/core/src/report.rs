//! Structured pass/fail reports produced by the verification suites.

use serde::Serialize;

/// One verified condition: what was checked, on which subject, the verdict,
/// and a human-readable account of the evidence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub check: String,
    pub subject: String,
    pub pass: bool,
    pub detail: String,
}

/// An ordered list of check entries. The overall verdict is the conjunction
/// of the individual ones.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Report {
    entries: Vec<CheckEntry>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(
        &mut self,
        check: impl Into<String>,
        subject: impl Into<String>,
        pass: bool,
        detail: impl Into<String>,
    ) {
        self.entries.push(CheckEntry {
            check: check.into(),
            subject: subject.into(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn entries(&self) -> &[CheckEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// True when every entry passed.
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    /// Appends all entries of `other`.
    pub fn merge(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }
}
