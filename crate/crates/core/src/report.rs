//! Total-report style validation: every violated axiom is collected with a
//! witness instead of failing on the first problem.

use serde::{Deserialize, Serialize};

/// A single violated check, with the item it concerns and a witness.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub check: String,
    pub cell: String,
    pub detail: String,
}

/// Outcome of a validation pass; empty iff the input satisfies all axioms.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: &str, cell: impl Into<String>, detail: impl Into<String>) {
        self.violations.push(Violation {
            check: check.to_string(),
            cell: cell.into(),
            detail: detail.into(),
        });
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn has_check(&self, check: &str) -> bool {
        self.violations.iter().any(|v| v.check == check)
    }

    pub fn names_cell(&self, cell: &str) -> bool {
        self.violations.iter().any(|v| v.cell == cell)
    }

    /// Canonical order so aggregated reports are deterministic regardless of
    /// the order individual checks ran in.
    pub fn sorted(mut self) -> Self {
        self.violations.sort();
        self.violations.dedup();
        self
    }

    /// Empty report passes through; otherwise becomes a validation error.
    pub fn into_result(self) -> crate::Result<()> {
        if self.is_empty() {
            Ok(())
        } else {
            Err(crate::Error::Validation(self.sorted()))
        }
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        for v in &self.violations {
            writeln!(f, "{} [{}]: {}", v.check, v.cell, v.detail)?;
        }
        Ok(())
    }
}
