//! Verification reports shared by every check.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Status::Pass
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

/// Exact residuals are canonical polynomial text; numeric ones are absolute
/// values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Residual {
    Exact(String),
    Numeric(f64),
}

impl Residual {
    pub fn is_exact_zero(&self) -> bool {
        matches!(self, Residual::Exact(s) if s == "0")
    }
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residual::Exact(s) => f.write_str(s),
            Residual::Numeric(x) => write!(f, "{x:.3e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Intermediate {
    pub label: String,
    pub reference: String,
    /// The derived expression, in canonical text.
    pub expression: String,
    pub residual: Residual,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct Report {
    pub check_id: String,
    pub reference: String,
    pub status: Status,
    pub residual: Residual,
    pub intermediates: Vec<Intermediate>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    /// A report whose status is the conjunction of the final residual and all
    /// intermediates.
    pub fn new(
        check_id: impl Into<String>,
        reference: impl Into<String>,
        residual: Residual,
        final_ok: bool,
        intermediates: Vec<Intermediate>,
    ) -> Report {
        let ok = final_ok && intermediates.iter().all(|i| i.status.passed());
        Report {
            check_id: check_id.into(),
            reference: reference.into(),
            status: Status::from_bool(ok),
            residual,
            intermediates,
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Report {
        self.notes.push(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status.passed()
    }
}

impl Intermediate {
    pub fn exact(
        label: impl Into<String>,
        reference: impl Into<String>,
        expression: impl fmt::Display,
        residual: &crate::ring::MPoly,
    ) -> Intermediate {
        Intermediate {
            label: label.into(),
            reference: reference.into(),
            expression: expression.to_string(),
            residual: Residual::Exact(residual.to_string()),
            status: Status::from_bool(residual.is_zero()),
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} {}  residual {}  [{}]",
            self.status, self.check_id, self.residual, self.reference
        )?;
        for i in &self.intermediates {
            writeln!(f, "  {} {}  residual {}  [{}]", i.status, i.label, i.residual, i.reference)?;
            if !i.expression.is_empty() {
                writeln!(f, "      {}", i.expression)?;
            }
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

/// Sorts reports by check id, the order used for all output.
pub fn sort_reports(reports: &mut [Report]) {
    reports.sort_by(|a, b| a.check_id.cmp(&b.check_id));
}
