//! Pass/fail reports shared by the verification routines.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Worst-case residual observed for this check.
    pub residual: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// A list of named checks; `summary` is the conjunction of every `pass` flag.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub summary: bool,
}

impl VerificationReport {
    pub fn new() -> Self {
        VerificationReport { checks: Vec::new(), summary: true }
    }

    pub fn push(&mut self, name: impl Into<String>, pass: bool, residual: f64) -> &mut Check {
        self.push_check(Check { name: name.into(), pass, residual, detail: None })
    }

    pub fn push_check(&mut self, check: Check) -> &mut Check {
        self.summary &= check.pass;
        self.checks.push(check);
        self.checks.last_mut().unwrap()
    }

    pub fn extend(&mut self, other: VerificationReport) {
        for c in other.checks {
            self.push_check(c);
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn worst_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}

impl Check {
    pub fn with_detail(&mut self, detail: impl Into<String>) -> &mut Self {
        self.detail = Some(detail.into());
        self
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "[{}] {:<40} residual {:.3e}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.residual)?;
            if let Some(d) = &c.detail {
                write!(f, "  ({d})")?;
            }
            writeln!(f)?;
        }
        write!(f, "summary: {}", if self.summary { "PASS" } else { "FAIL" })
    }
}
