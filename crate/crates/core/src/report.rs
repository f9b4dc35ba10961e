//! Structured verification results.

use std::fmt;

use serde::{Deserialize, Serialize};

/// One verified claim: what was expected, what was computed, and whether they
/// agree. Scalars are rendered in their exact textual form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Check {
    pub fn new(id: impl Into<String>, expected: impl fmt::Display, computed: impl fmt::Display, pass: bool) -> Self {
        Self { id: id.into(), expected: expected.to_string(), computed: computed.to_string(), pass }
    }

    /// Passes iff `expected == computed`.
    pub fn equal<T: PartialEq + fmt::Display>(id: impl Into<String>, expected: &T, computed: &T) -> Self {
        Self::new(id, expected, computed, expected == computed)
    }

    pub fn holds(id: impl Into<String>, claim: impl fmt::Display, pass: bool) -> Self {
        Self::new(id, claim, if pass { "holds" } else { "violated" }, pass)
    }
}

/// A named list of checks. Passes iff every check passes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub name: String,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// Appends another report's checks with their ids prefixed by `prefix/`.
    pub fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        self.checks.extend(other.checks.into_iter().map(|mut c| {
            c.id = format!("{prefix}/{}", c.id);
            c
        }));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.name, if self.passed() { "pass" } else { "FAIL" })?;
        for c in &self.checks {
            writeln!(f, "  [{}] {} expected={} computed={}", if c.pass { "ok" } else { "FAIL" }, c.id, c.expected, c.computed)?;
        }
        Ok(())
    }
}
