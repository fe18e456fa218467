//! Check outcomes shared by every verifier.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail(String),
    Skip(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// The identity or statement being checked, written without spaces.
    pub reference: String,
    /// Free-form lines attached to the check (matrices, obstructions).
    pub details: Vec<String>,
}

impl Check {
    pub fn new(name: &str, reference: &str, status: Status) -> Self {
        Check { name: name.to_string(), status, reference: reference.to_string(), details: Vec::new() }
    }

    pub fn pass(name: &str, reference: &str) -> Self {
        Check::new(name, reference, Status::Pass)
    }

    pub fn fail(name: &str, reference: &str, why: impl Into<String>) -> Self {
        Check::new(name, reference, Status::Fail(why.into()))
    }

    pub fn skip(name: &str, reference: &str, reason: impl Into<String>) -> Self {
        Check::new(name, reference, Status::Skip(reason.into()))
    }

    /// Pass when `failure` is `None`.
    pub fn from_failure(name: &str, reference: &str, failure: Option<String>) -> Self {
        match failure {
            None => Check::pass(name, reference),
            Some(why) => Check::fail(name, reference, why),
        }
    }

    pub fn with_detail(mut self, line: impl Into<String>) -> Self {
        self.details.push(line.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        matches!(self.status, Status::Fail(_))
    }
}

impl fmt::Display for Check {
    /// `CHECK <name> <PASS|FAIL|SKIP:reason> <reference>`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match &self.status {
            Status::Pass => "PASS".to_string(),
            Status::Fail(_) => "FAIL".to_string(),
            Status::Skip(reason) => format!("SKIP:{}", reason.replace(' ', "-")),
        };
        write!(f, "CHECK {} {} {}", self.name, status, self.reference)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn single(check: Check) -> Self {
        Report { checks: vec![check] }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(Check::failed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.failed())
    }
}
