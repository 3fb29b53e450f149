//! Structured verification results.

use std::fmt::Display;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// The identity's hypothesis does not hold for this input.
    NotApplicable,
    /// Computed and recorded, but not asserted.
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub identity: String,
    pub anchor: String,
    pub expected: String,
    pub got: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(identity: &str, anchor: &str, expected: impl Display, got: impl Display, status: Status) -> Self {
        Check {
            identity: identity.to_string(),
            anchor: anchor.to_string(),
            expected: expected.to_string(),
            got: got.to_string(),
            status,
            detail: None,
        }
    }

    /// Pass iff `expected == got` as displayed values.
    pub fn compare<T: Display + PartialEq>(identity: &str, anchor: &str, expected: &T, got: &T) -> Self {
        let status = if expected == got { Status::Pass } else { Status::Fail };
        Check::new(identity, anchor, expected, got, status)
    }

    pub fn boolean(identity: &str, anchor: &str, ok: bool, got: impl Display) -> Self {
        Check::new(identity, anchor, true, got, if ok { Status::Pass } else { Status::Fail })
    }

    pub fn not_applicable(identity: &str, anchor: &str, reason: impl Display) -> Self {
        Check::new(identity, anchor, "-", "-", Status::NotApplicable).with_detail(reason)
    }

    pub fn with_detail(mut self, d: impl Display) -> Self {
        self.detail = Some(d.to_string());
        self
    }

    /// Downgrades an assertion to an informational record.
    pub fn informational(mut self) -> Self {
        if self.status != Status::NotApplicable {
            self.detail = Some(match self.detail.take() {
                Some(d) => format!("{d}; holds: {}", self.status == Status::Pass),
                None => format!("holds: {}", self.status == Status::Pass),
            });
            self.status = Status::Info;
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn any_passed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Pass)
    }

    /// True when nothing failed and at least one assertion passed.
    pub fn all_passed(&self) -> bool {
        !self.any_failed() && self.any_passed()
    }

    pub fn get(&self, identity: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.identity == identity)
    }

    /// 0 when every applicable assertion passed, 2 on any failure, 3 when nothing was applicable.
    pub fn exit_code(&self) -> i32 {
        if self.any_failed() {
            2
        } else if self.any_passed() {
            0
        } else {
            3
        }
    }
}

impl From<Vec<Check>> for Report {
    fn from(checks: Vec<Check>) -> Self {
        Report { checks }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let mut r = Report::new();
        assert_eq!(r.exit_code(), 3);
        r.push(Check::not_applicable("x", "a", "no"));
        assert_eq!(r.exit_code(), 3);
        r.push(Check::compare("y", "b", &1, &1));
        assert_eq!(r.exit_code(), 0);
        r.push(Check::compare("z", "c", &1, &2));
        assert_eq!(r.exit_code(), 2);
    }

    #[test]
    fn informational_keeps_outcome_in_detail() {
        let c = Check::compare("y", "b", &1, &2).informational();
        assert_eq!(c.status, Status::Info);
        assert_eq!(c.detail.as_deref(), Some("holds: false"));
    }
}
