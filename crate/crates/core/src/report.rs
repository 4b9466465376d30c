//! Check outcomes and the serializable suite report.

use std::fmt;

use serde::{Deserialize, Serialize};

/// One failed instance of a check, with enough data to reproduce it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub label: String,
    pub witness: String,
}

/// Result of a verification routine: how many instances were tested and
/// which of them failed. Failures are data, never panics.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub title: String,
    pub checked: usize,
    pub failures: Vec<Finding>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(title: impl Into<String>) -> Self {
        CheckReport { title: title.into(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn pass(&mut self) {
        self.checked += 1;
    }

    pub fn fail(&mut self, label: impl Into<String>, witness: impl Into<String>) {
        self.checked += 1;
        self.failures.push(Finding { label: label.into(), witness: witness.into() });
    }

    /// Records an equality test; the witness is built only on failure.
    pub fn expect(&mut self, ok: bool, label: impl FnOnce() -> String, witness: impl FnOnce() -> String) {
        if ok {
            self.pass();
        } else {
            self.fail(label(), witness());
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Folds another report into this one, prefixing its failure labels.
    pub fn absorb(&mut self, other: CheckReport) {
        self.checked += other.checked;
        let prefix = other.title;
        self.failures.extend(other.failures.into_iter().map(|f| Finding {
            label: if prefix.is_empty() { f.label } else { format!("{prefix}: {}", f.label) },
            witness: f.witness,
        }));
        self.notes.extend(other.notes);
    }

    /// Combines results computed independently (for example in parallel),
    /// keeping their order.
    pub fn merged(title: impl Into<String>, parts: impl IntoIterator<Item = CheckReport>) -> Self {
        let mut out = CheckReport::new(title);
        for p in parts {
            out.checked += p.checked;
            out.failures.extend(p.failures);
            out.notes.extend(p.notes);
        }
        out
    }

    /// The first failure as a one-line witness.
    pub fn first_witness(&self) -> Option<String> {
        self.failures.first().map(|f| format!("{}: {}", f.label, f.witness))
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "FAIL" };
        write!(f, "{}: {status} ({} checked, {} failed)", self.title, self.checked, self.failures.len())?;
        for x in &self.failures {
            write!(f, "\n  {}: {}", x.label, x.witness)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Skip,
    /// A deliberately broken variant failed, which is the intended outcome.
    ExpectedFailureObserved,
}

impl Status {
    /// Whether the status counts as success for the exit code.
    pub fn ok(self) -> bool {
        self != Status::Fail
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
            Status::ExpectedFailureObserved => "expected-failure-observed",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub degree: usize,
    pub seed: u64,
    pub backend: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub params: Params,
    pub checks: Vec<CheckRecord>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status.ok())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "suite {} (degree {}, seed {}, backend {})\n",
            self.suite, self.params.degree, self.params.seed, self.params.backend
        );
        for c in &self.checks {
            out.push_str(&format!("{:<26} {:<44} {} [{} ms]\n", c.status.as_str(), c.id, c.anchor, c.ms));
            if let Some(w) = &c.witness {
                out.push_str(&format!("    witness: {w}\n"));
            }
        }
        let failed = self.checks.iter().filter(|c| !c.status.ok()).count();
        out.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_serializes_kebab_case() {
        let s = serde_json::to_string(&Status::ExpectedFailureObserved).unwrap();
        assert_eq!(s, "\"expected-failure-observed\"");
    }

    #[test]
    fn absorb_prefixes_labels() {
        let mut a = CheckReport::new("outer");
        let mut b = CheckReport::new("inner");
        b.fail("w", "x != y");
        b.pass();
        a.absorb(b);
        assert_eq!(a.checked, 2);
        assert_eq!(a.failures[0].label, "inner: w");
    }

    #[test]
    fn witness_is_omitted_when_absent() {
        let r = CheckRecord { id: "a".into(), anchor: "b".into(), status: Status::Pass, witness: None, ms: 0 };
        assert!(!serde_json::to_string(&r).unwrap().contains("witness"));
    }
}
