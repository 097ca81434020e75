//! Pass/fail bookkeeping shared by all verification routines.

use serde::Serialize;

/// Outcome of an exhaustive check over a finite set of cases.
///
/// Cases that cannot be evaluated inside the declared windows are counted as
/// skipped; the first violation is kept as the witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub checked: usize,
    pub skipped: usize,
    pub failure: Option<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            checked: 0,
            skipped: 0,
            failure: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    /// Records one case. The witness closure runs only for the first failure.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(witness());
        }
    }

    pub fn skip(&mut self) {
        self.skipped += 1;
    }

    pub fn fail(&mut self, witness: impl Into<String>) {
        if self.failure.is_none() {
            self.failure = Some(witness.into());
        }
    }

    /// Folds another report's counts and first failure into this one.
    pub fn absorb(&mut self, other: &CheckReport) {
        self.checked += other.checked;
        self.skipped += other.skipped;
        if self.failure.is_none() {
            if let Some(f) = &other.failure {
                self.failure = Some(format!("{}: {}", other.name, f));
            }
        }
    }

    pub fn summary(&self) -> String {
        match &self.failure {
            None => format!("{} cases checked, {} skipped", self.checked, self.skipped),
            Some(f) => format!("violation: {f}"),
        }
    }
}
