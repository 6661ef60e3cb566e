use alloc::string::{String, ToString};
use alloc::vec::Vec;

/// Outcome of a verification sweep. Instance counts are kept so a pass can be
/// told apart from a vacuous one.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    pub suite: String,
    pub n: usize,
    pub instances_checked: u64,
    pub failures: Vec<String>,
    /// Named integer measurements (sizes, counts) reported alongside the check.
    pub metrics: Vec<(String, u64)>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(suite: &str, n: usize) -> Self {
        Report {
            suite: suite.to_string(),
            n,
            ..Report::default()
        }
    }

    /// Records one checked instance; `describe` is only evaluated on failure.
    pub fn check<F: FnOnce() -> String>(&mut self, ok: bool, describe: F) {
        self.instances_checked += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn metric(&mut self, name: &str, value: u64) {
        self.metrics.push((name.to_string(), value));
    }

    pub fn get_metric(&self, name: &str) -> Option<u64> {
        self.metrics
            .iter()
            .find(|(k, _)| k == name)
            .map(|&(_, v)| v)
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn is_vacuous(&self) -> bool {
        self.instances_checked == 0
    }

    /// Folds another report's instances and failures into this one.
    pub fn absorb(&mut self, other: Report) {
        self.instances_checked += other.instances_checked;
        self.failures.extend(other.failures);
        self.metrics.extend(other.metrics);
        self.notes.extend(other.notes);
    }
}
