//! Pass/fail records for identity checks over basis tuples.

use std::fmt;

/// One failed instance of an identity, located by basis indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckFailure {
    pub property: &'static str,
    pub basis: Vec<usize>,
}

impl fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.basis.iter().map(usize::to_string).collect();
        write!(f, "{} fails at ({})", self.property, idx.join(", "))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckResult {
    pub failures: Vec<CheckFailure>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub(crate) fn record(&mut self, property: &'static str, basis: Vec<usize>) {
        self.failures.push(CheckFailure { property, basis });
    }

    pub fn merge(mut self, other: CheckResult) -> Self {
        self.failures.extend(other.failures);
        self
    }

    pub fn fails(&self, property: &str) -> bool {
        self.failures.iter().any(|f| f.property == property)
    }
}
