use serde::Serialize;

/// Outcome of one verification: how many units were examined and what went
/// wrong. An empty violation list means the check passed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub checked: usize,
    pub violations: Vec<String>,
}

impl CheckReport {
    pub fn new(name: &str, checked: usize, violations: Vec<String>) -> Self {
        CheckReport { name: name.to_string(), checked, violations }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Combines reports of the same check over several inputs.
    pub fn merge(name: &str, reports: impl IntoIterator<Item = CheckReport>) -> Self {
        let mut out = CheckReport::new(name, 0, Vec::new());
        for r in reports {
            out.checked += r.checked;
            out.violations.extend(r.violations);
        }
        out
    }
}
