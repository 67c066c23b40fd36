use std::fmt;

use serde::Serialize;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Outcome of a verification: one entry per property, with the first
/// violating tuple when it fails.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: &str) -> Self {
        Report { title: title.to_string(), checks: Vec::new() }
    }

    pub fn push(&mut self, name: &str, witness: Option<String>) {
        self.checks.push(Check { name: name.to_string(), passed: witness.is_none(), witness });
    }

    pub fn pass(&mut self, name: &str) {
        self.push(name, None);
    }

    pub fn fail(&mut self, name: &str, witness: String) {
        self.push(name, Some(witness));
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.get(name).is_some_and(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.title.is_empty() {
            writeln!(f, "{}", self.title)?;
        }
        for c in &self.checks {
            match &c.witness {
                None => writeln!(f, "  PASS {}", c.name)?,
                Some(w) => writeln!(f, "  FAIL {}: {}", c.name, w)?,
            }
        }
        Ok(())
    }
}
