//! Diagnostic reports shared by every verifier.

use std::fmt;

/// Evidence for a failed check: the basis indices involved and a short note.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub detail: String,
}

impl Witness {
    pub fn new(indices: impl Into<Vec<usize>>, detail: impl Into<String>) -> Self {
        Witness {
            indices: indices.into(),
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Option<Witness>,
}

/// Ordered list of named checks. A report "is empty" in the diagnostic sense
/// when no check failed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&mut self, name: &str) {
        self.checks.push(Check {
            name: name.to_string(),
            passed: true,
            witness: None,
        });
    }

    pub fn fail(&mut self, name: &str, witness: Witness) {
        self.checks.push(Check {
            name: name.to_string(),
            passed: false,
            witness: Some(witness),
        });
    }

    /// Records `name` as passed when `witness` is `None`.
    pub fn record(&mut self, name: &str, witness: Option<Witness>) {
        match witness {
            None => self.pass(name),
            Some(w) => self.fail(name, w),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn failed(&self, name: &str) -> Option<&Check> {
        self.failures().find(|c| c.name == name)
    }

    /// Appends all checks of `other`, prefixing their names.
    pub fn extend_prefixed(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            write!(f, "{mark} {}", c.name)?;
            if let Some(w) = &c.witness {
                write!(f, " {:?}: {}", w.indices, w.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
