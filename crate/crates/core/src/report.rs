//! Outcome of the exhaustive relation checkers.

use std::fmt;

/// One family of instances, e.g. every `(s,t)` pair for a single identity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Section {
    pub name: String,
    pub checked: usize,
    pub violations: Vec<String>,
    /// Instances that are expected to differ and are not failures.
    pub notes: Vec<String>,
}

impl Section {
    pub fn new(name: impl Into<String>) -> Self {
        Section {
            name: name.into(),
            ..Section::default()
        }
    }

    /// Records one instance; `describe` runs only on failure.
    pub fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub sections: Vec<Section>,
}

impl Report {
    pub fn push(&mut self, section: Section) {
        self.sections.push(section);
    }

    pub fn passed(&self) -> bool {
        self.sections.iter().all(Section::passed)
    }

    pub fn violations(&self) -> usize {
        self.sections.iter().map(|s| s.violations.len()).sum()
    }

    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }
}

impl fmt::Display for Report {
    /// One line per section, then the first few violations of each.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.sections {
            write!(f, "{}: checked {}, violations {}", s.name, s.checked, s.violations.len())?;
            if !s.notes.is_empty() {
                write!(f, ", expected exceptions {}", s.notes.len())?;
            }
            writeln!(f)?;
            for v in s.violations.iter().take(5) {
                writeln!(f, "  violation: {v}")?;
            }
        }
        Ok(())
    }
}
