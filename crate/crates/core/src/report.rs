use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// A single violated law together with the witnessing data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Which law failed, e.g. `"associativity"` or `"cartesian.unique"`.
    pub law: String,
    /// The tuple of names witnessing the failure.
    pub witness: String,
}

impl Violation {
    pub fn new(law: impl Into<String>, witness: impl Into<String>) -> Self {
        Violation { law: law.into(), witness: witness.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.law, self.witness)
    }
}

/// The outcome of a validator: the complete list of violated laws.
///
/// An empty report means every checked invariant holds. Reports merge
/// deterministically in the order the checks ran.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        ValidationReport { violations: Vec::new() }
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, law: impl Into<String>, witness: impl Into<String>) {
        self.violations.push(Violation::new(law, witness));
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    /// Merge `other` with every law name prefixed by `scope.`.
    pub fn merge_scoped(&mut self, scope: &str, other: ValidationReport) {
        for v in other.violations {
            self.push(alloc::format!("{scope}.{}", v.law), v.witness);
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            write!(f, "ok")
        } else {
            writeln!(f, "{} violation(s):", self.violations.len())?;
            for v in &self.violations {
                writeln!(f, "  {v}")?;
            }
            Ok(())
        }
    }
}
