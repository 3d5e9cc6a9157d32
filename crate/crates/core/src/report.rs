//! Machine-readable pass/fail records produced by the verification suites and
//! consumed by the CLI.

use serde::Serialize;

/// One verification record. `expected`/`actual` are rendered strings so the
/// same record shape covers exact and numeric checks.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub inputs: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        inputs: impl Into<String>,
        expected: impl Into<String>,
        actual: impl Into<String>,
        pass: bool,
    ) -> Self {
        Check {
            name: name.into(),
            inputs: inputs.into(),
            expected: expected.into(),
            actual: actual.into(),
            pass,
        }
    }

    /// Shorthand for a check whose two sides were compared for equality.
    pub fn compare<T: PartialEq + std::fmt::Display>(
        name: impl Into<String>,
        inputs: impl Into<String>,
        expected: T,
        actual: T,
    ) -> Self {
        let pass = expected == actual;
        Check::new(
            name,
            inputs,
            expected.to_string(),
            actual.to_string(),
            pass,
        )
    }
}

/// Summary counts over a batch of checks.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

pub fn summarize(checks: &[Check]) -> Summary {
    let passed = checks.iter().filter(|c| c.pass).count();
    Summary {
        total: checks.len(),
        passed,
        failed: checks.len() - passed,
    }
}

/// Keep only failing checks; handy for counterexample dumps.
pub fn failures(checks: &[Check]) -> Vec<&Check> {
    checks.iter().filter(|c| !c.pass).collect()
}
