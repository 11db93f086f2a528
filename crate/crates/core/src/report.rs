use std::fmt::Display;

use serde::Serialize;

/// One checked statement of a verification report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub id: String,
    pub statement: String,
    pub expected: String,
    pub observed: String,
    pub passed: bool,
}

impl Clause {
    /// Clause that passes iff `expected == observed`.
    pub fn eq<T: PartialEq + Display>(id: &str, statement: &str, expected: T, observed: T) -> Self {
        let passed = expected == observed;
        Clause {
            id: id.to_owned(),
            statement: statement.to_owned(),
            expected: expected.to_string(),
            observed: observed.to_string(),
            passed,
        }
    }

    pub fn holds(id: &str, statement: &str, passed: bool) -> Self {
        Clause {
            id: id.to_owned(),
            statement: statement.to_owned(),
            expected: "true".to_owned(),
            observed: passed.to_string(),
            passed,
        }
    }
}

pub fn all_passed(clauses: &[Clause]) -> bool {
    clauses.iter().all(|c| c.passed)
}

pub fn first_failure(clauses: &[Clause]) -> Option<&Clause> {
    clauses.iter().find(|c| !c.passed)
}

/// Renders a list as `{a, b, c}`.
pub(crate) fn set_string<T: Display>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|t| t.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}
