//! Named pass/fail records produced by the verification routines.

use serde::Serialize;

use crate::gca::Element;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), passed, detail: detail.into() }
    }

    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Check {
        Check::new(name, true, detail)
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Check {
        Check::new(name, false, detail)
    }

    /// Passes iff `residual` is zero; the residual is recorded either way.
    pub fn residual(name: impl Into<String>, residual: &Element) -> Check {
        Check::new(name, residual.is_zero(), format!("residual = {residual}"))
    }

    /// Passes iff `got == expected`, recording the difference on failure.
    pub fn equal(name: impl Into<String>, got: &Element, expected: &Element) -> Check {
        if got == expected {
            Check::pass(name, format!("{got}"))
        } else {
            let diff = got.checked_sub(expected).map_or_else(|_| "different algebras".to_string(), |d| d.to_string());
            Check::fail(name, format!("residual = {diff}"))
        }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}
