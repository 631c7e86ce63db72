//! Per-inequality evaluation records shared by all bound checkers.

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tristate {
    Holds,
    Violated,
    NotApplicable,
}

/// Evaluation of one inequality on one graph. `assertable` distinguishes
/// proved bounds (a violation is a program failure) from conjectural or
/// informational checks, which are reported but never fatal.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub inequality: String,
    pub lhs: f64,
    pub middle: f64,
    pub rhs: f64,
    pub quantities: Vec<(String, f64)>,
    pub holds: Tristate,
    pub slack: f64,
    pub tolerance: f64,
    pub assertable: bool,
    pub digest: String,
}

impl BoundReport {
    /// Sandwich check lhs <= middle <= rhs with an absolute tolerance on
    /// each side. Slack is the smaller of the two side slacks.
    pub fn sandwich(
        inequality: &str,
        lhs: f64,
        middle: f64,
        rhs: f64,
        tolerance: f64,
        digest: &str,
    ) -> Self {
        let slack = (middle - lhs).min(rhs - middle);
        let holds = if slack >= -tolerance {
            Tristate::Holds
        } else {
            Tristate::Violated
        };
        BoundReport {
            inequality: inequality.to_string(),
            lhs,
            middle,
            rhs,
            quantities: Vec::new(),
            holds,
            slack,
            tolerance,
            assertable: true,
            digest: digest.to_string(),
        }
    }

    /// One-sided check lhs <= rhs; middle mirrors rhs for uniform reporting.
    pub fn lower_bound(inequality: &str, lhs: f64, rhs: f64, tolerance: f64, digest: &str) -> Self {
        let slack = rhs - lhs;
        let holds = if slack >= -tolerance {
            Tristate::Holds
        } else {
            Tristate::Violated
        };
        BoundReport {
            inequality: inequality.to_string(),
            lhs,
            middle: rhs,
            rhs,
            quantities: Vec::new(),
            holds,
            slack,
            tolerance,
            assertable: true,
            digest: digest.to_string(),
        }
    }

    pub fn not_applicable(inequality: &str, digest: &str) -> Self {
        BoundReport {
            inequality: inequality.to_string(),
            lhs: f64::NAN,
            middle: f64::NAN,
            rhs: f64::NAN,
            quantities: Vec::new(),
            holds: Tristate::NotApplicable,
            slack: f64::NAN,
            tolerance: 0.0,
            assertable: false,
            digest: digest.to_string(),
        }
    }

    pub fn with_quantities(mut self, quantities: Vec<(String, f64)>) -> Self {
        self.quantities = quantities;
        self
    }

    pub fn non_assertable(mut self) -> Self {
        self.assertable = false;
        self
    }
}

/// Hex SHA-256 of a canonical serialization; identifies the checked input.
pub fn digest_of(canonical: &str) -> String {
    let hash = Sha256::digest(canonical.as_bytes());
    hash.iter().map(|b| format!("{b:02x}")).collect()
}
