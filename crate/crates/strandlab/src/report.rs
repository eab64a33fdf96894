//! Verification reports: named checks with residuals and structured
//! witnesses, serialized as canonical JSON (checks sorted by name) so that
//! identical parameters and seed produce identical bytes modulo wall time.

use serde::Serialize;
use serde_json::Value;

/// Coverage record of a budgeted exhaustive sweep: how many instances were
/// checked and whether the budget cut the enumeration short.
#[derive(Debug, Clone, Copy)]
pub struct SweepStats {
    pub checked: u64,
    pub budget_exhausted: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Pass,
            residual: None,
            witness: None,
        }
    }

    pub fn pass_residual(name: impl Into<String>, residual: f64) -> Self {
        Check {
            name: name.into(),
            status: Status::Pass,
            residual: Some(residual),
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: Value) -> Self {
        Check {
            name: name.into(),
            status: Status::Fail,
            residual: None,
            witness: Some(witness),
        }
    }

    pub fn fail_residual(name: impl Into<String>, residual: f64, witness: Value) -> Self {
        Check {
            name: name.into(),
            status: Status::Fail,
            residual: Some(residual),
            witness: Some(witness),
        }
    }

    /// Pass or fail on a residual against a tolerance, recording a witness on
    /// failure.
    pub fn from_residual(
        name: impl Into<String>,
        residual: f64,
        tol: f64,
        witness: impl FnOnce() -> Value,
    ) -> Self {
        if residual.is_finite() && residual <= tol {
            Check::pass_residual(name, residual)
        } else {
            Check::fail_residual(name, residual, witness())
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub status: Status,
    pub parameters: Value,
    pub checks: Vec<Check>,
    #[serde(rename = "wallTime")]
    pub wall_time: f64,
    pub version: String,
}

impl VerificationReport {
    /// Assemble a report: checks are sorted by name so output bytes never
    /// depend on evaluation order.
    pub fn new(suite: impl Into<String>, parameters: Value, mut checks: Vec<Check>, wall_time: f64) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let status = if checks.iter().all(Check::passed) {
            Status::Pass
        } else {
            Status::Fail
        };
        VerificationReport {
            suite: suite.into(),
            status,
            parameters,
            checks,
            wall_time,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}
