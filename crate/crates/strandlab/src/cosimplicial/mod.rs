//! Cosimplicial ladders built from the bimodule actions, in three flavors.
//! The exact flavor works in the opposite category, where the ladder is a
//! simplicial pointed set and every structure map is index plumbing on pairs;
//! the numeric flavor acts on corpora of sphere-valued tables; the
//! configuration flavor doubles and deletes points of decorated
//! configurations between two fixed boundary anchors. Interior cofaces double
//! one block through the right action, the two outer cofaces adjoin the
//! level-one basepoint through the left action, and codegeneracies delete a
//! block through the right action with an empty part.

pub mod config;
pub mod exact;
pub mod numeric;

pub use config::{
    config_codegeneracy, config_coface, projection_p_r, sample_config_ladder, sinha_coface,
    verify_config_ladder, BoundaryAnchors, ConfigCorruption, ConfigLadder,
};
pub use exact::{verify_exact_ladder, verify_realized_ladder, ExactLadder};
pub use numeric::{sample_numeric_ladder, verify_numeric_ladder, NumericLadder};

use crate::compositions::Composition;
use crate::error::Result;
use crate::report::Check;
use serde_json::Value;

/// Worst-instance accumulator for a family of identity checks: keeps the
/// largest residual seen and the witness that produced it.
pub(crate) struct Worst {
    residual: f64,
    witness: Option<Value>,
}

impl Worst {
    pub(crate) fn new() -> Self {
        Worst {
            residual: 0.0,
            witness: None,
        }
    }

    pub(crate) fn update(&mut self, residual: f64, witness: impl FnOnce() -> Value) {
        if residual >= self.residual && (residual > 0.0 || self.witness.is_none()) {
            self.residual = residual;
            self.witness = Some(witness());
        }
    }

    pub(crate) fn into_check(self, name: &str, tol: f64) -> Check {
        let w = self.witness;
        Check::from_residual(name, self.residual, tol, move || w.unwrap_or(Value::Null))
    }
}

/// The composition behind the interior coface at level k that doubles block
/// i: k parts, all ones except a 2 in slot i. Requires 1 <= i <= k.
pub(crate) fn coface_composition(k: usize, i: usize) -> Result<Composition> {
    debug_assert!(1 <= i && i <= k);
    let mut parts = vec![1; k];
    parts[i - 1] = 2;
    Composition::new(parts)
}

/// The composition behind the codegeneracy at level k that deletes block
/// j + 1: k parts, all ones except a 0 in slot j + 1. Requires 0 <= j < k.
pub(crate) fn codegeneracy_composition(k: usize, j: usize) -> Result<Composition> {
    debug_assert!(j < k);
    let mut parts = vec![1; k];
    parts[j] = 0;
    Composition::new(parts)
}
