//! Verification laboratory for a pair-selection operad, its divided-power
//! bimodules, and the numeric spaces of unit-vector data that realize them.
//!
//! The crate has three layers. A combinatorial layer models weak
//! compositions, the choose-two sequence and its structure co-operation, the
//! divided-power regrading with its two one-sided actions, and the chain
//! classes of four-element subsets. A numeric layer models sphere-valued
//! maps, point configurations, their derived unit-vector tables, and the
//! dependence and consistency conditions that carve out the subspaces of
//! interest. On top sit cosimplicial ladders built from the action maps, with
//! exact, numeric, and configuration flavors, and a reporting layer that
//! emits machine-readable verdicts for every suite.

pub mod actions;
pub mod chains;
pub mod choose_two;
pub mod compositions;
pub mod conditions;
pub mod cosimplicial;
pub mod divided;
pub mod error;
pub mod phi;
pub mod report;
pub mod rng;
pub mod sphere;
pub mod suites;
pub mod tol;
