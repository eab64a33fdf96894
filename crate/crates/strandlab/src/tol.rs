//! Default tolerances, pinned in one place so every suite and the acceptance
//! tests agree on them.

/// Unit-vector norm check on sphere-map entries.
pub const TOL_UNIT: f64 = 1e-9;

/// Alignment of sphere-map entries with normalized point differences.
pub const TOL_ALIGN: f64 = 1e-9;

/// Residual of the best three-dependence witness per triple.
pub const TOL_THREE: f64 = 1e-9;

/// Below this distance two configuration points count as coincident.
pub const TOL_COINCIDE: f64 = 1e-9;

/// Relative four-consistency residual (tensor or probe mode).
pub const TOL_FOUR_REL: f64 = 1e-8;

/// Pairwise cancellation of class summands in the action-closure proof cases.
pub const TOL_PAIRING: f64 = 1e-12;

/// Representative independence of the class summand.
pub const TOL_REP_INDEP: f64 = 1e-12;

/// Residual of the explicit distance-weighted witness on Gauss maps.
pub const TOL_DISTANCE_WITNESS: f64 = 1e-12;

/// Invariance of Gauss maps under configuration normalization.
pub const TOL_NORMALIZE: f64 = 1e-12;

/// Default enumeration budget for exhaustive verification sweeps.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Default rejection-sampling attempt budget.
pub const DEFAULT_SAMPLING_ATTEMPTS: u64 = 100_000;
