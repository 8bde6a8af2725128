//! Symmetry-reduced enumeration and avoidance search: canonical forms,
//! restricted-growth DFS over color matrices, pruned avoidance search, and
//! the harness that machine-checks the structure theorems and the
//! closed-form values at desk scale.

pub mod avoid;
pub mod canonical;
pub mod engine;
pub mod partial;
pub mod report;
pub mod verify;

use thiserror::Error;

pub use avoid::{exists_avoiding, AvoidSpec};
pub use canonical::{canonical_form, CanonicalCode};
pub use engine::{enumerate_colorings, EnumerateOptions};
pub use partial::{mono_pruner, no_prune, rainbow_pruner, PartialColoring};
pub use report::{Answer, Method, ReportStats, VerificationReport};
pub use verify::{check_structure_theorem, verify_bgr_point, BgrPointOptions, StructureCheckOptions};

/// Node guard for everything in this module.
pub const MAX_SEARCH_SIDE: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("canonical form and enumeration support sides up to {MAX_SEARCH_SIDE}, got {0}x{1}")]
    SizeGuard(usize, usize),
    #[error("node budget of {budget} exhausted after {visited} nodes; result is inconclusive")]
    BudgetExceeded { budget: u64, visited: u64 },
    #[error("enumeration needs k >= 1, got {0}")]
    NoColors(u16),
    #[error("orbit filtering requires a single worker")]
    OrbitFilterParallel,
    #[error("{0} does not hold a closed-form value for this point")]
    NoCatalogValue(String),
    #[error("structure check supports n <= 4, got {0}")]
    StructureCheckTooLarge(usize),
    #[error("internal: {0}")]
    Internal(String),
}

/// Search statistics carried by reports. `wall_ms` is excluded from
/// canonical serializations so that fixed seeds give byte-identical reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchStats {
    pub nodes: u64,
    pub leaves: u64,
    pub orbits: Option<u64>,
    pub wall_ms: u64,
}

impl SearchStats {
    pub fn absorb(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.leaves += other.leaves;
        self.orbits = match (self.orbits, other.orbits) {
            (Some(x), Some(y)) => Some(x + y),
            (x, y) => x.or(y),
        };
        self.wall_ms += other.wall_ms;
    }
}
