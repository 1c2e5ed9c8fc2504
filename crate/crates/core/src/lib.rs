//! Best-approximation operators onto hyperplanes, halfspaces and their
//! intersections in ℝⁿ.
//!
//! * [`linalg`]: vectors, Gram solves and dependence classification.
//! * [`sets`]: hyperplane/halfspace types, membership and system reduction.
//! * [`atomic`]: projectors onto one set.
//! * [`closed_form`]: exact projectors onto intersections of two sets and
//!   onto hyperplane systems.
//! * [`iterate`]: composed projections, Dykstra's algorithm and rate checks.
//! * [`oracle`]: active-set enumeration and KKT certificates, used as ground
//!   truth for everything above.
//! * [`generate`]: seeded random instances stratified by case.

pub mod atomic;
pub mod closed_form;
pub mod error;
pub mod generate;
pub mod iterate;
pub mod linalg;
pub mod oracle;
pub mod sets;

use serde::{Deserialize, Serialize};

pub use atomic::{project_halfspace, project_hyperplane, BandedHalfspace, Projector};
pub use closed_form::{
    classify_region_halfspace_pair, project_halfspace_pair, project_hyperplane_halfspace,
    project_hyperplanes, Case, DependentCase, ProjectionBreakdown, Region,
};
pub use error::{ProjError, Result};
pub use iterate::{
    compose_iterate, dykstra, predict_behavior, rate_gamma, verify_bam, BehaviorCase,
    IterationTrace, StopReason,
};
pub use linalg::{
    classify_pair, inner, max_independent_subset, solve_gram, PairClass, PairTag, Vector,
};
pub use oracle::{kkt_check, oracle_project, KktCertificate};
pub use sets::{
    reduce_hyperplane_system, Constraint, Halfspace, Hyperplane, Instance, Membership, SetKind,
};

/// Tunable tolerances shared by the projectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Relative threshold for linear dependence of normals.
    pub dependence: f64,
    /// Relative band around set boundaries for membership tests.
    pub membership: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            dependence: linalg::DEFAULT_DEPENDENCE_TOL,
            membership: sets::DEFAULT_MEMBERSHIP_TOL,
        }
    }
}

/// Formats a float with 17 significant digits, enough to round-trip any f64.
pub fn format_f64(value: f64) -> String {
    format!("{value:.16e}")
}
