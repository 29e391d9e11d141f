//! Verification of the named inequalities on concrete bodies, asymptotic
//! sweeps, and the two nonconvex demonstrations.

mod appendix;
mod random;
mod report;
mod sweep;
mod verify;

pub use appendix::{appendix_infimum, appendix_supremum, PERTURBATION_AMPLITUDE};
pub use random::{random_convex_polygon, random_convex_polygons, random_tangent_polygon, random_tangent_polygons};
pub use report::{tolerance_for, InequalityReport, Relation, SweepRow, Verdict};
pub use sweep::{decay_exponent, sweep_slab, sweep_thin, ThinMesh};
pub use verify::{functional_F, functional_value, lambda_for, lower_constant, verify, BETA_CAP, REPORT_NAMES};
