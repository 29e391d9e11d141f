//! Geometric functionals of convex bodies, distance-function moments and
//! numerical Poincaré–Sobolev constants, with a harness that checks the
//! sharp inequalities linking them.

pub mod error;
pub mod geometry;
pub mod harness;
pub mod json;
pub mod moments;
pub mod quadrature;
pub mod special;
pub mod spectral;

pub use error::{Error, Result};
pub use geometry::{build_body, BodyDescriptor, BodyKind, ConvexBody, GeometricSummary};
pub use harness::{InequalityReport, Relation, SweepRow, Verdict};
pub use moments::{MomentEnvelope, MomentResult};
pub use spectral::{ExponentPair, SobolevEstimate, SolverConfig};
