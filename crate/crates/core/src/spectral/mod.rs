//! Best Sobolev constants λ_{p,q}: the 1D constants π_{p,q}, radial ball
//! values, planar grid estimates, and the closed-form constants built on them.

mod constants;
pub mod mesh;
mod one_d;
mod pair;
mod planar;
pub mod skyline;
pub mod solver;

pub use constants::{cone_thin_limit, k_constant, limit_pi, pi_special, resolve_pi, thin_profile_integral};
pub use one_d::{ball_profile, lambda_ball, lambda_ball_with, pi_pq, pi_pq_estimate, scale_lambda, RadialProfile};
pub use pair::ExponentPair;
pub use planar::{gauge_competitor, lambda_2d, lambda_2d_refined, lambda_2d_with, GaugeCompetitor};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    FdRayleigh,
    LinearEigen,
    PoissonTorsion,
    #[serde(rename = "radial-1d")]
    Radial1d,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    Approximation,
    UpperBoundByCompetitor,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossCheck {
    pub method: Method,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SobolevEstimate {
    pub pair: ExponentPair,
    pub value: f64,
    pub mesh_h: f64,
    pub iterations: usize,
    pub residual: f64,
    pub method: Method,
    pub bound_kind: BoundKind,
    /// Independent solves of the same discrete problem.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cross_checks: Vec<CrossCheck>,
    /// Relative change against the solve at twice the mesh size.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rel_error_estimate: Option<f64>,
}

/// Solver knobs; every field has a default.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub mesh_h: f64,
    pub gridpoints: usize,
    pub max_iterations: usize,
    /// Stop when the quotient moved by less than `rel_tol` (relative) over
    /// the last `window` iterations.
    pub window: usize,
    pub rel_tol: f64,
    /// Smoothing δ = delta_scale · max(u) / h for p < 2, annealed to 0.
    pub delta_scale: f64,
    pub armijo: f64,
    /// Floor for the |∇u|^{p−2} preconditioner weights, relative to max |∇u|.
    pub preconditioner_floor: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            mesh_h: 1.0 / 128.0,
            gridpoints: 2048,
            max_iterations: 200_000,
            window: 50,
            rel_tol: 1e-9,
            delta_scale: 1e-8,
            armijo: 1e-4,
            preconditioner_floor: 1e-3,
        }
    }
}
