use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::ConvexBody;
use crate::special::unit_ball_volume;

use super::mesh::{planar, Discretization};
use super::one_d::{ball_profile, best_of};
use super::solver::Problem;
use super::{BoundKind, ExponentPair, Method, SobolevEstimate, SolverConfig};

pub fn lambda_2d(body: &ConvexBody, pair: ExponentPair, mesh_h: f64) -> Result<SobolevEstimate> {
    lambda_2d_with(body, pair, mesh_h, &SolverConfig::default())
}

/// λ_{p,q} of a planar body on a triangulated grid of step `mesh_h`.
pub fn lambda_2d_with(
    body: &ConvexBody,
    pair: ExponentPair,
    mesh_h: f64,
    cfg: &SolverConfig,
) -> Result<SobolevEstimate> {
    let disc = planar(body, mesh_h)?;
    Ok(best_of(&disc, pair, cfg, Method::FdRayleigh)?.0)
}

/// As `lambda_2d_with`, also solving at twice the step to fill in
/// `rel_error_estimate`.
pub fn lambda_2d_refined(
    body: &ConvexBody,
    pair: ExponentPair,
    mesh_h: f64,
    cfg: &SolverConfig,
) -> Result<SobolevEstimate> {
    let fine = lambda_2d_with(body, pair, mesh_h, cfg)?;
    let coarse = lambda_2d_with(body, pair, 2.0 * mesh_h, cfg)?;
    Ok(SobolevEstimate { rel_error_estimate: Some(((coarse.value - fine.value) / fine.value).abs()), ..fine })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaugeCompetitor {
    /// Quotient of f ∘ j_Ω on the grid, f the optimal radial profile.
    pub estimate: SobolevEstimate,
    /// ω_N^{(p−q)/q} λ(B_1) |Ω|^{−(p−q)/q} r^{−p}.
    pub closed_form_bound: f64,
    /// λ_{p,q}(B_1) from the radial solve.
    pub ball_value: f64,
}

fn competitor_values(body: &ConvexBody, disc: &Discretization, f: &super::RadialProfile) -> Result<Vec<f64>> {
    let c = &body.metrics().incenter;
    disc.coords
        .iter()
        .map(|x| Ok(f.at(body.gauge(&[x[0] - c[0], x[1] - c[1]])?)))
        .collect()
}

/// Upper bound on λ_{p,q}(Ω) from transplanting the ball's radial optimizer
/// along the Minkowski gauge.
pub fn gauge_competitor(
    body: &ConvexBody,
    pair: ExponentPair,
    mesh_h: f64,
    cfg: &SolverConfig,
) -> Result<GaugeCompetitor> {
    if !body.is_convex() {
        return Err(Error::Unsupported(format!("gauge competitor needs a convex body, got {}", body.kind().name())));
    }
    let (ball, profile) = ball_profile(2, pair, cfg.gridpoints, cfg)?;
    let disc = planar(body, mesh_h)?;
    let phi = competitor_values(body, &disc, &profile)?;
    let value = Problem::new(&disc, pair.p(), pair.q()).quotient(&phi, 0.0);
    let (p, q) = (pair.p(), pair.q());
    let m = body.metrics();
    let e = (p - q) / q;
    let closed = unit_ball_volume(2).powf(e) * ball.value * m.volume.powf(-e) * m.inradius.powf(-p);
    Ok(GaugeCompetitor {
        estimate: SobolevEstimate {
            pair,
            value,
            mesh_h: disc.mesh_h,
            iterations: 0,
            residual: 0.0,
            method: Method::FdRayleigh,
            bound_kind: BoundKind::UpperBoundByCompetitor,
            cross_checks: Vec::new(),
            rel_error_estimate: None,
        },
        closed_form_bound: closed,
        ball_value: ball.value,
    })
}
