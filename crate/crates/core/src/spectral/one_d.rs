use crate::error::{Error, Result};

use super::mesh::{interval, radial};
use super::solver::{inverse_power, minimize, torsion, RayleighOutcome};
use super::{BoundKind, CrossCheck, ExponentPair, Method, SobolevEstimate, SolverConfig};

fn check_gridpoints(gridpoints: usize) -> Result<()> {
    if gridpoints < 64 {
        return Err(Error::InvalidParameter(format!("need at least 64 grid points, got {gridpoints}")));
    }
    Ok(())
}

/// Minimizes with the descent solver and, where the pair allows, the linear
/// cross-solves; reports the smallest converged value.
pub(crate) fn best_of(
    disc: &super::mesh::Discretization,
    pair: ExponentPair,
    cfg: &SolverConfig,
    primary: Method,
) -> Result<(SobolevEstimate, RayleighOutcome)> {
    let (p, q) = (pair.p(), pair.q());
    let main = minimize(disc, p, q, cfg)?;
    let mut runs = vec![(primary, main)];
    if p == 2.0 && q == 2.0 {
        runs.push((Method::LinearEigen, inverse_power(disc, cfg)?));
    } else if p == 2.0 && q == 1.0 {
        runs.push((Method::PoissonTorsion, torsion(disc)?));
    }
    let cross_checks = runs.iter().map(|(m, o)| CrossCheck { method: *m, value: o.quotient }).collect();
    let (method, best) = runs
        .into_iter()
        .min_by(|a, b| a.1.quotient.total_cmp(&b.1.quotient))
        .expect("at least one run");
    let estimate = SobolevEstimate {
        pair,
        value: best.quotient,
        mesh_h: disc.mesh_h,
        iterations: best.iterations,
        residual: best.residual,
        method,
        bound_kind: BoundKind::Approximation,
        cross_checks,
        rel_error_estimate: None,
    };
    Ok((estimate, best))
}

/// λ_{p,q}(0, 1) = π_{p,q}^p on a uniform partition into `gridpoints` cells.
pub fn pi_pq_estimate(pair: ExponentPair, gridpoints: usize, cfg: &SolverConfig) -> Result<SobolevEstimate> {
    check_gridpoints(gridpoints)?;
    Ok(best_of(&interval(gridpoints), pair, cfg, Method::FdRayleigh)?.0)
}

/// π_{p,q} = inf ‖u′‖_p / ‖u‖_q over u vanishing at 0 and 1.
pub fn pi_pq(pair: ExponentPair, gridpoints: usize) -> Result<f64> {
    let est = pi_pq_estimate(pair, gridpoints, &SolverConfig::default())?;
    Ok(est.value.powf(1.0 / pair.p()))
}

/// Optimal radial profile on the unit ball, sampled at t_k = k / cells.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    pub values: Vec<f64>,
}

impl RadialProfile {
    /// Piecewise-linear evaluation; zero for t ≥ 1.
    pub fn at(&self, t: f64) -> f64 {
        let cells = self.values.len() - 1;
        if t >= 1.0 {
            return 0.0;
        }
        let x = t.max(0.0) * cells as f64;
        let k = (x.floor() as usize).min(cells - 1);
        let s = x - k as f64;
        self.values[k] * (1.0 - s) + self.values[k + 1] * s
    }
}

pub fn ball_profile(
    dim: usize,
    pair: ExponentPair,
    gridpoints: usize,
    cfg: &SolverConfig,
) -> Result<(SobolevEstimate, RadialProfile)> {
    if dim < 2 {
        return Err(Error::InvalidParameter(format!("ball dimension must be at least 2, got {dim}")));
    }
    check_gridpoints(gridpoints)?;
    let disc = radial(dim, gridpoints);
    let (estimate, best) = best_of(&disc, pair, cfg, Method::Radial1d)?;
    let mut values = best.u;
    values.push(0.0);
    Ok((estimate, RadialProfile { values }))
}

/// λ_{p,q}(B_1) in dimension `dim` through the radial reduction.
pub fn lambda_ball(dim: usize, pair: ExponentPair, gridpoints: usize) -> Result<SobolevEstimate> {
    lambda_ball_with(dim, pair, gridpoints, &SolverConfig::default())
}

pub fn lambda_ball_with(
    dim: usize,
    pair: ExponentPair,
    gridpoints: usize,
    cfg: &SolverConfig,
) -> Result<SobolevEstimate> {
    Ok(ball_profile(dim, pair, gridpoints, cfg)?.0)
}

/// λ_{p,q}(tΩ) = t^{−p+N(1−p/q)} λ_{p,q}(Ω).
pub fn scale_lambda(value: f64, t: f64, dim: usize, pair: ExponentPair) -> f64 {
    let (p, q) = (pair.p(), pair.q());
    value * t.powf(-p + dim as f64 * (1.0 - p / q))
}
