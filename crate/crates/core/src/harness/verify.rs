use crate::error::{Error, Result};
use crate::geometry::{ConvexBody, Shape};
use crate::moments::{borell_constant, moment, moment_envelope};
use crate::special::{gamma_binom, unit_ball_volume};
use crate::spectral::{
    k_constant, lambda_2d_refined, lambda_ball_with, resolve_pi, scale_lambda, ExponentPair,
    SobolevEstimate, SolverConfig,
};

use super::report::{InequalityReport, Relation};

/// Moment exponents above this are not evaluated: t^β on [0, r] leaves no
/// usable signal in double precision.
pub const BETA_CAP: f64 = 64.0;

/// 𝓕_{p,q} = λ (|Ω|^{1−1/p+1/q} / P)^p.
pub fn functional_value(volume: f64, perimeter: f64, lambda: f64, pair: ExponentPair) -> f64 {
    let (p, q) = (pair.p(), pair.q());
    lambda * (volume.powf(1.0 - 1.0 / p + 1.0 / q) / perimeter).powf(p)
}

#[allow(non_snake_case)]
pub fn functional_F(body: &ConvexBody, pair: ExponentPair, lambda: &SobolevEstimate) -> f64 {
    let m = body.metrics();
    functional_value(m.volume, m.perimeter, lambda.value, pair)
}

/// The sharp lower constant for 𝓕_{p,q}: K_{p,q,N} for q < p and
/// (π_p / 2N)^p for q = p.
pub fn lower_constant(pair: ExponentPair, n: usize, pi: f64) -> Result<f64> {
    if pair.is_subhomogeneous() {
        k_constant(pair, n, pi)
    } else {
        Ok((pi / (2.0 * n as f64)).powf(pair.p()))
    }
}

/// λ_{p,q}(B_1) in dimension `dim` with a relative error estimate from the
/// solve on half the cells.
fn unit_ball_lambda(dim: usize, pair: ExponentPair, cfg: &SolverConfig) -> Result<SobolevEstimate> {
    let fine = lambda_ball_with(dim, pair, cfg.gridpoints, cfg)?;
    let coarse = lambda_ball_with(dim, pair, (cfg.gridpoints / 2).max(64), cfg)?;
    let rel = ((coarse.value - fine.value) / fine.value).abs();
    Ok(SobolevEstimate { rel_error_estimate: Some(rel), ..fine })
}

/// λ_{p,q}(Ω) for the bodies with a solver: balls through the radial
/// reduction, other convex planar bodies on the grid at `cfg.mesh_h`.
pub fn lambda_for(body: &ConvexBody, pair: ExponentPair, cfg: &SolverConfig) -> Result<SobolevEstimate> {
    if !body.is_convex() {
        return Err(Error::Unsupported(format!("{} is not convex", body.kind().name())));
    }
    match body.shape() {
        Shape::Ball { .. } => {
            let unit = unit_ball_lambda(body.dim(), pair, cfg)?;
            let r = body.metrics().inradius;
            Ok(SobolevEstimate { value: scale_lambda(unit.value, r, body.dim(), pair), ..unit })
        }
        _ if body.dim() == 2 => lambda_2d_refined(body, pair, cfg.mesh_h, cfg),
        _ => Err(Error::Unsupported(format!(
            "no λ solver for a {}-dimensional {}",
            body.dim(),
            body.kind().name()
        ))),
    }
}

fn relative_error(est: &SobolevEstimate, cfg: &SolverConfig) -> f64 {
    let disc = est.rel_error_estimate.unwrap_or(0.0);
    cfg.rel_tol.max(disc).max(est.residual)
}

pub const REPORT_NAMES: [&str; 17] = [
    "makai-lower",
    "bra1-upper",
    "prizag",
    "inr-vol-lower",
    "inr-vol-upper",
    "per-inr-lower",
    "per-inr-upper",
    "torsion-upper",
    "moment-envelope-larson-lower",
    "moment-envelope-perimeter-upper",
    "moment-envelope-prizag-upper",
    "moment-envelope-ball-lower",
    "moment-envelope-pv-lower",
    "moment-envelope-pv-upper",
    "borell",
    "pervol-lower",
    "pervol-upper",
];

fn relation_of(name: &str) -> Relation {
    match name {
        "bra1-upper" | "pervol-upper" | "moment-envelope-perimeter-upper" => Relation::Below,
        n if n.ends_with("-upper") || n == "borell" => Relation::AtMost,
        _ => Relation::AtLeast,
    }
}

fn skip(name: &str, reason: &str) -> InequalityReport {
    InequalityReport::skipped(name, relation_of(name), reason)
}

/// Evaluates every applicable inequality on `body` for the pair.
///
/// λ comes from `lambda_for`; each λ-dependent verdict uses the estimate's
/// relative error (solver residual or mesh-halving change, whichever is
/// larger) as its tolerance. Reports that cannot be evaluated are returned
/// as skipped with the reason in `note`; `torsion-upper` only appears for
/// q = 1.
pub fn verify(body: &ConvexBody, pair: ExponentPair, cfg: &SolverConfig) -> Result<Vec<InequalityReport>> {
    if !body.is_convex() {
        let reason = format!("{} is not convex", body.kind().name());
        return Ok(REPORT_NAMES
            .iter()
            .filter(|n| **n != "torsion-upper" || pair.q() == 1.0)
            .map(|n| skip(n, &reason))
            .collect());
    }
    let (p, q) = (pair.p(), pair.q());
    let m = body.metrics();
    let dim = body.dim();
    let nf = dim as f64;
    let (v, per, r) = (m.volume, m.perimeter, m.inradius);
    let pi = resolve_pi(pair, cfg.gridpoints)?;
    let half_pi_p = (pi / 2.0).powf(p);
    let e = (p - q) / q;
    let mut out = Vec::new();

    let lambda = match lambda_for(body, pair, cfg) {
        Ok(est) => Some(est),
        Err(Error::Unsupported(reason)) => {
            for n in ["makai-lower", "bra1-upper", "prizag", "inr-vol-lower", "inr-vol-upper", "per-inr-lower", "per-inr-upper"] {
                out.push(skip(n, &reason));
            }
            if q == 1.0 {
                out.push(skip("torsion-upper", &reason));
            }
            None
        }
        Err(err) => return Err(err),
    };

    let beta = pair.beta();
    let beta_ok = beta.is_finite() && beta <= BETA_CAP;
    let d_beta = if beta_ok { Some(moment(body, beta)?) } else { None };
    let beta_reason = if beta.is_finite() {
        format!("moment exponent β = {beta} exceeds the cap {BETA_CAP}")
    } else {
        "q = p has no finite moment exponent".to_string()
    };

    if let Some(est) = &lambda {
        let lam = est.value;
        let rel = relative_error(est, cfg);
        let ball = unit_ball_lambda(dim, pair, cfg)?;
        let ball_rel = relative_error(&ball, cfg);

        let scale = (per / v.powf(1.0 - 1.0 / p + 1.0 / q)).powf(p);
        let k = lower_constant(pair, dim, pi)?;
        out.push(InequalityReport::evaluate("makai-lower", lam, Relation::AtLeast, k * scale, rel));

        let f = functional_value(v, per, lam, pair);
        out.push(InequalityReport::evaluate("bra1-upper", f, Relation::Below, half_pi_p, rel));

        match &d_beta {
            Some(d) => {
                let rel_d = (d.abs_error_estimate / d.value).max(1e-12);
                let rhs = half_pi_p * ((p - q) / (p * q + p - q)).powf(e) * d.value.powf(-e);
                out.push(InequalityReport::evaluate("prizag", lam, Relation::AtLeast, rhs, rel + e * rel_d));
            }
            None => out.push(skip("prizag", &beta_reason)),
        }

        let iv = lam * v.powf(e) * r.powf(p);
        out.push(InequalityReport::evaluate("inr-vol-lower", iv, Relation::AtLeast, half_pi_p, rel));
        let iv_top = unit_ball_volume(dim).powf(e) * ball.value;
        out.push(InequalityReport::evaluate("inr-vol-upper", iv, Relation::AtMost, iv_top, rel + ball_rel));

        let pr = lam * r.powf((p * q + p - q) / q) * per.powf(e);
        let pr_low = half_pi_p * (1.0 / (p * q + p - q)).powf(e);
        out.push(InequalityReport::evaluate("per-inr-lower", pr, Relation::AtLeast, pr_low, rel));
        let pr_top = (nf * unit_ball_volume(dim)).powf(e) * ball.value;
        out.push(InequalityReport::evaluate("per-inr-upper", pr, Relation::AtMost, pr_top, rel + ball_rel));

        if q == 1.0 {
            let pc = pair.p_conj();
            let c = nf.powf(p) * gamma_binom(dim, pc).powf(1.0 - p);
            let rhs = c * v.powf(2.0 * p - 1.0) / per.powf(p);
            out.push(InequalityReport::evaluate("torsion-upper", 1.0 / lam, Relation::AtMost, rhs, rel));
        }
    }

    match &d_beta {
        Some(d) => {
            let env = moment_envelope(body, beta)?;
            let rel_d = (d.abs_error_estimate / d.value).max(1e-12);
            let dv = d.value;
            let ev = |name: &str, rhs: f64| InequalityReport::evaluate(name, dv, relation_of(name), rhs, rel_d);
            out.push(ev("moment-envelope-larson-lower", env.larson_lower));
            out.push(ev("moment-envelope-perimeter-upper", r.powf(beta + 1.0) * per / (beta + 1.0)));
            out.push(ev("moment-envelope-prizag-upper", env.prizag_upper));
            out.push(ev("moment-envelope-ball-lower", env.ball_lower));
            if env.pv_asserted {
                out.push(ev("moment-envelope-pv-lower", env.pv_lower));
                out.push(ev("moment-envelope-pv-upper", env.pv_upper));
            } else {
                let reason = format!("perimeter-volume bounds are only asserted for β >= 1 (β = {beta})");
                out.push(skip("moment-envelope-pv-lower", &reason));
                out.push(skip("moment-envelope-pv-upper", &reason));
            }
            let d1 = moment(body, 1.0)?;
            let rel_1 = (d1.abs_error_estimate / d1.value).max(1e-12);
            let lhs = (dv / v).powf(1.0 / beta);
            let rhs = borell_constant(dim, 1.0, beta) * d1.value / v;
            out.push(InequalityReport::evaluate("borell", lhs, Relation::AtMost, rhs, rel_d / beta + rel_1));
        }
        None => {
            for n in [
                "moment-envelope-larson-lower",
                "moment-envelope-perimeter-upper",
                "moment-envelope-prizag-upper",
                "moment-envelope-ball-lower",
                "moment-envelope-pv-lower",
                "moment-envelope-pv-upper",
                "borell",
            ] {
                out.push(skip(n, &beta_reason));
            }
        }
    }

    let ratio = v / (r * per);
    let geo = if m.exact { 1e-12 } else { 1e-9 };
    out.push(InequalityReport::evaluate("pervol-lower", ratio, Relation::AtLeast, 1.0 / nf, geo));
    out.push(InequalityReport::evaluate("pervol-upper", ratio, Relation::Below, 1.0, geo));
    Ok(out)
}
