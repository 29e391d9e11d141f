use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::ConvexBody;
use crate::special::unit_ball_volume;
use crate::spectral::{lambda_2d_with, lambda_ball_with, scale_lambda, ExponentPair, SolverConfig};

use super::report::SweepRow;
use super::verify::functional_value;

/// Amplitude of the polar perturbations ρ = 1 + a sin(kθ).
pub const PERTURBATION_AMPLITUDE: f64 = 0.3;

fn row(parameter: f64, entries: &[(&str, f64)], limit_target: f64, relative_gap: f64) -> SweepRow {
    let values: BTreeMap<String, f64> = entries.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    SweepRow { parameter, values, limit_target, relative_gap }
}

/// Perturbed disks B_{1/2} ⊂ Ω_k ⊂ B_2 with growing perimeter drive the
/// upper bound λ(B_{1/2}) (|B_2|^{1−1/p+1/q} / P(Ω_k))^p on 𝓕 to zero.
/// The limit is 0, so `relative_gap` is the bound itself.
pub fn appendix_infimum(pair: ExponentPair, ks: &[usize], cfg: &SolverConfig) -> Result<Vec<SweepRow>> {
    if ks.is_empty() {
        return Err(Error::InvalidParameter("k list is empty".into()));
    }
    let unit = lambda_ball_with(2, pair, cfg.gridpoints, cfg)?.value;
    let half = scale_lambda(unit, 0.5, 2, pair);
    let big = 4.0 * unit_ball_volume(2);
    ks.par_iter()
        .map(|&k| {
            let body = ConvexBody::perturbed_ball(k, PERTURBATION_AMPLITUDE)?;
            let m = body.metrics();
            let bound = functional_value(big, m.perimeter, half, pair);
            Ok(row(
                k as f64,
                &[("bound", bound), ("perimeter", m.perimeter), ("volume", m.volume), ("lambda_half_ball", half)],
                0.0,
                bound,
            ))
        })
        .collect()
}

/// Slit squares A_n: numeric 𝓕_{2,q} and the Hardy proxy
/// |A|² / (16 r_n² P²) (= 1/(256 r_n²) on the unit square), both growing
/// without bound. The limit is +∞, so `relative_gap` is 1/𝓕.
pub fn appendix_supremum(q: f64, ns: &[usize], mesh_h: f64, cfg: &SolverConfig) -> Result<Vec<SweepRow>> {
    if !(1.0..2.0).contains(&q) {
        return Err(Error::InvalidParameter(format!("the slit-square demonstration needs 1 <= q < 2, got {q}")));
    }
    let nmax = *ns.iter().max().ok_or_else(|| Error::InvalidParameter("n list is empty".into()))?;
    if mesh_h > 1.0 / (4.0 * nmax as f64) {
        return Err(Error::MeshTooCoarse(format!(
            "mesh_h = {mesh_h} must be at most 1/(4 n) = {} for n = {nmax}",
            1.0 / (4.0 * nmax as f64)
        )));
    }
    let pair = ExponentPair::new(2.0, q)?;
    ns.par_iter()
        .map(|&n| {
            let body = ConvexBody::slit_square(n)?;
            let m = body.metrics();
            let est = lambda_2d_with(&body, pair, mesh_h, cfg)?;
            let f = functional_value(m.volume, m.perimeter, est.value, pair);
            let r = m.inradius;
            let proxy = m.volume * m.volume / (16.0 * r * r * m.perimeter * m.perimeter);
            Ok(row(
                n as f64,
                &[
                    ("functional", f),
                    ("hardy_proxy", proxy),
                    ("lambda", est.value),
                    ("inradius", r),
                    ("mesh_h", est.mesh_h),
                ],
                f64::INFINITY,
                1.0 / f,
            ))
        })
        .collect()
}
