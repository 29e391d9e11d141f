use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::ConvexBody;
use crate::moments::moment;
use crate::spectral::{lambda_2d_with, resolve_pi, ExponentPair, SolverConfig};

use super::report::SweepRow;
use super::verify::{functional_value, lower_constant};

fn strictly_increasing(xs: &[f64], what: &str) -> Result<()> {
    if xs.is_empty() {
        return Err(Error::InvalidParameter(format!("{what} list is empty")));
    }
    if xs.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParameter(format!("{what} values must be strictly increasing, got {xs:?}")));
    }
    Ok(())
}

fn values<const K: usize>(pairs: [(&str, f64); K]) -> BTreeMap<String, f64> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Slab boxes (−L/2, L/2)^{N−1} × (0, 1): both D_β/(r^{β+1}P) and
/// (P/|Ω|)^β ⨍ d^β tend to 1/(β+1). `relative_gap` is that of the first.
pub fn sweep_slab(beta: f64, n: usize, ls: &[f64]) -> Result<Vec<SweepRow>> {
    strictly_increasing(ls, "L")?;
    let target = 1.0 / (beta + 1.0);
    ls.par_iter()
        .map(|&l| {
            let body = ConvexBody::slab(n, l)?;
            let m = body.metrics();
            let d = moment(&body, beta)?.value;
            let (v, per, r) = (m.volume, m.perimeter, m.inradius);
            let inr = d / (r.powf(beta + 1.0) * per);
            let mean = (per / v).powf(beta) * d / v;
            Ok(SweepRow {
                parameter: l,
                values: values([
                    ("d_beta", d),
                    ("ratio_inradius_perimeter", inr),
                    ("ratio_perimeter_volume", mean),
                    ("volume", v),
                    ("perimeter", per),
                    ("inradius", r),
                ]),
                limit_target: target,
                relative_gap: (target - inr).abs() / target,
            })
        })
        .collect()
}

/// Least-squares slope of log(gap) against log(parameter); a gap decaying
/// like 1/L gives −1.
pub fn decay_exponent(rows: &[SweepRow]) -> f64 {
    let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.parameter.ln(), r.relative_gap.ln())).collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Grid step for each thin cone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThinMesh {
    Fixed(f64),
    /// h = ε / k.
    PerEps(f64),
}

impl ThinMesh {
    pub fn step(self, eps: f64) -> f64 {
        match self {
            ThinMesh::Fixed(h) => h,
            ThinMesh::PerEps(k) => eps / k,
        }
    }
}

impl Default for ThinMesh {
    fn default() -> Self {
        ThinMesh::PerEps(64.0)
    }
}

/// 𝓕_{p,q} on the planar thin cones {|x| < 1, 0 < y < ε(1 − |x|)} against
/// the limit K_{p,q,2}. `eps` must be strictly decreasing and the step at
/// most ε/16.
pub fn sweep_thin(pair: ExponentPair, eps: &[f64], mesh: ThinMesh, cfg: &SolverConfig) -> Result<Vec<SweepRow>> {
    pair.require_sub("the thin-cone sweep")?;
    let rev: Vec<f64> = eps.iter().rev().copied().collect();
    strictly_increasing(&rev, "reversed ε").map_err(|_| {
        Error::InvalidParameter(format!("ε values must be strictly decreasing, got {eps:?}"))
    })?;
    for &e in eps {
        let h = mesh.step(e);
        if !(h > 0.0 && h <= e / 16.0) {
            return Err(Error::MeshTooCoarse(format!("h = {h:.3e} at ε = {e}; use mesh_h <= ε/16 = {:.3e}", e / 16.0)));
        }
    }
    let pi = resolve_pi(pair, cfg.gridpoints)?;
    let k = lower_constant(pair, 2, pi)?;
    eps.par_iter()
        .map(|&e| {
            let body = ConvexBody::thin_cone(2, e)?;
            let m = body.metrics();
            let h = mesh.step(e);
            let est = lambda_2d_with(&body, pair, h, cfg)?;
            let f = functional_value(m.volume, m.perimeter, est.value, pair);
            Ok(SweepRow {
                parameter: e,
                values: values([
                    ("functional", f),
                    ("lambda", est.value),
                    ("mesh_h", est.mesh_h),
                    ("volume", m.volume),
                    ("perimeter", m.perimeter),
                    ("inradius", m.inradius),
                ]),
                limit_target: k,
                relative_gap: (f - k) / k,
            })
        })
        .collect()
}
