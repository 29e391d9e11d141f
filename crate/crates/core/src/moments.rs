//! Distance-function moments D_β(Ω) = ∫ d_Ω^β, their metric envelopes, the
//! α(Ω) root and Borell's reverse Hölder ratio.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{ConvexBody, Shape};
use crate::quadrature::{integrate, AdaptiveOptions};
use crate::special::{beta_fn, gamma_binom, unit_ball_volume};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MomentMethod {
    Analytic,
    CoareaQuadrature,
    Grid,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentResult {
    pub beta: f64,
    pub value: f64,
    pub method: MomentMethod,
    pub abs_error_estimate: f64,
}

/// Metric-only bounds on D_β. `pv_lower`/`pv_upper` are always evaluated but
/// only asserted (`pv_asserted`) for β ≥ 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentEnvelope {
    pub beta: f64,
    pub larson_lower: f64,
    pub prizag_upper: f64,
    pub ball_lower: f64,
    pub pv_lower: f64,
    pub pv_upper: f64,
    pub pv_asserted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaRoot {
    pub alpha: f64,
    pub residual: f64,
    /// Set when |Ω|/P fell outside [r/N, r) by rounding and was clamped.
    pub clamped: bool,
}

fn check_beta(beta: f64) -> Result<()> {
    if beta.is_finite() && beta >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("moment exponent must be finite and nonnegative, got {beta}")))
    }
}

fn require_convex(body: &ConvexBody, what: &str) -> Result<()> {
    if body.is_convex() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("{what} needs a convex body, got {}", body.kind().name())))
    }
}

/// ∫_{B_r} (r - |x|)^β dx in dimension `n`.
pub fn ball_moment(n: usize, radius: f64, beta: f64) -> f64 {
    unit_ball_volume(n) * radius.powf(n as f64 + beta) / gamma_binom(n, beta)
}

/// Coefficients (ascending in t) of the box profile L(t) = Σ_i 2 Π_{j≠i} 2(a_j − t).
fn box_profile(half: &[f64]) -> Vec<f64> {
    let n = half.len();
    let mut total = vec![0.0; n];
    for i in 0..n {
        let mut poly = vec![2.0];
        for (j, &a) in half.iter().enumerate() {
            if j == i {
                continue;
            }
            let mut next = vec![0.0; poly.len() + 1];
            for (m, c) in poly.iter().enumerate() {
                next[m] += 2.0 * a * c;
                next[m + 1] -= 2.0 * c;
            }
            poly = next;
        }
        for (m, c) in poly.iter().enumerate() {
            total[m] += c;
        }
    }
    total
}

pub fn moment(body: &ConvexBody, beta: f64) -> Result<MomentResult> {
    moment_with(body, beta, &AdaptiveOptions::default())
}

pub fn moment_with(body: &ConvexBody, beta: f64, opts: &AdaptiveOptions) -> Result<MomentResult> {
    require_convex(body, "distance moments")?;
    check_beta(beta)?;
    let m = body.metrics();
    let n = body.dim();
    let r = m.inradius;
    let analytic = |value: f64| MomentResult { beta, value, method: MomentMethod::Analytic, abs_error_estimate: 0.0 };

    if body.as_polygon().is_none() {
        return Ok(match body.shape() {
            Shape::Ball { radius, .. } => analytic(ball_moment(n, *radius, beta)),
            Shape::Box { half_widths, .. } | Shape::Slab { half_widths, .. } => {
                let value = box_profile(half_widths)
                    .iter()
                    .enumerate()
                    .map(|(k, c)| {
                        let e = beta + k as f64 + 1.0;
                        c * r.powf(e) / e
                    })
                    .sum();
                analytic(value)
            }
            // L(t) = P (1 - t/r)^{N-1} for these, so D_β = P r^{β+1} B(β+1, N)
            Shape::ThinCone { .. } | Shape::TangentPolytope { .. } => {
                analytic(m.perimeter * r.powf(beta + 1.0) * beta_fn(beta + 1.0, n as f64))
            }
            _ => unreachable!("nonconvex kinds rejected above"),
        });
    }

    let poly = body.as_polygon().expect("checked above");
    let profile = |t: f64| poly.inner_parallel_perimeter(t);
    let first = r / opts.panels as f64;
    let (head, head_err) = if beta < 1.0 {
        // u = t^{β+1} absorbs the endpoint singularity of t^β
        let e = beta + 1.0;
        let sub = AdaptiveOptions { panels: 1, ..opts.clone() };
        let part = integrate(|u| profile(u.powf(1.0 / e)), 0.0, first.powf(e), &sub);
        (part.value / e, part.abs_error / e)
    } else {
        let sub = AdaptiveOptions { panels: 1, ..opts.clone() };
        let part = integrate(|t| t.powf(beta) * profile(t), 0.0, first, &sub);
        (part.value, part.abs_error)
    };
    let tail_opts = AdaptiveOptions { panels: opts.panels.saturating_sub(1).max(1), ..opts.clone() };
    let tail = integrate(|t| t.powf(beta) * profile(t), first, r, &tail_opts);
    Ok(MomentResult {
        beta,
        value: head + tail.value,
        method: MomentMethod::CoareaQuadrature,
        abs_error_estimate: head_err + tail.abs_error,
    })
}

pub fn moment_envelope(body: &ConvexBody, beta: f64) -> Result<MomentEnvelope> {
    require_convex(body, "the moment envelope")?;
    check_beta(beta)?;
    let m = body.metrics();
    let n = body.dim();
    let (v, p, r) = (m.volume, m.perimeter, m.inradius);
    let binom = gamma_binom(n, beta);
    Ok(MomentEnvelope {
        beta,
        larson_lower: p * r.powf(beta + 1.0) / (n as f64 * binom),
        prizag_upper: v * r.powf(beta) / (beta + 1.0),
        ball_lower: r.powf(beta) * v / binom,
        pv_lower: v.powf(beta + 1.0) / ((beta + 1.0) * p.powf(beta)),
        pv_upper: (n as f64).powf(beta) * v.powf(beta + 1.0) / (binom * p.powf(beta)),
        pv_asserted: beta >= 1.0,
    })
}

/// f(t) = (1 − (1 − t r)^N) / (N t), written to stay accurate for small t.
fn alpha_map(t: f64, r: f64, n: usize) -> f64 {
    -(n as f64 * (-t * r).ln_1p()).exp_m1() / (n as f64 * t)
}

/// Root of (1 − (1 − α r)^N)/(Nα) = |Ω|/P on (0, 1/r] by bisection.
pub fn alpha_of(body: &ConvexBody) -> Result<AlphaRoot> {
    require_convex(body, "the alpha root")?;
    let m = body.metrics();
    let n = body.dim();
    let r = m.inradius;
    let target = m.volume / m.perimeter;
    if target <= r / n as f64 {
        let alpha = 1.0 / r;
        let residual = (alpha_map(alpha, r, n) - target).abs();
        return Ok(AlphaRoot { alpha, residual, clamped: residual > 0.0 });
    }
    let (mut lo, mut hi) = (0.0, 1.0 / r);
    let mut clamped = false;
    if target >= r {
        clamped = true;
        hi = f64::MIN_POSITIVE.max(1e-300);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if alpha_map(mid, r, n) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let alpha = if clamped { hi } else { 0.5 * (lo + hi) };
    // pick whichever bracket end fits best
    let alpha = [lo.max(f64::MIN_POSITIVE), hi, alpha]
        .into_iter()
        .filter(|a| *a > 0.0)
        .min_by(|a, b| {
            (alpha_map(*a, r, n) - target).abs().total_cmp(&(alpha_map(*b, r, n) - target).abs())
        })
        .unwrap_or(alpha);
    Ok(AlphaRoot { alpha, residual: (alpha_map(alpha, r, n) - target).abs(), clamped })
}

/// P ∫_0^r t^β (1 − α t)^{N−1} dt, the upper bound on D_β through α(Ω).
pub fn alpha_moment_bound(body: &ConvexBody, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    let root = alpha_of(body)?;
    let m = body.metrics();
    let n = body.dim() as i32;
    let a = root.alpha;
    let opts = AdaptiveOptions::default();
    let part = integrate(|t| t.powf(beta) * (1.0 - a * t).max(0.0).powi(n - 1), 0.0, m.inradius, &opts);
    Ok(m.perimeter * part.value)
}

/// F_N(x) = x^{2N} + (N − 1) x^N − N x^{N+1}.
pub fn step1_gap(n: usize, x: f64) -> f64 {
    let xn = x.powi(n as i32);
    xn * (xn + (n as f64 - 1.0) - n as f64 * x)
}

/// C_{s,q} = binom(N+q, N)^{1/q} binom(N+s, N)^{−1/s}.
pub fn borell_constant(n: usize, q: f64, s: f64) -> f64 {
    gamma_binom(n, q).powf(1.0 / q) * gamma_binom(n, s).powf(-1.0 / s)
}

/// (⨍ d^s)^{1/s} / (C_{s,q} (⨍ d^q)^{1/q}); at most 1 on convex bodies.
pub fn borell_ratio(body: &ConvexBody, q: f64, s: f64) -> Result<f64> {
    require_convex(body, "the reverse Hölder ratio")?;
    if !(q > 0.0 && q <= s && s.is_finite()) {
        return Err(Error::InvalidParameter(format!("need 0 < q <= s, got q = {q}, s = {s}")));
    }
    let v = body.metrics().volume;
    let ds = moment(body, s)?.value / v;
    let dq = moment(body, q)?.value / v;
    Ok(ds.powf(1.0 / s) / (borell_constant(body.dim(), q, s) * dq.powf(1.0 / q)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn square_moments() {
        let sq = ConvexBody::unit_square();
        assert_relative_eq!(moment(&sq, 1.0).unwrap().value, 1.0 / 6.0, max_relative = 1e-12);
        assert_relative_eq!(moment(&sq, 2.0).unwrap().value, 1.0 / 24.0, max_relative = 1e-12);
        // 4 ∫_0^{1/2} y^{1/2} (1 − 2y) dy = 4 (2/3 · 2^{-3/2} − 2 · 2/5 · 2^{-5/2})
        let half = 4.0 * (2.0 / 3.0 * 0.5f64.powf(1.5) - 0.8 * 0.5f64.powf(2.5));
        assert_relative_eq!(moment(&sq, 0.5).unwrap().value, half, max_relative = 1e-10);
    }

    #[test]
    fn box_matches_polygon_path() {
        let rect = ConvexBody::rectangle(2.0, 1.0).unwrap();
        let slab = ConvexBody::slab(2, 2.0).unwrap();
        for beta in [0.0, 0.5, 1.0, 2.0, 3.7] {
            let a = moment(&rect, beta).unwrap().value;
            let b = moment(&slab, beta).unwrap();
            assert_eq!(b.method, MomentMethod::Analytic);
            assert_relative_eq!(a, b.value, max_relative = 1e-10);
        }
        assert_relative_eq!(moment(&slab, 1.0).unwrap().value, 5.0 / 12.0, max_relative = 1e-14);
        assert_relative_eq!(moment(&slab, 2.0).unwrap().value, 1.0 / 8.0, max_relative = 1e-14);
    }

    #[test]
    fn disk_moment() {
        let disk = ConvexBody::ball(2, 1.0).unwrap();
        assert_relative_eq!(moment(&disk, 2.0).unwrap().value, PI / 6.0, max_relative = 1e-14);
        assert_relative_eq!(moment(&disk, 0.0).unwrap().value, PI, max_relative = 1e-14);
    }

    #[test]
    fn cone_moment_matches_triangle_quadrature() {
        let planar = ConvexBody::thin_cone(2, 0.4).unwrap();
        let value = moment(&planar, 1.5).unwrap().value;
        let m = planar.metrics();
        let homothetic = m.perimeter * m.inradius.powf(2.5) * beta_fn(2.5, 2.0);
        assert_relative_eq!(value, homothetic, max_relative = 1e-10);
    }

    #[test]
    fn nonconvex_and_negative_beta_rejected() {
        let slit = ConvexBody::slit_square(2).unwrap();
        assert!(matches!(moment(&slit, 1.0), Err(Error::Unsupported(_))));
        assert!(moment(&ConvexBody::unit_square(), -0.5).is_err());
    }

    #[test]
    fn envelope_examples() {
        let sq = ConvexBody::unit_square();
        let e = moment_envelope(&sq, 1.0).unwrap();
        assert_relative_eq!(e.larson_lower, 1.0 / 6.0, max_relative = 1e-12);
        assert_relative_eq!(e.pv_upper, 1.0 / 6.0, max_relative = 1e-12);
        let disk = ConvexBody::ball(2, 1.0).unwrap();
        assert_relative_eq!(moment_envelope(&disk, 1.0).unwrap().ball_lower, PI / 3.0, max_relative = 1e-14);
        let rect = ConvexBody::rectangle(2.0, 1.0).unwrap();
        let e0 = moment_envelope(&rect, 0.0).unwrap();
        assert_relative_eq!(e0.larson_lower, 1.5, max_relative = 1e-12);
        assert_relative_eq!(e0.prizag_upper, 2.0, max_relative = 1e-12);
        assert!(!moment_envelope(&rect, 0.5).unwrap().pv_asserted);
    }

    #[test]
    fn alpha_examples() {
        for r in [0.5, 1.0, 3.0] {
            let a = alpha_of(&ConvexBody::ball(3, r).unwrap()).unwrap();
            assert_relative_eq!(a.alpha, 1.0 / r, max_relative = 1e-12);
        }
        let sq = alpha_of(&ConvexBody::unit_square()).unwrap();
        assert_relative_eq!(sq.alpha, 2.0, max_relative = 1e-9);
        let rect = alpha_of(&ConvexBody::rectangle(2.0, 1.0).unwrap()).unwrap();
        assert_relative_eq!(rect.alpha, 4.0 / 3.0, max_relative = 1e-12);
        assert!(rect.residual <= 1e-12);
    }

    #[test]
    fn step1_examples() {
        assert_relative_eq!(step1_gap(2, 0.5), 0.0625);
        assert_relative_eq!(step1_gap(3, 0.5), 0.078125);
        for n in 2..9 {
            assert_eq!(step1_gap(n, 1.0), 0.0);
            assert_eq!(step1_gap(n, 0.0), 0.0);
        }
    }

    #[test]
    fn borell_examples() {
        let disk = ConvexBody::ball(2, 1.0).unwrap();
        assert_relative_eq!(borell_ratio(&disk, 1.0, 2.0).unwrap(), 1.0, max_relative = 1e-12);
        let sq = ConvexBody::unit_square();
        assert_relative_eq!(borell_ratio(&sq, 1.0, 2.0).unwrap(), 1.0, max_relative = 1e-10);
        // D_1 = 5/12, D_2 = 1/8 on the 2×1 rectangle
        let rect = ConvexBody::rectangle(2.0, 1.0).unwrap();
        let want = (1.0f64 / 16.0).sqrt() / (3.0 / 6f64.sqrt() * 5.0 / 24.0);
        assert_relative_eq!(borell_ratio(&rect, 1.0, 2.0).unwrap(), want, max_relative = 1e-10);
        assert!(borell_ratio(&sq, 2.0, 1.0).is_err());
    }
}
