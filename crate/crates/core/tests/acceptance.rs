//! Acceptance criteria. Runs every criterion at its stated tolerance and
//! wall-clock budget, printing one PASS/FAIL line each; exits nonzero if any
//! fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use sobolev_core::harness::{
    appendix_infimum, appendix_supremum, decay_exponent, random_convex_polygons, random_tangent_polygon,
    sweep_slab, sweep_thin, verify, ThinMesh, Verdict,
};
use sobolev_core::moments::{alpha_of, moment, moment_envelope, step1_gap};
use sobolev_core::spectral::{
    cone_thin_limit, k_constant, lambda_2d, lambda_ball, limit_pi, pi_pq, resolve_pi, Method,
};
use sobolev_core::{ConvexBody, ExponentPair, SolverConfig};

type Outcome = Result<String, String>;

const SEED: u64 = 20_251_016;
const J01: f64 = 2.404_825_557_695_773;

fn pair(p: f64, q: f64) -> ExponentPair {
    ExponentPair::new(p, q).expect("valid exponents")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn err(e: sobolev_core::Error) -> String {
    e.to_string()
}

fn binomial(n: u64, k: u64) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * (n - k + i) as f64 / i as f64)
}

fn constants() -> Outcome {
    let pr = pair(2.0, 1.0);
    let pi = resolve_pi(pr, 2048).map_err(err)?;
    let k2 = k_constant(pr, 2, pi).map_err(err)?;
    let k3 = k_constant(pr, 3, pi).map_err(err)?;
    ensure((k2 - 1.5).abs() <= 1e-12, || format!("K(2,1,2) = {k2}"))?;
    ensure((k3 - 10.0 / 9.0).abs() <= 1e-12, || format!("K(2,1,3) = {k3}"))?;
    // torsion constant N^p binom(N+p', N)^{1-p} with p = p' = 2, N = 3
    let torsion = 9.0 / binomial(5, 3);
    let conj = 2.0 * 9.0 / (4.0 * 5.0);
    ensure((1.0 / k3 - torsion).abs() <= 1e-12, || format!("1/K = {} vs {torsion}", 1.0 / k3))?;
    ensure((torsion - conj).abs() <= 1e-12, || format!("torsion {torsion} vs conjectured {conj}"))?;
    Ok(format!("K(2,1,2) = {k2}, K(2,1,3) = {k3}"))
}

fn k_identity() -> Outcome {
    let mut worst = 0.0f64;
    for p in [1.5, 2.0, 3.0] {
        for q in [1.0, 0.5 * (1.0 + p)] {
            let pr = pair(p, q);
            let pi = resolve_pi(pr, 2048).map_err(err)?;
            for n in [2, 3, 4] {
                let k = k_constant(pr, n, pi).map_err(err)?;
                let c = cone_thin_limit(pr, n, pi).map_err(err)?;
                worst = worst.max(rel(c, k));
            }
        }
    }
    ensure(worst <= 1e-12, || format!("worst relative mismatch {worst:.3e}"))?;
    Ok(format!("18 cases, worst relative mismatch {worst:.1e}"))
}

fn moments() -> Outcome {
    let sq = ConvexBody::unit_square();
    // four triangles of base 1 and height 1/2: 4 h^{β+1} / ((β+1)(β+2))
    let tri = |b: f64| 4.0 * 0.5f64.powf(b + 1.0) / ((b + 1.0) * (b + 2.0));
    for b in [1.0, 2.0] {
        let m = moment(&sq, b).map_err(err)?.value;
        ensure((m - tri(b)).abs() <= 1e-8, || format!("square β = {b}: {m} vs {}", tri(b)))?;
    }
    ensure((tri(1.0) - 1.0 / 6.0).abs() < 1e-15 && (tri(2.0) - 1.0 / 24.0).abs() < 1e-15, || "oracle".into())?;
    let disk = ConvexBody::ball(2, 1.0).map_err(err)?;
    let mut worst = 0.0f64;
    for b in [0.5, 1.0, 2.0, 3.7] {
        let m = moment(&disk, b).map_err(err)?.value;
        let exact = 2.0 * PI / ((b + 1.0) * (b + 2.0));
        worst = worst.max((m - exact).abs());
    }
    ensure(worst <= 1e-8, || format!("disk worst error {worst:.3e}"))?;
    Ok(format!("square 1/6, 1/24; disk worst error {worst:.1e}"))
}

fn envelope_equalities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let tangent = random_tangent_polygon(&mut rng).map_err(err)?;
    let mut worst = 0.0f64;
    for (label, body) in [("square", ConvexBody::unit_square()), ("tangent polygon", tangent)] {
        for b in [1.0, 2.0, 3.0] {
            let d = moment(&body, b).map_err(err)?.value;
            let env = moment_envelope(&body, b).map_err(err)?;
            let gap = (d - env.larson_lower).abs().max((d - env.pv_upper).abs());
            ensure(gap <= 1e-8, || format!("{label} β = {b}: D = {d}, larson {}, pv {}", env.larson_lower, env.pv_upper))?;
            worst = worst.max(gap);
        }
    }
    let rect = ConvexBody::rectangle(2.0, 1.0).map_err(err)?;
    let d1 = moment(&rect, 1.0).map_err(err)?.value;
    ensure((d1 - 5.0 / 12.0).abs() <= 1e-10, || format!("rectangle D1 = {d1}"))?;
    let mut tightest = f64::INFINITY;
    for b in [1.0, 2.0, 3.0] {
        let d = moment(&rect, b).map_err(err)?.value;
        let env = moment_envelope(&rect, b).map_err(err)?;
        let lo = (d - env.larson_lower) / d;
        let hi = (env.pv_upper - d) / d;
        ensure(lo >= 1e-3 && hi >= 1e-3, || format!("rectangle β = {b}: slack {lo:.3e}, {hi:.3e}"))?;
        tightest = tightest.min(lo).min(hi);
    }
    Ok(format!("equality gap {worst:.1e}; rectangle slack >= {tightest:.3}"))
}

fn slab_sweep() -> Outcome {
    let ls = [10.0, 30.0, 100.0, 300.0];
    let mut parts = Vec::new();
    for b in [1.0, 2.0] {
        let rows = sweep_slab(b, 2, &ls).map_err(err)?;
        let at100 = &rows[2];
        let ratio = at100.value("ratio_inradius_perimeter").unwrap_or(f64::NAN);
        ensure(rel(ratio, 1.0 / (b + 1.0)) <= 0.02, || format!("β = {b}: ratio {ratio} at L = 100"))?;
        let slope = -decay_exponent(&rows);
        ensure((0.8..=1.2).contains(&slope), || format!("β = {b}: decay exponent {slope}"))?;
        ensure(rows.windows(2).all(|w| w[1].relative_gap < w[0].relative_gap), || format!("β = {b}: gaps not decreasing"))?;
        parts.push(format!("β={b}: ratio {ratio:.5}, exponent {slope:.3}"));
    }
    Ok(parts.join("; "))
}

fn one_d_constants() -> Outcome {
    let a = pi_pq(pair(2.0, 2.0), 2048).map_err(err)?;
    let b = pi_pq(pair(2.0, 1.0), 2048).map_err(err)?;
    let c = pi_pq(pair(32.0, 2.0), 2048).map_err(err)?;
    let lim = limit_pi(2.0);
    ensure((a - PI).abs() <= 1e-3, || format!("π_2,2 = {a}"))?;
    ensure((b - 12f64.sqrt()).abs() <= 1e-3, || format!("π_2,1 = {b}"))?;
    ensure((lim - 12f64.sqrt()).abs() < 1e-14, || format!("limit {lim}"))?;
    ensure(rel(c, lim) <= 0.02, || format!("π_32,2 = {c} vs {lim}"))?;
    Ok(format!("π_2,2 = {a:.7}, π_2,1 = {b:.7}, π_32,2 = {c:.5} ({:.2}% from limit)", 100.0 * rel(c, lim)))
}

/// Torsional rigidity of the unit square, Σ_{m,n odd} 64 / (π⁶ m² n² (m² + n²)).
fn square_torsion() -> f64 {
    let mut t = 0.0;
    for m in (1..400).step_by(2) {
        for n in (1..400).step_by(2) {
            let (m, n) = (m as f64, n as f64);
            t += 64.0 / (PI.powi(6) * m * m * n * n * (m * m + n * n));
        }
    }
    t
}

fn planar_solver() -> Outcome {
    let sq = ConvexBody::unit_square();
    let h = 1.0 / 128.0;
    let eig = lambda_2d(&sq, pair(2.0, 2.0), h).map_err(err)?;
    let linear = eig.cross_checks.iter().find(|c| c.method == Method::LinearEigen).ok_or("no linear-eigen cross-check")?;
    ensure(rel(eig.value, 2.0 * PI * PI) <= 0.01, || format!("λ_2,2 = {}", eig.value))?;
    ensure(rel(eig.value, linear.value) <= 0.01, || format!("λ_2,2 {} vs linear {}", eig.value, linear.value))?;
    let tor = lambda_2d(&sq, pair(2.0, 1.0), h).map_err(err)?;
    let poisson = tor.cross_checks.iter().find(|c| c.method == Method::PoissonTorsion).ok_or("no torsion cross-check")?;
    let exact = 1.0 / square_torsion();
    ensure(rel(tor.value, poisson.value) <= 0.01, || format!("λ_2,1 {} vs torsion {}", tor.value, poisson.value))?;
    ensure(rel(tor.value, exact) <= 0.01, || format!("λ_2,1 {} vs series {exact}", tor.value))?;
    let ball = lambda_ball(2, pair(2.0, 2.0), 2048).map_err(err)?;
    ensure(rel(ball.value, J01 * J01) <= 0.01, || format!("λ(B_1) = {}", ball.value))?;
    Ok(format!(
        "λ_2,2 err {:.1e}, λ_2,1 err {:.1e} (series), disk err {:.1e}",
        rel(eig.value, 2.0 * PI * PI),
        rel(tor.value, exact),
        rel(ball.value, J01 * J01)
    ))
}

fn full_verification() -> Outcome {
    let polys = random_convex_polygons(SEED, 50);
    let mut total = 0;
    let mut skipped = 0;
    for (p, q) in [(2.0, 1.0), (2.0, 1.5), (3.0, 2.0)] {
        let pr = pair(p, q);
        let batches: Vec<_> = polys
            .par_iter()
            .enumerate()
            .map(|(i, b)| {
                let cfg = SolverConfig { mesh_h: b.metrics().inradius / 32.0, ..SolverConfig::default() };
                verify(b, pr, &cfg).map(|r| (i, r))
            })
            .collect::<Result<_, _>>()
            .map_err(err)?;
        for (i, reports) in batches {
            for r in reports {
                total += 1;
                match r.verdict {
                    Verdict::Violated => {
                        return Err(format!(
                            "seed {SEED} polygon {i} ({p},{q}): {} {} {} {} (margin {:.3e}, tol {:.3e})",
                            r.name,
                            r.lhs,
                            r.relation.symbol(),
                            r.rhs,
                            r.margin,
                            r.tolerance_used
                        ))
                    }
                    Verdict::Skipped => skipped += 1,
                    _ => {}
                }
            }
        }
    }
    Ok(format!("{total} reports on 50 polygons (seed {SEED}), 0 violated, {skipped} skipped"))
}

fn ball_equality() -> Outcome {
    let mut parts = Vec::new();
    for n in [2, 3] {
        let ball = ConvexBody::ball(n, 1.0).map_err(err)?;
        for (p, q) in [(2.0, 2.0), (2.0, 1.0)] {
            let reports = verify(&ball, pair(p, q), &SolverConfig::default()).map_err(err)?;
            for name in ["per-inr-upper", "inr-vol-upper"] {
                let r = reports.iter().find(|r| r.name == name).ok_or_else(|| format!("missing {name}"))?;
                ensure(r.verdict == Verdict::Equality, || {
                    format!("N = {n} ({p},{q}) {name}: {} (margin {:.3e}, tol {:.3e})", r.verdict.name(), r.margin, r.tolerance_used)
                })?;
            }
        }
        parts.push(format!("N={n}"));
    }
    Ok(format!("equality on the unit ball for {}", parts.join(", ")))
}

fn thin_attainment() -> Outcome {
    let eps = [0.2, 0.1, 0.05];
    let rows = sweep_thin(pair(2.0, 1.0), &eps, ThinMesh::PerEps(64.0), &SolverConfig::default()).map_err(err)?;
    let tol = 3.0 * SolverConfig::default().rel_tol * 1.5;
    for r in &rows {
        let f = r.value("functional").unwrap_or(f64::NAN);
        ensure(f >= 1.5 - tol, || format!("ε = {}: 𝓕 = {f}", r.parameter))?;
    }
    ensure(rows.windows(2).all(|w| w[1].relative_gap < w[0].relative_gap), || {
        format!("gaps not strictly decreasing: {:?}", rows.iter().map(|r| r.relative_gap).collect::<Vec<_>>())
    })?;
    let last = rows.last().map(|r| r.relative_gap).unwrap_or(f64::NAN);
    ensure(last <= 0.15, || format!("final gap {last}"))?;
    let gaps: Vec<String> = rows.iter().map(|r| format!("{:.2}%", 100.0 * r.relative_gap)).collect();
    Ok(format!("h = ε/64, gaps {}", gaps.join(" > ")))
}

fn appendix_demos() -> Outcome {
    let cfg = SolverConfig::default();
    let inf = appendix_infimum(pair(2.0, 1.0), &[16, 32, 64], &cfg).map_err(err)?;
    let bounds: Vec<f64> = inf.iter().map(|r| r.value("bound").unwrap_or(f64::NAN)).collect();
    ensure(bounds.windows(2).all(|w| w[1] < w[0]), || format!("infimum bounds {bounds:?}"))?;
    let sup = appendix_supremum(1.0, &[2, 4, 8], cfg.mesh_h, &cfg).map_err(err)?;
    let col = |k: &str| sup.iter().map(|r| r.value(k).unwrap_or(f64::NAN)).collect::<Vec<_>>();
    let (f, proxy, r) = (col("functional"), col("hardy_proxy"), col("inradius"));
    ensure(f.windows(2).all(|w| w[1] > w[0]), || format!("𝓕 {f:?}"))?;
    ensure(proxy.windows(2).all(|w| w[1] > w[0]), || format!("proxy {proxy:?}"))?;
    ensure(r.windows(2).all(|w| w[1] < w[0]), || format!("r_n {r:?}"))?;
    // r_2 = 1/(2 + √2), r_n = 5/(8n) for n ≥ 3
    let expect = [1.0 / (2.0 + 2f64.sqrt()), 5.0 / 32.0, 5.0 / 64.0];
    ensure(r.iter().zip(&expect).all(|(a, b)| (a - b).abs() < 1e-9), || format!("r_n {r:?} vs {expect:?}"))?;
    ensure(f.iter().zip(&proxy).all(|(a, b)| a >= b), || "𝓕 below the Hardy proxy".into())?;
    Ok(format!(
        "bounds {:.4} > {:.4} > {:.4}; 𝓕 {:.3} < {:.3} < {:.3}",
        bounds[0], bounds[1], bounds[2], f[0], f[1], f[2]
    ))
}

fn lemma_suite() -> Outcome {
    let pts = 10_000;
    for n in 2..=8 {
        for i in 0..=pts {
            let x = i as f64 / pts as f64;
            let g = step1_gap(n, x);
            ensure(g >= 0.0, || format!("F_{n}({x}) = {g}"))?;
            if i != 0 && i != pts {
                ensure(g > 0.0, || format!("F_{n} vanishes at interior point {x}"))?;
            }
        }
        ensure(step1_gap(n, 0.0) == 0.0 && step1_gap(n, 1.0) == 0.0, || format!("F_{n} endpoints"))?;
    }
    let mut worst = 0.0f64;
    for body in random_convex_polygons(SEED ^ 0xa1fa, 100) {
        let root = alpha_of(&body).map_err(err)?;
        let r = body.metrics().inradius;
        ensure(root.alpha <= 1.0 / r * (1.0 + 1e-12), || format!("α = {} > 1/r = {}", root.alpha, 1.0 / r))?;
        ensure(root.residual <= 1e-12, || format!("α residual {:.3e}", root.residual))?;
        worst = worst.max(root.residual);
    }
    Ok(format!("F_N >= 0 for N = 2..8; worst α residual {worst:.1e}"))
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("constants", Duration::from_millis(1), constants),
        ("K-identity", Duration::from_secs(1), k_identity),
        ("moments", Duration::from_secs(1), moments),
        ("envelope equalities", Duration::from_secs(1), envelope_equalities),
        ("slab sweep", Duration::from_secs(1), slab_sweep),
        ("1D constants", Duration::from_secs(30), one_d_constants),
        ("planar solver", Duration::from_secs(120), planar_solver),
        ("full verification", Duration::from_secs(1800), full_verification),
        ("ball equality", Duration::from_secs(10), ball_equality),
        ("thin attainment", Duration::from_secs(600), thin_attainment),
        ("appendix demos", Duration::from_secs(600), appendix_demos),
        ("lemma suite", Duration::from_secs(5), lemma_suite),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if took <= *budget {
                Ok(detail)
            } else {
                Err(format!("{detail}; over budget {budget:?}"))
            }
        });
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2} {name:<20} [{took:.3?} / {budget:?}] {detail}", i + 1);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
