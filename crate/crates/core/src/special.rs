//! Gamma-function family used by the moment and constant formulas.

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural logarithm of Γ(x) for x > 0 (Lanczos, g = 7, nine terms).
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection keeps the series in its accurate half-plane
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

pub fn gamma(x: f64) -> f64 {
    if x == x.floor() && x > 0.0 && x < 171.0 {
        return (1..x as u64).fold(1.0, |acc, k| acc * k as f64);
    }
    ln_gamma(x).exp()
}

/// Euler Beta function B(a, b).
pub fn beta_fn(a: f64, b: f64) -> f64 {
    (ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)).exp()
}

/// Generalized binomial coefficient Γ(N+β+1) / (Γ(β+1) Γ(N+1)).
///
/// Integral β takes the exact product route; everything else goes through
/// log-Gamma.
pub fn gamma_binom(n: usize, beta: f64) -> f64 {
    if beta == beta.floor() && (0.0..1.0e6).contains(&beta) {
        return (1..=n).fold(1.0, |acc, j| acc * (beta + j as f64) / j as f64);
    }
    let n = n as f64;
    (ln_gamma(n + beta + 1.0) - ln_gamma(beta + 1.0) - ln_gamma(n + 1.0)).exp()
}

/// Volume ω_N of the unit ball in R^N.
pub fn unit_ball_volume(n: usize) -> f64 {
    let half = n as f64 / 2.0;
    match n {
        0 => 1.0,
        1 => 2.0,
        2 => PI,
        3 => 4.0 * PI / 3.0,
        _ => (half * PI.ln() - ln_gamma(half + 1.0)).exp(),
    }
}
