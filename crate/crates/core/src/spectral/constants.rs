use crate::error::Result;
use crate::special::{beta_fn, unit_ball_volume};

use super::one_d::pi_pq;
use super::ExponentPair;

/// Closed form of π_{p,q} where one is known: q = 1 gives
/// (2^p (p′ + 1)^{p−1})^{1/p}.
pub fn pi_special(pair: ExponentPair) -> Option<f64> {
    if pair.q() == 1.0 {
        let p = pair.p();
        Some((2f64.powf(p) * (pair.p_conj() + 1.0).powf(p - 1.0)).powf(1.0 / p))
    } else {
        None
    }
}

/// lim_{p→∞} π_{p,q} = 2 (q + 1)^{1/q}.
pub fn limit_pi(q: f64) -> f64 {
    2.0 * (q + 1.0).powf(1.0 / q)
}

/// π_{p,q} from the closed form when available, otherwise numerically.
pub fn resolve_pi(pair: ExponentPair, gridpoints: usize) -> Result<f64> {
    match pi_special(pair) {
        Some(v) => Ok(v),
        None => pi_pq(pair, gridpoints),
    }
}

/// K_{p,q,N} = (π_{p,q}/(2N))^p Π_{j=2}^N (pq/(j(p−q)) + 1)^{p/q−1}.
pub fn k_constant(pair: ExponentPair, n: usize, pi: f64) -> Result<f64> {
    pair.require_sub("K_{p,q,N}")?;
    let (p, q) = (pair.p(), pair.q());
    let mut k = (pi / (2.0 * n as f64)).powf(p);
    for j in 2..=n {
        k *= (p * q / (j as f64 * (p - q)) + 1.0).powf(p / q - 1.0);
    }
    Ok(k)
}

/// ∫_A h^s over the unit (N−1)-ball with h = 1 − |x|:
/// (N−1) ω_{N−1} B(N−1, s+1).
pub fn thin_profile_integral(n: usize, s: f64) -> f64 {
    let m = n - 1;
    m as f64 * unit_ball_volume(m) * beta_fn(m as f64, s + 1.0)
}

/// Limit of the shape functional on the thin cones {|x| < 1, 0 < y < ε(1 − |x|)}
/// as ε → 0: π^p (∫h)^{p−1+p/q} / ((2ω_{N−1})^p (∫h^{β+1})^{p/q−1}).
pub fn cone_thin_limit(pair: ExponentPair, n: usize, pi: f64) -> Result<f64> {
    pair.require_sub("the thin-cone limit")?;
    let (p, q) = (pair.p(), pair.q());
    let vol = thin_profile_integral(n, 1.0);
    let top = thin_profile_integral(n, pair.beta() + 1.0);
    let base = 2.0 * unit_ball_volume(n - 1);
    Ok(pi.powf(p) * vol.powf(p - 1.0 + p / q) / (base.powf(p) * top.powf(p / q - 1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn pair(p: f64, q: f64) -> ExponentPair {
        ExponentPair::new(p, q).unwrap()
    }

    #[test]
    fn closed_forms() {
        assert_relative_eq!(pi_special(pair(2.0, 1.0)).unwrap(), 12f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(pi_special(pair(3.0, 1.0)).unwrap(), 50f64.cbrt(), max_relative = 1e-15);
        assert!(pi_special(pair(2.0, 2.0)).is_none());
        assert_eq!(limit_pi(1.0), 4.0);
        assert_relative_eq!(limit_pi(2.0), 2.0 * 3f64.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn k_examples() {
        let pi21 = pi_special(pair(2.0, 1.0)).unwrap();
        assert_relative_eq!(k_constant(pair(2.0, 1.0), 2, pi21).unwrap(), 1.5, max_relative = 1e-14);
        assert_relative_eq!(k_constant(pair(2.0, 1.0), 3, pi21).unwrap(), 10.0 / 9.0, max_relative = 1e-14);
        assert!(k_constant(pair(2.0, 2.0), 2, PI).is_err());
    }

    #[test]
    fn thin_integrals() {
        assert_relative_eq!(thin_profile_integral(3, 1.0), PI / 3.0, max_relative = 1e-14);
        assert_relative_eq!(thin_profile_integral(2, 3.0), 0.5, max_relative = 1e-14);
        let pi21 = pi_special(pair(2.0, 1.0)).unwrap();
        assert_relative_eq!(cone_thin_limit(pair(2.0, 1.0), 2, pi21).unwrap(), 1.5, max_relative = 1e-13);
    }
}
