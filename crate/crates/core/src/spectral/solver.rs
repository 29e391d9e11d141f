//! Minimization of the discrete quotient
//! `E(u) / Q(u)^{p/q}` with `E = Σ w |∇u|^p`, `Q = Σ w ū^q`
//! over nonnegative nodal vectors.
//!
//! Each step preconditions the gradient with the stiffness matrix weighted by
//! `|∇u|^{p−2}` (floored), so the unit step is the inverse-iteration /
//! Kačanov update; Armijo backtracking guards it, and the iterate is
//! projected onto u ≥ 0 and renormalized to Q = 1.

use crate::error::{Error, Result};

use super::mesh::{Discretization, PINNED};
use super::skyline::{Cholesky, Skyline};
use super::SolverConfig;

#[derive(Debug, Clone)]
pub struct RayleighOutcome {
    /// Converged value of E/Q^{p/q} (not its p-th root).
    pub quotient: f64,
    pub u: Vec<f64>,
    pub iterations: usize,
    /// Relative quotient change over the last stopping window, or over the
    /// last accepted step when the line search stalled first.
    pub residual: f64,
}

fn node_value(u: &[f64], k: usize) -> f64 {
    if k == PINNED {
        0.0
    } else {
        u[k]
    }
}

pub(crate) struct Problem<'a> {
    disc: &'a Discretization,
    p: f64,
    q: f64,
    template: Skyline,
    slots: Vec<[usize; 6]>,
}

const PAIRS: [(usize, usize); 6] = [(0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2)];

impl<'a> Problem<'a> {
    pub(crate) fn new(disc: &'a Discretization, p: f64, q: f64) -> Self {
        let template = Skyline::new(disc.envelope());
        let slots = disc
            .elements
            .iter()
            .map(|e| {
                let mut s = [PINNED; 6];
                for (slot, &(a, b)) in s.iter_mut().zip(&PAIRS) {
                    let (i, j) = (e.nodes[a], e.nodes[b]);
                    if i != PINNED && j != PINNED {
                        *slot = template.slot(i.max(j), i.min(j));
                    }
                }
                s
            })
            .collect();
        Self { disc, p, q, template, slots }
    }

    fn gradient(&self, e: usize, u: &[f64]) -> [f64; 2] {
        let el = &self.disc.elements[e];
        let vals = el.nodes.map(|k| node_value(u, k));
        let mut g = [0.0; 2];
        for (c, gc) in g.iter_mut().enumerate().take(self.disc.grad_dim) {
            *gc = el.grad[c].iter().zip(&vals).map(|(a, v)| a * v).sum();
        }
        g
    }

    pub(crate) fn energy(&self, u: &[f64], delta: f64) -> f64 {
        let p = self.p;
        (0..self.disc.elements.len())
            .map(|e| {
                let g = self.gradient(e, u);
                let s = g[0] * g[0] + g[1] * g[1] + delta * delta;
                self.disc.elements[e].weight * s.powf(0.5 * p)
            })
            .sum()
    }

    pub(crate) fn mass(&self, u: &[f64]) -> f64 {
        let q = self.q;
        let mut total = 0.0;
        for el in &self.disc.elements {
            let vals = el.nodes.map(|k| node_value(u, k));
            for &(w, c) in &el.quad[..el.nquad] {
                let m = (c[0] * vals[0] + c[1] * vals[1] + c[2] * vals[2]).max(0.0);
                total += w * m.powf(q);
            }
        }
        total
    }

    pub(crate) fn quotient(&self, u: &[f64], delta: f64) -> f64 {
        self.energy(u, delta) / self.mass(u).powf(self.p / self.q)
    }

    fn energy_gradient(&self, u: &[f64], delta: f64, out: &mut [f64]) {
        let p = self.p;
        for (e, el) in self.disc.elements.iter().enumerate() {
            let g = self.gradient(e, u);
            let s = g[0] * g[0] + g[1] * g[1] + delta * delta;
            if s == 0.0 {
                continue;
            }
            let f = p * el.weight * s.powf(0.5 * p - 1.0);
            for (k, &node) in el.nodes.iter().enumerate() {
                if node != PINNED {
                    out[node] += f * (el.grad[0][k] * g[0] + el.grad[1][k] * g[1]);
                }
            }
        }
    }

    pub(crate) fn mass_gradient(&self, u: &[f64], out: &mut [f64]) {
        let q = self.q;
        for el in &self.disc.elements {
            let vals = el.nodes.map(|k| node_value(u, k));
            for &(w, c) in &el.quad[..el.nquad] {
                let m = (c[0] * vals[0] + c[1] * vals[1] + c[2] * vals[2]).max(0.0);
                let f = if q == 1.0 { w } else { q * w * m.powf(q - 1.0) };
                for (k, &node) in el.nodes.iter().enumerate() {
                    if node != PINNED {
                        out[node] += f * c[k];
                    }
                }
            }
        }
    }

    /// Stiffness matrix Σ w a_e G_eᵀ G_e with per-element weights.
    pub(crate) fn stiffness<F: Fn(usize) -> f64>(&self, weight: F) -> Skyline {
        let mut k = self.template.clone();
        k.clear();
        for (e, el) in self.disc.elements.iter().enumerate() {
            let a = weight(e) * el.weight;
            for (&slot, &(i, j)) in self.slots[e].iter().zip(&PAIRS) {
                if slot == PINNED {
                    continue;
                }
                let v = el.grad[0][i] * el.grad[0][j] + el.grad[1][i] * el.grad[1][j];
                k.add_at(slot, a * v);
            }
        }
        k
    }

    /// Consistent centroid-rule mass matrix M = Σ w c cᵀ (the q = 2 form).
    pub(crate) fn mass_matrix(&self) -> Skyline {
        let mut m = self.template.clone();
        m.clear();
        for (e, el) in self.disc.elements.iter().enumerate() {
            for &(w, c) in &el.quad[..el.nquad] {
                for (&slot, &(i, j)) in self.slots[e].iter().zip(&PAIRS) {
                    if slot != PINNED {
                        m.add_at(slot, w * c[i] * c[j]);
                    }
                }
            }
        }
        m
    }

    fn preconditioner(&self, u: &[f64], delta: f64, floor: f64) -> Result<Cholesky> {
        let p = self.p;
        if p == 2.0 {
            return self.stiffness(|_| 1.0).factor();
        }
        let grads: Vec<f64> = (0..self.disc.elements.len())
            .map(|e| {
                let g = self.gradient(e, u);
                g[0] * g[0] + g[1] * g[1]
            })
            .collect();
        let gmax = grads.iter().cloned().fold(0.0, f64::max).sqrt();
        // relative weights keep huge p from overflowing
        let reg = (floor * gmax).max(delta);
        let scale2 = (gmax * gmax + reg * reg).max(f64::MIN_POSITIVE);
        self.stiffness(|e| ((grads[e] + reg * reg) / scale2).powf(0.5 * (p - 2.0))).factor()
    }
}

fn normalize(prob: &Problem, u: &mut [f64]) -> Result<()> {
    let m = prob.mass(u);
    if !(m > 0.0 && m.is_finite()) {
        return Err(Error::Numerical("iterate collapsed to zero".into()));
    }
    let s = m.powf(-1.0 / prob.q);
    u.iter_mut().for_each(|v| *v *= s);
    Ok(())
}

/// Runs the projected preconditioned descent from `disc.initial`.
pub fn minimize(disc: &Discretization, p: f64, q: f64, cfg: &SolverConfig) -> Result<RayleighOutcome> {
    minimize_from(disc, p, q, cfg, disc.initial.clone())
}

pub fn minimize_from(
    disc: &Discretization,
    p: f64,
    q: f64,
    cfg: &SolverConfig,
    start: Vec<f64>,
) -> Result<RayleighOutcome> {
    let prob = Problem::new(disc, p, q);
    let n = disc.unknowns;
    let mut u: Vec<f64> = start.into_iter().map(|v| v.max(0.0)).collect();
    normalize(&prob, &mut u)?;

    let umax = u.iter().cloned().fold(0.0, f64::max);
    let mut delta = if p < 2.0 { cfg.delta_scale * umax / disc.mesh_h } else { 0.0 };
    let fixed = if p == 2.0 { Some(prob.preconditioner(&u, 0.0, 0.0)?) } else { None };

    let mut value = prob.energy(&u, delta);
    let mut history = vec![value];
    let mut grad = vec![0.0; n];
    let mut mgrad = vec![0.0; n];
    let mut dir = vec![0.0; n];
    let mut trial = vec![0.0; n];
    let mut residual = f64::INFINITY;
    let mut last_step = 0.0;

    for it in 1..=cfg.max_iterations {
        grad.iter_mut().for_each(|v| *v = 0.0);
        mgrad.iter_mut().for_each(|v| *v = 0.0);
        prob.energy_gradient(&u, delta, &mut grad);
        prob.mass_gradient(&u, &mut mgrad);
        // Q = 1 here, so ∇R = ∇E − (p/q) E ∇Q
        for (g, m) in grad.iter_mut().zip(&mgrad) {
            *g -= p / q * value * m;
        }
        dir.copy_from_slice(&grad);
        match &fixed {
            Some(chol) => chol.solve_in_place(&mut dir),
            None => prob.preconditioner(&u, delta, cfg.preconditioner_floor)?.solve_in_place(&mut dir),
        }
        dir.iter_mut().for_each(|d| *d *= -1.0 / p);
        let slope: f64 = grad.iter().zip(&dir).map(|(g, d)| g * d).sum();

        let mut accepted = None;
        if slope < 0.0 {
            let mut s = 1.0;
            for _ in 0..60 {
                for ((t, a), d) in trial.iter_mut().zip(&u).zip(&dir) {
                    *t = (a + s * d).max(0.0);
                }
                let m = prob.mass(&trial);
                if m > 0.0 {
                    let r = prob.energy(&trial, delta) / m.powf(p / q);
                    if r <= value + cfg.armijo * s * slope {
                        accepted = Some(r);
                        break;
                    }
                }
                s *= 0.5;
            }
        }

        let stalled = match accepted {
            Some(r) => {
                std::mem::swap(&mut u, &mut trial);
                normalize(&prob, &mut u)?;
                last_step = ((value - r) / r).abs();
                value = r;
                history.push(value);
                false
            }
            None => true,
        };

        let window = cfg.window.min(history.len() - 1);
        if window > 0 {
            let old = history[history.len() - 1 - window];
            residual = ((old - value) / value).abs();
        }
        let settled = stalled || (history.len() > cfg.window && residual < cfg.rel_tol);
        if settled {
            if delta > 0.0 {
                // anneal the smoothing away and polish on the exact energy
                delta = 0.0;
                value = prob.energy(&u, 0.0);
                history.clear();
                history.push(value);
                residual = f64::INFINITY;
                last_step = 0.0;
                continue;
            }
            if stalled {
                residual = last_step;
            }
            return Ok(RayleighOutcome { quotient: prob.quotient(&u, 0.0), u, iterations: it, residual });
        }
    }
    Err(Error::NoConvergence { iterations: cfg.max_iterations, residual })
}

/// Inverse power iteration for the p = q = 2 generalized eigenproblem
/// K u = λ M u with the centroid mass matrix.
pub fn inverse_power(disc: &Discretization, cfg: &SolverConfig) -> Result<RayleighOutcome> {
    let prob = Problem::new(disc, 2.0, 2.0);
    let k = prob.stiffness(|_| 1.0);
    let m = prob.mass_matrix();
    let chol = k.clone().factor()?;
    let n = disc.unknowns;
    let mut u = disc.initial.clone();
    let mut ku = vec![0.0; n];
    let mut mu = vec![0.0; n];
    let rayleigh = |u: &[f64], ku: &mut [f64], mu: &mut [f64]| {
        k.mul(u, ku);
        m.mul(u, mu);
        let num: f64 = u.iter().zip(ku.iter()).map(|(a, b)| a * b).sum();
        let den: f64 = u.iter().zip(mu.iter()).map(|(a, b)| a * b).sum();
        num / den
    };
    let mut history = vec![rayleigh(&u, &mut ku, &mut mu)];
    let mut residual = f64::INFINITY;
    for it in 1..=cfg.max_iterations {
        m.mul(&u, &mut mu);
        u.copy_from_slice(&mu);
        chol.solve_in_place(&mut u);
        let norm = u.iter().map(|v| v * v).sum::<f64>().sqrt();
        u.iter_mut().for_each(|v| *v /= norm);
        let value = rayleigh(&u, &mut ku, &mut mu);
        history.push(value);
        let window = cfg.window.min(history.len() - 1);
        residual = ((history[history.len() - 1 - window] - value) / value).abs();
        if history.len() > cfg.window && residual < cfg.rel_tol {
            return Ok(RayleighOutcome { quotient: value, u, iterations: it, residual });
        }
    }
    Err(Error::NoConvergence { iterations: cfg.max_iterations, residual })
}

/// The p = 2, q = 1 minimizer is the discrete torsion function K u = b with
/// b = ∇Q; the constant is 1 / (bᵀ K⁻¹ b).
pub fn torsion(disc: &Discretization) -> Result<RayleighOutcome> {
    let prob = Problem::new(disc, 2.0, 1.0);
    let chol = prob.stiffness(|_| 1.0).factor()?;
    let mut b = vec![0.0; disc.unknowns];
    prob.mass_gradient(&vec![1.0; disc.unknowns], &mut b);
    let mut u = b.clone();
    chol.solve_in_place(&mut u);
    let t: f64 = u.iter().zip(&b).map(|(x, y)| x * y).sum();
    Ok(RayleighOutcome { quotient: 1.0 / t, u, iterations: 1, residual: 0.0 })
}

#[cfg(test)]
mod tests {
    use super::super::mesh::interval;
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn interval_dirichlet_eigenvalue() {
        let d = interval(256);
        let cfg = SolverConfig::default();
        let out = minimize(&d, 2.0, 2.0, &cfg).unwrap();
        assert!((out.quotient / (PI * PI) - 1.0).abs() < 1e-4);
        assert!(out.quotient >= PI * PI);
        let inv = inverse_power(&d, &cfg).unwrap();
        assert!((inv.quotient - out.quotient).abs() < 1e-7 * out.quotient);
    }

    #[test]
    fn interval_torsion() {
        let d = interval(256);
        let t = torsion(&d).unwrap();
        let cfg = SolverConfig::default();
        let out = minimize(&d, 2.0, 1.0, &cfg).unwrap();
        assert!((t.quotient - 12.0).abs() < 1e-3);
        assert!((out.quotient - t.quotient).abs() < 1e-8 * t.quotient);
    }
}
