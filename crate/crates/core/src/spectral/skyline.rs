//! Symmetric positive definite matrices in envelope (skyline) storage with
//! an in-place Cholesky factorization.

use crate::error::{Error, Result};

/// Lower triangle stored row by row: row `i` keeps columns `first[i]..=i`.
#[derive(Debug, Clone)]
pub struct Skyline {
    first: Vec<usize>,
    start: Vec<usize>,
    values: Vec<f64>,
}

impl Skyline {
    pub fn new(first: Vec<usize>) -> Self {
        let mut start = Vec::with_capacity(first.len() + 1);
        let mut acc = 0;
        for (i, &f) in first.iter().enumerate() {
            assert!(f <= i, "envelope must stay in the lower triangle");
            start.push(acc);
            acc += i - f + 1;
        }
        start.push(acc);
        Self { first, start, values: vec![0.0; acc] }
    }

    pub fn dim(&self) -> usize {
        self.first.len()
    }

    /// Storage slot of entry (i, j), j <= i, inside the envelope.
    pub fn slot(&self, i: usize, j: usize) -> usize {
        debug_assert!(j <= i && j >= self.first[i]);
        self.start[i] + (j - self.first[i])
    }

    pub fn clear(&mut self) {
        self.values.iter_mut().for_each(|v| *v = 0.0);
    }

    pub fn add_at(&mut self, slot: usize, v: f64) {
        self.values[slot] += v;
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        if j < self.first[i] {
            0.0
        } else {
            self.values[self.slot(i, j)]
        }
    }

    /// y = A x using the symmetric envelope.
    pub fn mul(&self, x: &[f64], y: &mut [f64]) {
        y.iter_mut().for_each(|v| *v = 0.0);
        for i in 0..self.dim() {
            let row = &self.values[self.start[i]..self.start[i + 1]];
            let f = self.first[i];
            let diag = row[row.len() - 1];
            let mut acc = diag * x[i];
            for (k, &a) in row[..row.len() - 1].iter().enumerate() {
                acc += a * x[f + k];
                y[f + k] += a * x[i];
            }
            y[i] += acc;
        }
    }

    /// Overwrites the envelope with its Cholesky factor L (A = L Lᵀ).
    pub fn factor(mut self) -> Result<Cholesky> {
        let n = self.dim();
        for i in 0..n {
            let fi = self.first[i];
            for j in fi..=i {
                let fj = self.first[j];
                let lo = fi.max(fj);
                let mut s = self.values[self.start[i] + (j - fi)];
                let ri = self.start[i] + (lo - fi);
                let rj = self.start[j] + (lo - fj);
                let len = j - lo;
                let (a, b) = (&self.values[ri..ri + len], &self.values[rj..rj + len]);
                s -= a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
                if j == i {
                    if !(s > 0.0) {
                        return Err(Error::Numerical(format!("matrix not positive definite at row {i}")));
                    }
                    self.values[self.start[i] + (i - fi)] = s.sqrt();
                } else {
                    let d = self.values[self.start[j] + (j - fj)];
                    self.values[self.start[i] + (j - fi)] = s / d;
                }
            }
        }
        Ok(Cholesky { l: self })
    }
}

#[derive(Debug, Clone)]
pub struct Cholesky {
    l: Skyline,
}

impl Cholesky {
    pub fn solve_in_place(&self, x: &mut [f64]) {
        let l = &self.l;
        let n = l.dim();
        for i in 0..n {
            let f = l.first[i];
            let row = &l.values[l.start[i]..l.start[i + 1]];
            let s: f64 = row[..row.len() - 1].iter().zip(&x[f..i]).map(|(a, b)| a * b).sum();
            x[i] = (x[i] - s) / row[row.len() - 1];
        }
        for i in (0..n).rev() {
            let f = l.first[i];
            let row = &l.values[l.start[i]..l.start[i + 1]];
            x[i] /= row[row.len() - 1];
            let xi = x[i];
            for (k, a) in row[..row.len() - 1].iter().enumerate() {
                x[f + k] -= a * xi;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tridiagonal_solve() {
        let n: usize = 6;
        let first: Vec<usize> = (0..n).map(|i| i.saturating_sub(1)).collect();
        let mut a = Skyline::new(first);
        for i in 0..n {
            let s = a.slot(i, i);
            a.add_at(s, 2.0);
            if i > 0 {
                let s = a.slot(i, i - 1);
                a.add_at(s, -1.0);
            }
        }
        let x: Vec<f64> = (0..n).map(|i| (i as f64 + 1.0).sin()).collect();
        let mut b = vec![0.0; n];
        a.mul(&x, &mut b);
        let chol = a.factor().unwrap();
        chol.solve_in_place(&mut b);
        for (u, v) in b.iter().zip(&x) {
            assert!((u - v).abs() < 1e-13);
        }
    }

    #[test]
    fn ragged_envelope() {
        // dense SPD matrix with a hole pattern the envelope must honor
        let first = vec![0, 0, 1, 0];
        let mut a = Skyline::new(first);
        let entries = [(0, 0, 4.0), (1, 0, 1.0), (1, 1, 3.0), (2, 1, 0.5), (2, 2, 2.0), (3, 0, 0.2), (3, 3, 5.0)];
        for (i, j, v) in entries {
            let s = a.slot(i, j);
            a.add_at(s, v);
        }
        let x = [1.0, -2.0, 0.5, 3.0];
        let mut b = [0.0; 4];
        a.mul(&x, &mut b);
        assert!((b[0] - (4.0 - 2.0 + 0.6)).abs() < 1e-15);
        let chol = a.factor().unwrap();
        chol.solve_in_place(&mut b);
        for (u, v) in b.iter().zip(&x) {
            assert!((u - v).abs() < 1e-13);
        }
    }

    #[test]
    fn indefinite_rejected() {
        let mut a = Skyline::new(vec![0, 0]);
        for (i, j, v) in [(0, 0, 1.0), (1, 0, 2.0), (1, 1, 1.0)] {
            let s = a.slot(i, j);
            a.add_at(s, v);
        }
        assert!(a.factor().is_err());
    }
}
