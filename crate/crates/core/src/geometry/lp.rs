//! Dense simplex for the tiny linear programs behind the Chebyshev center.

use crate::error::{Error, Result};

/// Maximizes `c·z` subject to `A z <= b`, `z >= 0`, with `b >= 0` so the
/// slack basis is feasible. Bland's rule rules out cycling.
pub fn maximize(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Result<(Vec<f64>, f64)> {
    let m = a.len();
    let n = c.len();
    if b.iter().any(|&v| v < 0.0) {
        return Err(Error::Numerical("simplex needs a nonnegative right-hand side".into()));
    }
    // tableau rows: [A | I | b], objective row last: [-c | 0 | 0]
    let width = n + m + 1;
    let mut t = vec![vec![0.0; width]; m + 1];
    for i in 0..m {
        t[i][..n].copy_from_slice(&a[i]);
        t[i][n + i] = 1.0;
        t[i][width - 1] = b[i];
    }
    for j in 0..n {
        t[m][j] = -c[j];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    let eps = 1e-12;

    for _ in 0..10_000 {
        let Some(enter) = (0..n + m).find(|&j| t[m][j] < -eps) else {
            let mut z = vec![0.0; n];
            for (i, &bv) in basis.iter().enumerate() {
                if bv < n {
                    z[bv] = t[i][width - 1];
                }
            }
            return Ok((z, t[m][width - 1]));
        };
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            let piv = t[i][enter];
            if piv > eps {
                let ratio = t[i][width - 1] / piv;
                match leave {
                    Some((li, lr))
                        if ratio > lr + eps || (ratio > lr - eps && basis[i] > basis[li]) => {}
                    _ => leave = Some((i, ratio)),
                }
            }
        }
        let Some((row, _)) = leave else {
            return Err(Error::Numerical("linear program is unbounded".into()));
        };
        let piv = t[row][enter];
        for v in t[row].iter_mut() {
            *v /= piv;
        }
        let pivot_row = t[row].clone();
        for (i, r) in t.iter_mut().enumerate() {
            if i != row {
                let f = r[enter];
                if f != 0.0 {
                    for (x, p) in r.iter_mut().zip(&pivot_row) {
                        *x -= f * p;
                    }
                }
            }
        }
        basis[row] = enter;
    }
    Err(Error::Numerical("simplex iteration limit reached".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_problem() {
        // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36
        let (z, v) = maximize(
            &[3.0, 5.0],
            &[vec![1.0, 0.0], vec![0.0, 2.0], vec![3.0, 2.0]],
            &[4.0, 12.0, 18.0],
        )
        .unwrap();
        assert!((v - 36.0).abs() < 1e-12);
        assert!((z[0] - 2.0).abs() < 1e-12 && (z[1] - 6.0).abs() < 1e-12);
    }

    #[test]
    fn unbounded_is_reported() {
        assert!(maximize(&[1.0], &[vec![-1.0]], &[1.0]).is_err());
    }
}
