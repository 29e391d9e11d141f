//! Facet areas of a three-dimensional polytope given by half-spaces.

use crate::error::{invalid, Result};

use super::polygon::{clip_halfplane, shoelace};

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: [f64; 3]) -> [f64; 3] {
    let n = dot(&v, &v).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Area of each facet of `{x : <x, u_k> <= h_k}`. Every facet plane is cut
/// as a large square and clipped by the other half-spaces; a clipped facet
/// that still reaches the square's border means the polytope is unbounded.
pub fn facet_areas(normals: &[[f64; 3]], offsets: &[f64]) -> Result<Vec<f64>> {
    let reach = 1e3 * offsets.iter().map(|h| h.abs()).fold(1.0, f64::max);
    let mut areas = Vec::with_capacity(normals.len());
    for (k, (&u, &h)) in normals.iter().zip(offsets).enumerate() {
        let helper = if u[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
        let e1 = normalize(cross3(u, helper));
        let e2 = cross3(u, e1);
        let base = [u[0] * h, u[1] * h, u[2] * h];
        let mut poly = vec![[-reach, -reach], [reach, -reach], [reach, reach], [-reach, reach]];
        for (j, (&w, &g)) in normals.iter().zip(offsets).enumerate() {
            if j == k {
                continue;
            }
            let a = [dot(&e1, &w), dot(&e2, &w)];
            let rhs = g - dot(&base, &w);
            let norm = a[0].hypot(a[1]);
            if norm < 1e-14 {
                // parallel plane: either everything or nothing survives
                if rhs < 0.0 {
                    poly.clear();
                }
                continue;
            }
            poly = clip_halfplane(&poly, [a[0] / norm, a[1] / norm], rhs / norm);
            if poly.is_empty() {
                break;
            }
        }
        if poly
            .iter()
            .any(|p| p[0].abs() >= reach * (1.0 - 1e-9) || p[1].abs() >= reach * (1.0 - 1e-9))
        {
            return invalid("facet normals do not bound a polytope");
        }
        areas.push(if poly.len() >= 3 { shoelace(&poly).abs() } else { 0.0 });
    }
    Ok(areas)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_cube_faces() {
        let normals = [
            [1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, -1.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0],
        ];
        let a = facet_areas(&normals, &[0.5; 6]).unwrap();
        for area in a {
            assert!((area - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn open_prism_is_unbounded() {
        let normals = [[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, -1.0, 0.0]];
        assert!(facet_areas(&normals, &[1.0; 4]).is_err());
    }
}
