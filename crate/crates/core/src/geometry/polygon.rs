//! Planar polygons: the convex workhorse and the simple (nonconvex) outline
//! used by the appendix shapes.

use crate::error::{invalid, Result};

use super::lp;

pub type Point2 = [f64; 2];

fn cross(o: Point2, a: Point2, b: Point2) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn dist(a: Point2, b: Point2) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

pub(crate) fn shoelace(v: &[Point2]) -> f64 {
    let n = v.len();
    (0..n)
        .map(|i| {
            let (a, b) = (v[i], v[(i + 1) % n]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum::<f64>()
        * 0.5
}

fn closed_length(v: &[Point2]) -> f64 {
    let n = v.len();
    (0..n).map(|i| dist(v[i], v[(i + 1) % n])).sum()
}

/// Strictly convex polygon with counterclockwise vertices and the matching
/// half-plane description `<x, normal_k> <= offset_k` (edge k runs from
/// vertex k to vertex k+1).
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
    normals: Vec<Point2>,
    offsets: Vec<f64>,
}

impl ConvexPolygon {
    /// Validates and normalizes a vertex loop: clockwise input is reversed,
    /// repeated vertices and collinear triples are dropped. Anything that is
    /// not a simple convex loop is rejected.
    pub fn new(vertices: &[Point2]) -> Result<Self> {
        if vertices.iter().flatten().any(|c| !c.is_finite()) {
            return invalid("polygon vertices must be finite");
        }
        let scale = vertices
            .iter()
            .flat_map(|p| p.iter().map(|c| c.abs()))
            .fold(0.0f64, f64::max)
            .max(f64::MIN_POSITIVE);
        let tol = 1e-12 * scale;

        let mut v: Vec<Point2> = Vec::with_capacity(vertices.len());
        for &p in vertices {
            if v.last().is_none_or(|&q| dist(p, q) > tol) {
                v.push(p);
            }
        }
        while v.len() > 1 && dist(v[0], *v.last().unwrap()) <= tol {
            v.pop();
        }
        if v.len() < 3 {
            return invalid("polygon needs at least three distinct vertices");
        }
        let area = shoelace(&v);
        if area.abs() <= tol * scale {
            return invalid("polygon has zero area");
        }
        if area < 0.0 {
            v.reverse();
        }

        // drop collinear vertices until every turn is strict
        loop {
            let n = v.len();
            let mut removed = false;
            for i in 0..n {
                let (a, b, c) = (v[(i + n - 1) % n], v[i], v[(i + 1) % n]);
                let turn = cross(a, b, c);
                if turn.abs() <= tol * dist(a, c).max(tol) {
                    // collinear: keep only if it is a genuine reversal
                    let dot = (b[0] - a[0]) * (c[0] - b[0]) + (b[1] - a[1]) * (c[1] - b[1]);
                    if dot >= 0.0 {
                        v.remove(i);
                        removed = true;
                        break;
                    }
                }
            }
            if !removed || v.len() < 3 {
                break;
            }
        }
        if v.len() < 3 {
            return invalid("polygon degenerates to a segment");
        }

        let n = v.len();
        let mut turning = 0.0;
        for i in 0..n {
            let (a, b, c) = (v[(i + n - 1) % n], v[i], v[(i + 1) % n]);
            if cross(a, b, c) <= 0.0 {
                return invalid("polygon vertices are not in strictly convex order");
            }
            let e1 = [b[0] - a[0], b[1] - a[1]];
            let e2 = [c[0] - b[0], c[1] - b[1]];
            turning += (e1[0] * e2[1] - e1[1] * e2[0]).atan2(e1[0] * e2[0] + e1[1] * e2[1]);
        }
        if (turning - std::f64::consts::TAU).abs() > 1e-6 {
            return invalid("polygon winds more than once (self-intersecting)");
        }

        let mut normals = Vec::with_capacity(n);
        let mut offsets = Vec::with_capacity(n);
        for i in 0..n {
            let (a, b) = (v[i], v[(i + 1) % n]);
            let len = dist(a, b);
            let u = [(b[1] - a[1]) / len, -(b[0] - a[0]) / len];
            normals.push(u);
            offsets.push(u[0] * a[0] + u[1] * a[1]);
        }
        Ok(Self { vertices: v, normals, offsets })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn normals(&self) -> &[Point2] {
        &self.normals
    }

    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    pub fn area(&self) -> f64 {
        shoelace(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        closed_length(&self.vertices)
    }

    /// Signed distance to the boundary: positive inside, negative outside
    /// (outside values are the largest facet violation, not the Euclidean
    /// distance).
    pub fn facet_distance(&self, x: Point2) -> f64 {
        self.normals
            .iter()
            .zip(&self.offsets)
            .map(|(u, h)| h - (u[0] * x[0] + u[1] * x[1]))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn contains(&self, x: Point2) -> bool {
        self.facet_distance(x) >= 0.0
    }

    pub fn bbox(&self) -> (Point2, Point2) {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for p in &self.vertices {
            for d in 0..2 {
                lo[d] = lo[d].min(p[d]);
                hi[d] = hi[d].max(p[d]);
            }
        }
        (lo, hi)
    }

    pub fn scaled(&self, t: f64) -> Self {
        Self {
            vertices: self.vertices.iter().map(|p| [p[0] * t, p[1] * t]).collect(),
            normals: self.normals.clone(),
            offsets: self.offsets.iter().map(|h| h * t).collect(),
        }
    }

    /// Chebyshev center and inradius from the LP
    /// `max r  s.t.  <x, u_k> + r <= h_k`.
    pub fn chebyshev_center(&self) -> Result<(Point2, f64)> {
        let n = self.vertices.len() as f64;
        let g = self
            .vertices
            .iter()
            .fold([0.0, 0.0], |acc, p| [acc[0] + p[0] / n, acc[1] + p[1] / n]);
        // x = g + (x+ - x-), variables (x1+, x1-, x2+, x2-, r) >= 0
        let rows: Vec<Vec<f64>> =
            self.normals.iter().map(|u| vec![u[0], -u[0], u[1], -u[1], 1.0]).collect();
        let rhs: Vec<f64> = self
            .normals
            .iter()
            .zip(&self.offsets)
            .map(|(u, h)| (h - u[0] * g[0] - u[1] * g[1]).max(0.0))
            .collect();
        let (z, r) = lp::maximize(&[0.0, 0.0, 0.0, 0.0, 1.0], &rows, &rhs)?;
        Ok(([g[0] + z[0] - z[1], g[1] + z[2] - z[3]], r))
    }

    /// Vertices of the inner parallel set {d > t}: every half-plane moved
    /// inward by `t`, redundant ones drop out of the clipped loop.
    pub fn inner_parallel(&self, t: f64) -> Vec<Point2> {
        let mut poly = self.vertices.clone();
        for (u, h) in self.normals.iter().zip(&self.offsets) {
            poly = clip_halfplane(&poly, *u, h - t);
            if poly.is_empty() {
                break;
            }
        }
        poly
    }

    /// Perimeter of the inner parallel set; a set collapsed to a segment
    /// counts both sides.
    pub fn inner_parallel_perimeter(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return self.perimeter();
        }
        let poly = self.inner_parallel(t);
        if poly.len() < 2 {
            0.0
        } else {
            closed_length(&poly)
        }
    }
}

/// Sutherland–Hodgman clip of a convex loop against `<x, u> <= h`.
pub fn clip_halfplane(poly: &[Point2], u: Point2, h: f64) -> Vec<Point2> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        let fa = h - (u[0] * a[0] + u[1] * a[1]);
        let fb = h - (u[0] * b[0] + u[1] * b[1]);
        if fa >= 0.0 {
            out.push(a);
        }
        if (fa >= 0.0) != (fb >= 0.0) {
            let s = fa / (fa - fb);
            out.push([a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])]);
        }
    }
    out
}

/// Andrew's monotone chain; returns the hull counterclockwise.
pub fn convex_hull(points: &[Point2]) -> Vec<Point2> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Point2> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point2> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Closed polyline without convexity requirements.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplePolygon {
    vertices: Vec<Point2>,
}

impl SimplePolygon {
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        if vertices.len() < 3 {
            return invalid("polygon needs at least three vertices");
        }
        let mut v = vertices;
        if shoelace(&v) < 0.0 {
            v.reverse();
        }
        Ok(Self { vertices: v })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn area(&self) -> f64 {
        shoelace(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        closed_length(&self.vertices)
    }

    /// Even-odd crossing test.
    pub fn contains(&self, x: Point2) -> bool {
        let v = &self.vertices;
        let n = v.len();
        let mut inside = false;
        let mut j = n - 1;
        for i in 0..n {
            let (a, b) = (v[i], v[j]);
            if (a[1] > x[1]) != (b[1] > x[1]) {
                let xc = a[0] + (x[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
                if x[0] < xc {
                    inside = !inside;
                }
            }
            j = i;
        }
        inside
    }

    pub fn boundary_distance(&self, x: Point2) -> f64 {
        let v = &self.vertices;
        let n = v.len();
        (0..n)
            .map(|i| segment_distance(x, v[i], v[(i + 1) % n]))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn scaled(&self, t: f64) -> Self {
        Self { vertices: self.vertices.iter().map(|p| [p[0] * t, p[1] * t]).collect() }
    }
}

pub fn segment_distance(x: Point2, a: Point2, b: Point2) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let len2 = d[0] * d[0] + d[1] * d[1];
    let s = if len2 > 0.0 {
        (((x[0] - a[0]) * d[0] + (x[1] - a[1]) * d[1]) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    dist(x, [a[0] + s * d[0], a[1] + s * d[1]])
}
