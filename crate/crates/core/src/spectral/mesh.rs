//! P1 discretizations: the unit interval, radial profiles on the unit ball
//! and uniform triangulated grids on planar bodies.
//!
//! Each element carries a constant gradient operator and a short quadrature
//! rule for the Lq term. Triangles and intervals use the one-point centroid
//! rule, which by Jensen never overestimates ∫ u^q for q ≥ 1; together with
//! conforming elements this keeps the discrete quotient above the continuum
//! constant and makes it decrease under mesh halving.

use crate::error::{Error, Result};
use crate::geometry::{ConvexBody, Point2, Shape};
use crate::special::unit_ball_volume;

pub(crate) const PINNED: usize = usize::MAX;

#[derive(Debug, Clone)]
pub struct Element {
    pub nodes: [usize; 3],
    /// Gradient component c is Σ_k grad[c][k] · u[nodes[k]].
    pub grad: [[f64; 3]; 2],
    pub weight: f64,
    pub quad: [(f64, [f64; 3]); 3],
    pub nquad: usize,
}

#[derive(Debug, Clone)]
pub struct Discretization {
    pub unknowns: usize,
    pub elements: Vec<Element>,
    pub grad_dim: usize,
    pub mesh_h: f64,
    pub initial: Vec<f64>,
    /// Coordinates of the unknowns (planar grids only).
    pub coords: Vec<Point2>,
}

impl Discretization {
    /// Envelope start of every row of the stiffness matrix.
    pub fn envelope(&self) -> Vec<usize> {
        let mut first: Vec<usize> = (0..self.unknowns).collect();
        for e in &self.elements {
            let lo = e.nodes.iter().filter(|&&k| k != PINNED).min().copied();
            if let Some(lo) = lo {
                for &k in e.nodes.iter().filter(|&&k| k != PINNED) {
                    first[k] = first[k].min(lo);
                }
            }
        }
        first
    }
}

/// Uniform partition of (0, 1) into `cells` cells, zero at both ends.
pub fn interval(cells: usize) -> Discretization {
    let h = 1.0 / cells as f64;
    let unknown = |k: usize| if k == 0 || k == cells { PINNED } else { k - 1 };
    let elements = (0..cells)
        .map(|c| Element {
            nodes: [unknown(c), unknown(c + 1), PINNED],
            grad: [[-1.0 / h, 1.0 / h, 0.0], [0.0; 3]],
            weight: h,
            quad: [(h, [0.5, 0.5, 0.0]), (0.0, [0.0; 3]), (0.0, [0.0; 3])],
            nquad: 1,
        })
        .collect();
    let initial = (1..cells).map(|k| (k as f64 * h).min(1.0 - k as f64 * h)).collect();
    Discretization { unknowns: cells - 1, elements, grad_dim: 1, mesh_h: h, initial, coords: Vec::new() }
}

/// Radial profiles f on [0, 1] with f(1) = 0 and weight N ω_N t^{N−1}.
/// Energy weights are exact; the Lq term uses three-point Gauss per cell.
pub fn radial(dim: usize, cells: usize) -> Discretization {
    let h = 1.0 / cells as f64;
    let w = unit_ball_volume(dim);
    let sphere = dim as f64 * w;
    let gauss = [(-(0.6f64).sqrt(), 5.0 / 9.0), (0.0, 8.0 / 9.0), ((0.6f64).sqrt(), 5.0 / 9.0)];
    let unknown = |k: usize| if k == cells { PINNED } else { k };
    let elements = (0..cells)
        .map(|c| {
            let (a, b) = (c as f64 * h, (c + 1) as f64 * h);
            let mut quad = [(0.0, [0.0; 3]); 3];
            for (slot, (x, gw)) in quad.iter_mut().zip(gauss) {
                let xi = 0.5 * (1.0 + x);
                let t = a + xi * h;
                *slot = (sphere * 0.5 * h * gw * t.powi(dim as i32 - 1), [1.0 - xi, xi, 0.0]);
            }
            Element {
                nodes: [unknown(c), unknown(c + 1), PINNED],
                grad: [[-1.0 / h, 1.0 / h, 0.0], [0.0; 3]],
                weight: w * (b.powi(dim as i32) - a.powi(dim as i32)),
                quad,
                nquad: 3,
            }
        })
        .collect();
    let initial = (0..cells).map(|k| 1.0 - k as f64 * h).collect();
    Discretization { unknowns: cells, elements, grad_dim: 1, mesh_h: h, initial, coords: Vec::new() }
}

/// Grid step actually used for a body: slit squares snap the step so every
/// slit and slit tip lies on grid lines.
pub fn effective_step(body: &ConvexBody, mesh_h: f64) -> f64 {
    match body.shape() {
        Shape::SlitSquare { n, side } => {
            let cell = side / *n as f64;
            cell / (cell / mesh_h * (1.0 - 1e-12)).ceil()
        }
        _ => mesh_h,
    }
}

fn triangle_element(nodes: [usize; 3], pts: [Point2; 3]) -> Option<Element> {
    let twice = (pts[1][0] - pts[0][0]) * (pts[2][1] - pts[0][1]) - (pts[2][0] - pts[0][0]) * (pts[1][1] - pts[0][1]);
    if twice <= 0.0 {
        return None;
    }
    let mut grad = [[0.0; 3]; 2];
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        grad[0][i] = (pts[j][1] - pts[k][1]) / twice;
        grad[1][i] = (pts[k][0] - pts[j][0]) / twice;
    }
    let area = 0.5 * twice;
    Some(Element {
        nodes,
        grad,
        weight: area,
        quad: [(area, [1.0 / 3.0; 3]), (0.0, [0.0; 3]), (0.0, [0.0; 3])],
        nquad: 1,
    })
}

/// Triangulated uniform grid on a planar body; every cell is split along the
/// same diagonal.
///
/// Convex bodies get a boundary-fitted grid: nodes strictly inside are
/// unknowns, and outside nodes of triangles touching an unknown are pulled
/// onto ∂Ω along the ray to the incenter. Every kept triangle then has its
/// vertices in the closed body, so it lies in Ω and the discrete space stays
/// conforming. Triangles that would degenerate pin their interior vertices
/// instead. Slit squares use the plain grid (slits lie on grid lines and
/// their nodes are pinned); the perturbed ball keeps only triangles whose
/// circumscribing disk about the centroid fits inside.
pub fn planar(body: &ConvexBody, mesh_h: f64) -> Result<Discretization> {
    if !(mesh_h.is_finite() && mesh_h > 0.0) {
        return Err(Error::InvalidParameter(format!("mesh_h must be positive, got {mesh_h}")));
    }
    let (lo, hi) = body.planar_bbox().ok_or_else(|| {
        Error::Unsupported(format!("planar solver needs a planar body, got {}-d {}", body.dim(), body.kind().name()))
    })?;
    let h = effective_step(body, mesh_h);
    let r = body.metrics().inradius;
    if 2.0 * r / h < 8.0 {
        return Err(Error::MeshTooCoarse(format!(
            "h = {h:.3e} leaves fewer than 8 nodes across the inscribed disk (inradius {r:.3e}); use h <= {:.3e}",
            r / 4.0
        )));
    }
    let nx = ((hi[0] - lo[0]) / h - 1e-9).ceil() as usize;
    let ny = ((hi[1] - lo[1]) / h - 1e-9).ceil() as usize;
    let (sx, sy) = (nx + 1, ny + 1);
    let point = |i: usize, j: usize| [lo[0] + i as f64 * h, lo[1] + j as f64 * h];
    let node = |i: usize, j: usize| i * sy + j;
    let cell_nodes = |i: usize, j: usize, upper: bool| {
        if upper {
            [node(i, j), node(i + 1, j + 1), node(i, j + 1)]
        } else {
            [node(i, j), node(i + 1, j), node(i + 1, j + 1)]
        }
    };

    let mut depth = vec![0.0; sx * sy];
    let mut pos = vec![[0.0; 2]; sx * sy];
    for i in 0..sx {
        for j in 0..sy {
            let x = point(i, j);
            depth[node(i, j)] = body.depth(&x)?;
            pos[node(i, j)] = x;
        }
    }
    let pin = 1e-9 * h;
    let mut free: Vec<bool> = depth.iter().map(|&d| d > pin).collect();

    match body.shape() {
        Shape::SlitSquare { .. } => {}
        Shape::PerturbedBall { .. } => {
            // a node stays free only if its six triangles pass the disk test
            let mut fits = vec![false; nx * ny * 2];
            for i in 0..nx {
                for j in 0..ny {
                    for upper in [false, true] {
                        let pts = cell_nodes(i, j, upper).map(|k| pos[k]);
                        let c = [
                            (pts[0][0] + pts[1][0] + pts[2][0]) / 3.0,
                            (pts[0][1] + pts[1][1] + pts[2][1]) / 3.0,
                        ];
                        let reach = pts.iter().map(|p| (p[0] - c[0]).hypot(p[1] - c[1])).fold(0.0, f64::max);
                        fits[(i * ny + j) * 2 + upper as usize] = body.depth(&c)? >= reach;
                    }
                }
            }
            let ok = |i: isize, j: isize, upper: bool| {
                i >= 0 && j >= 0 && i < nx as isize && j < ny as isize && fits[(i as usize * ny + j as usize) * 2 + upper as usize]
            };
            for i in 0..sx {
                for j in 0..sy {
                    let (a, b) = (i as isize, j as isize);
                    let around = ok(a, b, false)
                        && ok(a - 1, b, false)
                        && ok(a - 1, b - 1, false)
                        && ok(a, b, true)
                        && ok(a, b - 1, true)
                        && ok(a - 1, b - 1, true);
                    free[node(i, j)] &= around;
                }
            }
        }
        _ => {
            let c = &body.metrics().incenter;
            for k in 0..sx * sy {
                if depth[k] < 0.0 {
                    let rel = [pos[k][0] - c[0], pos[k][1] - c[1]];
                    let g = body.gauge(&rel)?;
                    pos[k] = [c[0] + rel[0] / g, c[1] + rel[1] / g];
                }
            }
            let min_twice = 1e-3 * h * h;
            loop {
                let mut changed = false;
                for i in 0..nx {
                    for j in 0..ny {
                        for upper in [false, true] {
                            let v = cell_nodes(i, j, upper);
                            if !v.iter().any(|&k| free[k]) {
                                continue;
                            }
                            let p = v.map(|k| pos[k]);
                            let twice = (p[1][0] - p[0][0]) * (p[2][1] - p[0][1])
                                - (p[2][0] - p[0][0]) * (p[1][1] - p[0][1]);
                            if twice < min_twice {
                                for k in v {
                                    changed |= free[k];
                                    free[k] = false;
                                }
                            }
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
        }
    }

    // number the unknowns with the inner loop along the short axis so the
    // stiffness envelope stays narrow
    let short_y = ny <= nx;
    let mut index = vec![PINNED; sx * sy];
    let mut coords = Vec::new();
    let mut initial = Vec::new();
    let (outer, inner) = if short_y { (sx, sy) } else { (sy, sx) };
    for a in 0..outer {
        for b in 0..inner {
            let k = if short_y { node(a, b) } else { node(b, a) };
            if free[k] {
                index[k] = coords.len();
                coords.push(pos[k]);
                initial.push(depth[k]);
            }
        }
    }
    if coords.is_empty() {
        return Err(Error::MeshTooCoarse(format!("no interior grid nodes at h = {h:.3e}")));
    }

    let mut elements = Vec::new();
    for i in 0..nx {
        for j in 0..ny {
            for upper in [false, true] {
                let v = cell_nodes(i, j, upper);
                let ids = v.map(|k| index[k]);
                if ids.iter().all(|&k| k == PINNED) {
                    continue;
                }
                let el = triangle_element(ids, v.map(|k| pos[k]))
                    .ok_or_else(|| Error::Numerical("inverted triangle in the fitted grid".into()))?;
                elements.push(el);
            }
        }
    }
    Ok(Discretization { unknowns: coords.len(), elements, grad_dim: 2, mesh_h: h, initial, coords })
}
