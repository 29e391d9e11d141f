//! Body descriptors, validated bodies and their geometric queries.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::special::{beta_fn, unit_ball_volume};

use super::inradius::maximize_distance;
use super::polygon::{clip_halfplane, segment_distance, ConvexPolygon, Point2, SimplePolygon};
use super::polytope::facet_areas;

/// JSON-facing description of a body; `build_body` validates it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BodyDescriptor {
    Polygon {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<usize>,
        vertices: Vec<[f64; 2]>,
    },
    Ball {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        center: Option<Vec<f64>>,
        radius: f64,
    },
    Box {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        center: Option<Vec<f64>>,
        half_widths: Vec<f64>,
    },
    Slab {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<usize>,
        #[serde(rename = "L")]
        length: f64,
    },
    ThinCone {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<usize>,
        eps: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        base_radius: Option<f64>,
    },
    TangentPolytope {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<usize>,
        normals: Vec<Vec<f64>>,
        radius: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        center: Option<Vec<f64>>,
    },
    SlitSquare {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<usize>,
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        side: Option<f64>,
    },
    PerturbedBall {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<usize>,
        k: usize,
        amplitude: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        radius: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BodyKind {
    Polygon,
    Ball,
    Box,
    Slab,
    ThinCone,
    TangentPolytope,
    SlitSquare,
    PerturbedBall,
}

impl BodyKind {
    pub fn name(self) -> &'static str {
        match self {
            BodyKind::Polygon => "polygon",
            BodyKind::Ball => "ball",
            BodyKind::Box => "box",
            BodyKind::Slab => "slab",
            BodyKind::ThinCone => "thin_cone",
            BodyKind::TangentPolytope => "tangent_polytope",
            BodyKind::SlitSquare => "slit_square",
            BodyKind::PerturbedBall => "perturbed_ball",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometricSummary {
    pub volume: f64,
    pub perimeter: f64,
    pub inradius: f64,
    pub incenter: Vec<f64>,
    pub convex: bool,
    pub exact: bool,
}

/// Distance to the boundary; points outside (or on a slit) report zero with
/// `inside = false`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryDistance {
    pub value: f64,
    pub inside: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Polygon(ConvexPolygon),
    Ball { center: Vec<f64>, radius: f64 },
    Box { center: Vec<f64>, half_widths: Vec<f64> },
    /// Stored as its box; `length` is the descriptor parameter.
    Slab { length: f64, center: Vec<f64>, half_widths: Vec<f64> },
    /// `{|x| < b, 0 < y < eps (b - |x|)}`; planar cones carry their triangle.
    ThinCone { eps: f64, base_radius: f64, triangle: Option<ConvexPolygon> },
    TangentPolytope {
        normals: Vec<Vec<f64>>,
        radius: f64,
        center: Vec<f64>,
        polygon: Option<ConvexPolygon>,
    },
    SlitSquare { n: usize, side: f64 },
    PerturbedBall { k: usize, amplitude: f64, radius: f64, outline: SimplePolygon },
}

/// A validated body together with its geometric summary.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexBody {
    dim: usize,
    shape: Shape,
    summary: GeometricSummary,
}

fn check_dim(given: Option<usize>, implied: usize, what: &str) -> Result<usize> {
    match given {
        Some(d) if d != implied => invalid(format!("{what}: dim {d} does not match {implied} coordinates")),
        _ => Ok(implied),
    }
}

fn positive(v: f64, what: &str) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        invalid(format!("{what} must be positive and finite, got {v}"))
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn box_perimeter(half: &[f64]) -> f64 {
    (0..half.len())
        .map(|i| 2.0 * half.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, a)| 2.0 * a).product::<f64>())
        .sum()
}

fn box_summary(center: &[f64], half: &[f64]) -> GeometricSummary {
    GeometricSummary {
        volume: half.iter().map(|a| 2.0 * a).product(),
        perimeter: box_perimeter(half),
        inradius: half.iter().cloned().fold(f64::INFINITY, f64::min),
        incenter: center.to_vec(),
        convex: true,
        exact: true,
    }
}

fn polygon_summary(poly: &ConvexPolygon) -> Result<GeometricSummary> {
    let (c, r) = poly.chebyshev_center()?;
    Ok(GeometricSummary {
        volume: poly.area(),
        perimeter: poly.perimeter(),
        inradius: r,
        incenter: c.to_vec(),
        convex: true,
        exact: true,
    })
}

fn cone_triangle(eps: f64, b: f64) -> Result<ConvexPolygon> {
    ConvexPolygon::new(&[[-b, 0.0], [b, 0.0], [0.0, eps * b]])
}

fn slit_segments(n: usize, side: f64) -> impl Iterator<Item = (Point2, Point2)> {
    let top = side * (1.0 - 1.0 / n as f64);
    (1..n).map(move |i| {
        let x = side * i as f64 / n as f64;
        ([x, 0.0], [x, top])
    })
}

fn slit_distance(n: usize, side: f64, x: Point2) -> BoundaryDistance {
    let walls = x[0].min(side - x[0]).min(x[1]).min(side - x[1]);
    if walls <= 0.0 {
        return BoundaryDistance { value: 0.0, inside: false };
    }
    let d = slit_segments(n, side).map(|(a, b)| segment_distance(x, a, b)).fold(walls, f64::min);
    BoundaryDistance { value: d, inside: d > 0.0 }
}

fn perturbed_outline(k: usize, amplitude: f64, radius: f64) -> Result<SimplePolygon> {
    let m = (64 * k).max(512);
    let pts = (0..m)
        .map(|i| {
            let th = std::f64::consts::TAU * i as f64 / m as f64;
            let rho = radius * (1.0 + amplitude * (k as f64 * th).sin());
            [rho * th.cos(), rho * th.sin()]
        })
        .collect();
    SimplePolygon::new(pts)
}

/// Clips a large square by the half-planes `<x - c, u_k> <= R`.
fn tangent_polygon(normals: &[Vec<f64>], radius: f64, center: &[f64]) -> Result<ConvexPolygon> {
    let reach = 1e3 * (radius + norm(center));
    let mut poly: Vec<Point2> = vec![
        [center[0] - reach, center[1] - reach],
        [center[0] + reach, center[1] - reach],
        [center[0] + reach, center[1] + reach],
        [center[0] - reach, center[1] + reach],
    ];
    for u in normals {
        poly = clip_halfplane(&poly, [u[0], u[1]], radius + dot(u, center));
    }
    let touches = poly.iter().any(|p| {
        (p[0] - center[0]).abs() >= reach * (1.0 - 1e-9) || (p[1] - center[1]).abs() >= reach * (1.0 - 1e-9)
    });
    if touches {
        return invalid("tangent polytope normals do not span the plane (unbounded)");
    }
    ConvexPolygon::new(&poly)
}

pub fn build_body(desc: &BodyDescriptor) -> Result<ConvexBody> {
    match desc {
        BodyDescriptor::Polygon { dim, vertices } => {
            check_dim(*dim, 2, "polygon")?;
            ConvexBody::from_polygon(ConvexPolygon::new(vertices)?)
        }
        BodyDescriptor::Ball { dim, center, radius } => {
            let n = match (dim, center) {
                (_, Some(c)) => check_dim(*dim, c.len(), "ball center")?,
                (Some(d), None) => *d,
                (None, None) => 2,
            };
            let c = center.clone().unwrap_or_else(|| vec![0.0; n]);
            ConvexBody::ball_at(c, *radius)
        }
        BodyDescriptor::Box { dim, center, half_widths } => {
            let n = check_dim(*dim, half_widths.len(), "box half_widths")?;
            let c = match center {
                Some(c) => {
                    check_dim(Some(n), c.len(), "box center")?;
                    c.clone()
                }
                None => vec![0.0; n],
            };
            ConvexBody::box_at(c, half_widths.clone())
        }
        BodyDescriptor::Slab { dim, length } => ConvexBody::slab(dim.unwrap_or(2), *length),
        BodyDescriptor::ThinCone { dim, eps, base_radius } => {
            ConvexBody::thin_cone_with_base(dim.unwrap_or(2), *eps, base_radius.unwrap_or(1.0))
        }
        BodyDescriptor::TangentPolytope { dim, normals, radius, center } => {
            let n = normals.first().map(|u| u.len()).unwrap_or(0);
            let n = check_dim(*dim, n, "tangent_polytope normals")?;
            let c = center.clone().unwrap_or_else(|| vec![0.0; n]);
            ConvexBody::tangent_polytope(normals.clone(), *radius, c)
        }
        BodyDescriptor::SlitSquare { dim, n, side } => {
            check_dim(*dim, 2, "slit_square")?;
            ConvexBody::slit_square_with_side(*n, side.unwrap_or(1.0))
        }
        BodyDescriptor::PerturbedBall { dim, k, amplitude, radius } => {
            check_dim(*dim, 2, "perturbed_ball")?;
            ConvexBody::perturbed_ball_with_radius(*k, *amplitude, radius.unwrap_or(1.0))
        }
    }
}

impl ConvexBody {
    pub fn from_polygon(poly: ConvexPolygon) -> Result<Self> {
        let summary = polygon_summary(&poly)?;
        Ok(Self { dim: 2, shape: Shape::Polygon(poly), summary })
    }

    pub fn polygon(vertices: &[Point2]) -> Result<Self> {
        Self::from_polygon(ConvexPolygon::new(vertices)?)
    }

    pub fn unit_square() -> Self {
        Self::polygon(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).expect("unit square is valid")
    }

    /// Axis rectangle `[0, w] x [0, h]` as a polygon.
    pub fn rectangle(w: f64, h: f64) -> Result<Self> {
        Self::polygon(&[[0.0, 0.0], [w, 0.0], [w, h], [0.0, h]])
    }

    pub fn ball(dim: usize, radius: f64) -> Result<Self> {
        Self::ball_at(vec![0.0; dim], radius)
    }

    pub fn ball_at(center: Vec<f64>, radius: f64) -> Result<Self> {
        let n = center.len();
        if n < 2 {
            return invalid("ball dimension must be at least 2");
        }
        if center.iter().any(|c| !c.is_finite()) {
            return invalid("ball center must be finite");
        }
        let r = positive(radius, "ball radius")?;
        let w = unit_ball_volume(n);
        let summary = GeometricSummary {
            volume: w * r.powi(n as i32),
            perimeter: n as f64 * w * r.powi(n as i32 - 1),
            inradius: r,
            incenter: center.clone(),
            convex: true,
            exact: true,
        };
        Ok(Self { dim: n, shape: Shape::Ball { center, radius: r }, summary })
    }

    pub fn box_at(center: Vec<f64>, half_widths: Vec<f64>) -> Result<Self> {
        let n = half_widths.len();
        if n < 2 {
            return invalid("box dimension must be at least 2");
        }
        for &a in &half_widths {
            positive(a, "box half-width")?;
        }
        let summary = box_summary(&center, &half_widths);
        Ok(Self { dim: n, shape: Shape::Box { center, half_widths }, summary })
    }

    /// `(-L/2, L/2)^{N-1} x (0, 1)`.
    pub fn slab(dim: usize, length: f64) -> Result<Self> {
        if dim < 2 {
            return invalid("slab dimension must be at least 2");
        }
        let l = positive(length, "slab L")?;
        let mut half = vec![l / 2.0; dim];
        half[dim - 1] = 0.5;
        let mut center = vec![0.0; dim];
        center[dim - 1] = 0.5;
        let summary = box_summary(&center, &half);
        Ok(Self { dim, shape: Shape::Slab { length: l, center, half_widths: half }, summary })
    }

    pub fn thin_cone(dim: usize, eps: f64) -> Result<Self> {
        Self::thin_cone_with_base(dim, eps, 1.0)
    }

    pub fn thin_cone_with_base(dim: usize, eps: f64, base_radius: f64) -> Result<Self> {
        if dim < 2 {
            return invalid("thin cone dimension must be at least 2");
        }
        let eps = positive(eps, "thin cone eps")?;
        let b = positive(base_radius, "thin cone base radius")?;
        let slant = (1.0 + eps * eps).sqrt();
        let r = eps * b / (1.0 + slant);
        let (triangle, summary) = if dim == 2 {
            let t = cone_triangle(eps, b)?;
            let mut s = polygon_summary(&t)?;
            // the axial incenter is exact; the LP agrees to rounding
            s.inradius = r;
            s.incenter = vec![0.0, r];
            (Some(t), s)
        } else {
            let m = dim - 1;
            let wm = unit_ball_volume(m);
            let mut incenter = vec![0.0; dim];
            incenter[dim - 1] = r;
            let s = GeometricSummary {
                volume: eps * b.powi(dim as i32) * m as f64 * wm * beta_fn(m as f64, 2.0),
                perimeter: wm * b.powi(m as i32) * (1.0 + slant),
                inradius: r,
                incenter,
                convex: true,
                exact: true,
            };
            (None, s)
        };
        Ok(Self { dim, shape: Shape::ThinCone { eps, base_radius: b, triangle }, summary })
    }

    /// Polytope `{<x - c, u_k> <= R}`; the normals are normalized here.
    pub fn tangent_polytope(normals: Vec<Vec<f64>>, radius: f64, center: Vec<f64>) -> Result<Self> {
        let n = center.len();
        if !(2..=3).contains(&n) {
            return Err(Error::Unsupported(format!("tangent polytopes are built in dimension 2 or 3, not {n}")));
        }
        let r = positive(radius, "tangent polytope radius")?;
        if normals.len() <= n {
            return invalid("tangent polytope needs more than N facet normals to be bounded");
        }
        let mut unit = Vec::with_capacity(normals.len());
        for u in &normals {
            if u.len() != n {
                return invalid("tangent polytope normals have inconsistent dimension");
            }
            let l = norm(u);
            if !(l.is_finite() && l > 0.0) {
                return invalid("tangent polytope normal is zero");
            }
            unit.push(u.iter().map(|x| x / l).collect::<Vec<f64>>());
        }
        let (polygon, volume, perimeter) = if n == 2 {
            let poly = tangent_polygon(&unit, r, &center)?;
            let (a, p) = (poly.area(), poly.perimeter());
            (Some(poly), a, p)
        } else {
            let normals3: Vec<[f64; 3]> = unit.iter().map(|u| [u[0], u[1], u[2]]).collect();
            let offsets: Vec<f64> = unit.iter().map(|u| r + dot(u, &center)).collect();
            let areas = facet_areas(&normals3, &offsets)?;
            let p: f64 = areas.iter().sum();
            (None, p * r / 3.0, p)
        };
        let summary = GeometricSummary {
            volume,
            perimeter,
            inradius: r,
            incenter: center.clone(),
            convex: true,
            exact: true,
        };
        Ok(Self { dim: n, shape: Shape::TangentPolytope { normals: unit, radius: r, center, polygon }, summary })
    }

    pub fn slit_square(n: usize) -> Result<Self> {
        Self::slit_square_with_side(n, 1.0)
    }

    pub fn slit_square_with_side(n: usize, side: f64) -> Result<Self> {
        if n < 2 {
            return invalid("slit square needs at least 2 columns (n >= 2)");
        }
        let s = positive(side, "slit square side")?;
        let (c, r) = maximize_distance([0.0, 0.0], [s, s], |x| slit_distance(n, s, x).value);
        let summary = GeometricSummary {
            volume: s * s,
            perimeter: 4.0 * s,
            inradius: r,
            incenter: c.to_vec(),
            convex: false,
            exact: false,
        };
        Ok(Self { dim: 2, shape: Shape::SlitSquare { n, side: s }, summary })
    }

    pub fn perturbed_ball(k: usize, amplitude: f64) -> Result<Self> {
        Self::perturbed_ball_with_radius(k, amplitude, 1.0)
    }

    /// Polar graph `rho = R (1 + a sin(k theta))`.
    pub fn perturbed_ball_with_radius(k: usize, amplitude: f64, radius: f64) -> Result<Self> {
        if k == 0 {
            return invalid("perturbed ball frequency k must be positive");
        }
        if !(amplitude > 0.0 && amplitude < 0.5) {
            return invalid(format!("perturbed ball amplitude must lie in (0, 1/2), got {amplitude}"));
        }
        let rad = positive(radius, "perturbed ball radius")?;
        let outline = perturbed_outline(k, amplitude, rad)?;
        let reach = rad * (1.0 + amplitude);
        let (c, r) = maximize_distance([-reach, -reach], [reach, reach], |x| {
            if outline.contains(x) {
                outline.boundary_distance(x)
            } else {
                0.0
            }
        });
        let summary = GeometricSummary {
            volume: outline.area(),
            perimeter: outline.perimeter(),
            inradius: r,
            incenter: c.to_vec(),
            convex: false,
            exact: false,
        };
        Ok(Self { dim: 2, shape: Shape::PerturbedBall { k, amplitude, radius: rad, outline }, summary })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn kind(&self) -> BodyKind {
        match self.shape {
            Shape::Polygon(_) => BodyKind::Polygon,
            Shape::Ball { .. } => BodyKind::Ball,
            Shape::Box { .. } => BodyKind::Box,
            Shape::Slab { .. } => BodyKind::Slab,
            Shape::ThinCone { .. } => BodyKind::ThinCone,
            Shape::TangentPolytope { .. } => BodyKind::TangentPolytope,
            Shape::SlitSquare { .. } => BodyKind::SlitSquare,
            Shape::PerturbedBall { .. } => BodyKind::PerturbedBall,
        }
    }

    pub fn is_convex(&self) -> bool {
        self.summary.convex
    }

    pub fn metrics(&self) -> &GeometricSummary {
        &self.summary
    }

    /// The planar convex polygon behind polygon, planar thin-cone and planar
    /// tangent-polytope bodies.
    pub fn as_polygon(&self) -> Option<&ConvexPolygon> {
        match &self.shape {
            Shape::Polygon(p) => Some(p),
            Shape::ThinCone { triangle: Some(t), .. } => Some(t),
            Shape::TangentPolytope { polygon: Some(p), .. } => Some(p),
            _ => None,
        }
    }

    /// Bounding box of a planar body; `None` in higher dimensions.
    pub fn planar_bbox(&self) -> Option<(Point2, Point2)> {
        if self.dim != 2 {
            return None;
        }
        if let Some(poly) = self.as_polygon() {
            return Some(poly.bbox());
        }
        match &self.shape {
            Shape::Ball { center, radius } => {
                Some(([center[0] - radius, center[1] - radius], [center[0] + radius, center[1] + radius]))
            }
            Shape::Box { center, half_widths } | Shape::Slab { center, half_widths, .. } => Some((
                [center[0] - half_widths[0], center[1] - half_widths[1]],
                [center[0] + half_widths[0], center[1] + half_widths[1]],
            )),
            Shape::SlitSquare { side, .. } => Some(([0.0, 0.0], [*side, *side])),
            Shape::PerturbedBall { amplitude, radius, .. } => {
                let reach = radius * (1.0 + amplitude);
                Some(([-reach, -reach], [reach, reach]))
            }
            _ => None,
        }
    }

    pub fn descriptor(&self) -> BodyDescriptor {
        let dim = Some(self.dim);
        match &self.shape {
            Shape::Polygon(p) => BodyDescriptor::Polygon { dim, vertices: p.vertices().to_vec() },
            Shape::Ball { center, radius } => {
                BodyDescriptor::Ball { dim, center: Some(center.clone()), radius: *radius }
            }
            Shape::Box { center, half_widths } => {
                BodyDescriptor::Box { dim, center: Some(center.clone()), half_widths: half_widths.clone() }
            }
            Shape::Slab { length, .. } => BodyDescriptor::Slab { dim, length: *length },
            Shape::ThinCone { eps, base_radius, .. } => {
                BodyDescriptor::ThinCone { dim, eps: *eps, base_radius: Some(*base_radius) }
            }
            Shape::TangentPolytope { normals, radius, center, .. } => BodyDescriptor::TangentPolytope {
                dim,
                normals: normals.clone(),
                radius: *radius,
                center: Some(center.clone()),
            },
            Shape::SlitSquare { n, side } => BodyDescriptor::SlitSquare { dim, n: *n, side: Some(*side) },
            Shape::PerturbedBall { k, amplitude, radius, .. } => {
                BodyDescriptor::PerturbedBall { dim, k: *k, amplitude: *amplitude, radius: Some(*radius) }
            }
        }
    }

    fn check_point(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        Ok(())
    }

    fn require_convex(&self, what: &str) -> Result<()> {
        if self.is_convex() {
            Ok(())
        } else {
            Err(Error::Unsupported(format!("{what} needs a convex body, got {}", self.kind().name())))
        }
    }

    /// Signed depth: the boundary distance inside, nonpositive outside.
    /// Outside values for convex kinds are the largest facet violation.
    pub fn depth(&self, x: &[f64]) -> Result<f64> {
        self.check_point(x)?;
        Ok(match &self.shape {
            _ if self.as_polygon().is_some() => self.as_polygon().unwrap().facet_distance([x[0], x[1]]),
            Shape::Ball { center, radius } => {
                let d: Vec<f64> = x.iter().zip(center).map(|(a, c)| a - c).collect();
                radius - norm(&d)
            }
            Shape::Box { center, half_widths } | Shape::Slab { center, half_widths, .. } => x
                .iter()
                .zip(center)
                .zip(half_widths)
                .map(|((a, c), h)| h - (a - c).abs())
                .fold(f64::INFINITY, f64::min),
            Shape::ThinCone { eps, base_radius, .. } => {
                let n = self.dim;
                let y = x[n - 1];
                let radial = norm(&x[..n - 1]);
                let lateral = (eps * (base_radius - radial) - y) / (1.0 + eps * eps).sqrt();
                y.min(lateral)
            }
            Shape::TangentPolytope { normals, radius, center, .. } => normals
                .iter()
                .map(|u| radius + dot(u, center) - dot(u, x))
                .fold(f64::INFINITY, f64::min),
            Shape::SlitSquare { n, side } => {
                let p = [x[0], x[1]];
                let walls = p[0].min(side - p[0]).min(p[1]).min(side - p[1]);
                if walls <= 0.0 {
                    walls
                } else {
                    slit_distance(*n, *side, p).value
                }
            }
            Shape::PerturbedBall { outline, .. } => {
                let p = [x[0], x[1]];
                let d = outline.boundary_distance(p);
                if outline.contains(p) {
                    d
                } else {
                    -d
                }
            }
            Shape::Polygon(_) => unreachable!(),
        })
    }

    pub fn distance_to_boundary(&self, x: &[f64]) -> Result<BoundaryDistance> {
        let raw = self.depth(x)?;
        Ok(if raw > 0.0 {
            BoundaryDistance { value: raw, inside: true }
        } else {
            BoundaryDistance { value: 0.0, inside: false }
        })
    }

    /// Perimeter L(t) of the inner parallel set {d > t}.
    pub fn inner_parallel_perimeter(&self, t: f64) -> Result<f64> {
        self.require_convex("inner parallel sets")?;
        if !(t >= 0.0) {
            return Err(Error::InvalidParameter(format!("parallel distance must be nonnegative, got {t}")));
        }
        let s = &self.summary;
        if t >= s.inradius {
            return Ok(0.0);
        }
        let n = self.dim as i32;
        Ok(match &self.shape {
            _ if self.as_polygon().is_some() => self.as_polygon().unwrap().inner_parallel_perimeter(t),
            Shape::Ball { radius, .. } => n as f64 * unit_ball_volume(self.dim) * (radius - t).powi(n - 1),
            Shape::Box { half_widths, .. } | Shape::Slab { half_widths, .. } => {
                let shrunk: Vec<f64> = half_widths.iter().map(|a| a - t).collect();
                box_perimeter(&shrunk)
            }
            // every supporting hyperplane touches the inscribed ball, so the
            // parallel sets are homothetic copies about the incenter
            Shape::ThinCone { .. } | Shape::TangentPolytope { .. } => {
                s.perimeter * (1.0 - t / s.inradius).powi(n - 1)
            }
            _ => unreachable!("nonconvex kinds rejected above"),
        })
    }

    /// Minkowski gauge of `x`, measured from the incenter.
    pub fn gauge(&self, x: &[f64]) -> Result<f64> {
        self.require_convex("the gauge")?;
        self.check_point(x)?;
        let c = &self.summary.incenter;
        Ok(match &self.shape {
            _ if self.as_polygon().is_some() => {
                let poly = self.as_polygon().unwrap();
                poly.normals()
                    .iter()
                    .zip(poly.offsets())
                    .map(|(u, h)| (u[0] * x[0] + u[1] * x[1]) / (h - u[0] * c[0] - u[1] * c[1]))
                    .fold(0.0, f64::max)
            }
            Shape::Ball { radius, .. } => norm(x) / radius,
            // the box center is the recorded incenter
            Shape::Box { half_widths, .. } | Shape::Slab { half_widths, .. } => {
                x.iter().zip(half_widths).map(|(a, h)| a.abs() / h).fold(0.0, f64::max)
            }
            Shape::ThinCone { eps, base_radius, .. } => {
                let n = self.dim;
                let r = self.summary.inradius;
                let y = x[n - 1];
                let radial = norm(&x[..n - 1]);
                let top = eps * base_radius - r;
                (-y / r).max((eps * radial + y) / top).max(0.0)
            }
            Shape::TangentPolytope { normals, radius, .. } => {
                normals.iter().map(|u| dot(u, x) / radius).fold(0.0, f64::max)
            }
            _ => unreachable!("nonconvex kinds rejected above"),
        })
    }

    /// `| |Ω| N / (P r) - 1 | <= tol`.
    pub fn is_form_homothetic(&self, tol: f64) -> bool {
        let s = &self.summary;
        (s.volume * self.dim as f64 / (s.perimeter * s.inradius) - 1.0).abs() <= tol
    }

    /// The dilate `tΩ`.
    pub fn scale(&self, t: f64) -> Result<Self> {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::InvalidParameter(format!("scale factor must be positive, got {t}")));
        }
        let sv = |v: &[f64]| v.iter().map(|x| x * t).collect::<Vec<f64>>();
        match &self.shape {
            Shape::Polygon(p) => Self::from_polygon(p.scaled(t)),
            Shape::Ball { center, radius } => Self::ball_at(sv(center), radius * t),
            Shape::Box { center, half_widths } | Shape::Slab { center, half_widths, .. } => {
                Self::box_at(sv(center), sv(half_widths))
            }
            Shape::ThinCone { eps, base_radius, .. } => Self::thin_cone_with_base(self.dim, *eps, base_radius * t),
            Shape::TangentPolytope { normals, radius, center, .. } => {
                Self::tangent_polytope(normals.clone(), radius * t, sv(center))
            }
            Shape::SlitSquare { n, side } => Self::slit_square_with_side(*n, side * t),
            Shape::PerturbedBall { k, amplitude, radius, .. } => {
                Self::perturbed_ball_with_radius(*k, *amplitude, radius * t)
            }
        }
    }
}
