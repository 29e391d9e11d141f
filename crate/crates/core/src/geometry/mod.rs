//! Bodies and the geometric functionals the inequalities consume.

mod body;
mod inradius;
pub mod lp;
mod polygon;
mod polytope;

pub use body::{build_body, BodyDescriptor, BodyKind, BoundaryDistance, ConvexBody, GeometricSummary, Shape};
pub use inradius::maximize_distance;
pub use polygon::{clip_halfplane, convex_hull, segment_distance, ConvexPolygon, Point2, SimplePolygon};
pub use polytope::facet_areas;

use crate::error::Result;

pub fn metrics(body: &ConvexBody) -> GeometricSummary {
    body.metrics().clone()
}

pub fn distance_to_boundary(body: &ConvexBody, x: &[f64]) -> Result<BoundaryDistance> {
    body.distance_to_boundary(x)
}

pub fn inner_parallel_perimeter(body: &ConvexBody, t: f64) -> Result<f64> {
    body.inner_parallel_perimeter(t)
}

pub fn gauge(body: &ConvexBody, x: &[f64]) -> Result<f64> {
    body.gauge(x)
}

pub fn is_form_homothetic(body: &ConvexBody, tol: f64) -> bool {
    body.is_form_homothetic(tol)
}

pub fn scale(body: &ConvexBody, t: f64) -> Result<ConvexBody> {
    body.scale(t)
}
