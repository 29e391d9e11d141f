//! Fixed inputs shared by the benchmarks in `benches/`.

use sobolev_core::geometry::Point2;
use sobolev_core::harness::random_convex_polygons;
use sobolev_core::ConvexBody;

pub const SEED: u64 = 7;

/// Regular n-gon inscribed in the unit circle.
pub fn regular_polygon(n: usize) -> ConvexBody {
    let pts: Vec<Point2> = (0..n)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / n as f64;
            [t.cos(), t.sin()]
        })
        .collect();
    ConvexBody::polygon(&pts).expect("regular polygon is convex")
}

pub fn sample_polygons(count: usize) -> Vec<ConvexBody> {
    random_convex_polygons(SEED, count)
}
