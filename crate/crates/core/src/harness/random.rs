use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::geometry::{convex_hull, ConvexBody, Point2};

/// Hulls of 8–24 uniform points in the unit disk; degenerate hulls (area
/// below 1e−3 or rejected by validation) are redrawn.
pub fn random_convex_polygon<R: Rng>(rng: &mut R) -> ConvexBody {
    loop {
        let count = rng.gen_range(8..=24);
        let pts: Vec<Point2> = (0..count)
            .map(|_| {
                let rho = rng.gen::<f64>().sqrt();
                let th = rng.gen_range(0.0..std::f64::consts::TAU);
                [rho * th.cos(), rho * th.sin()]
            })
            .collect();
        let hull = convex_hull(&pts);
        if hull.len() < 3 {
            continue;
        }
        if let Ok(body) = ConvexBody::polygon(&hull) {
            if body.metrics().volume > 1e-3 {
                return body;
            }
        }
    }
}

pub fn random_convex_polygons(seed: u64, count: usize) -> Vec<ConvexBody> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_convex_polygon(&mut rng)).collect()
}

/// Polygon circumscribed about the unit circle: 3–12 sorted random normal
/// angles with every gap below π (so the polygon is bounded) and above 0.05.
pub fn random_tangent_polygon<R: Rng>(rng: &mut R) -> Result<ConvexBody> {
    loop {
        let m = rng.gen_range(3..=12);
        let mut th: Vec<f64> = (0..m).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
        th.sort_by(f64::total_cmp);
        let gaps = th.windows(2).map(|w| w[1] - w[0]).chain(std::iter::once(th[0] + std::f64::consts::TAU - th[m - 1]));
        let (lo, hi) = gaps.fold((f64::INFINITY, 0.0f64), |(lo, hi), g| (lo.min(g), hi.max(g)));
        if hi >= std::f64::consts::PI - 0.05 || lo < 0.05 {
            continue;
        }
        let normals = th.iter().map(|t| vec![t.cos(), t.sin()]).collect();
        return ConvexBody::tangent_polytope(normals, 1.0, vec![0.0, 0.0]);
    }
}

pub fn random_tangent_polygons(seed: u64, count: usize) -> Result<Vec<ConvexBody>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_tangent_polygon(&mut rng)).collect()
}
