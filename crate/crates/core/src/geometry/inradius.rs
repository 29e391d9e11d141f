//! Inradius of nonconvex planar regions by maximizing the boundary distance.

use super::polygon::Point2;

const COARSE: usize = 161;
const ZOOM: usize = 21;
const CANDIDATES: usize = 4;

/// Maximizes `dist` (zero outside the region) over the box `[lo, hi]`.
///
/// A coarse grid picks a few separated candidates; each is refined by
/// repeatedly resampling a shrinking window around the current best point.
/// Window sampling sees every direction at once, so it does not stall on the
/// ridges of a max-min function the way coordinate or pattern searches do.
pub fn maximize_distance<F: Fn(Point2) -> f64>(lo: Point2, hi: Point2, dist: F) -> (Point2, f64) {
    let span = [hi[0] - lo[0], hi[1] - lo[1]];
    let step = [span[0] / (COARSE - 1) as f64, span[1] / (COARSE - 1) as f64];
    let mut samples: Vec<(f64, Point2)> = Vec::with_capacity(COARSE * COARSE);
    for i in 0..COARSE {
        for j in 0..COARSE {
            let x = [lo[0] + i as f64 * step[0], lo[1] + j as f64 * step[1]];
            let v = dist(x);
            if v > 0.0 {
                samples.push((v, x));
            }
        }
    }
    samples.sort_by(|a, b| b.0.total_cmp(&a.0));

    let sep = 2.0 * step[0].hypot(step[1]);
    let mut starts: Vec<Point2> = Vec::new();
    for (_, x) in &samples {
        if starts.iter().all(|s| (s[0] - x[0]).hypot(s[1] - x[1]) > sep) {
            starts.push(*x);
            if starts.len() == CANDIDATES {
                break;
            }
        }
    }

    let mut best = (lo, 0.0);
    for start in starts {
        let (x, v) = zoom(start, step, &dist);
        if v > best.1 {
            best = (x, v);
        }
    }
    best
}

fn zoom<F: Fn(Point2) -> f64>(start: Point2, step: [f64; 2], dist: &F) -> (Point2, f64) {
    let mut center = start;
    let mut value = dist(start);
    let mut half = [step[0] * 1.5, step[1] * 1.5];
    let half_n = (ZOOM / 2) as f64;
    for _ in 0..80 {
        let mut moved = center;
        for i in 0..ZOOM {
            for j in 0..ZOOM {
                let x = [
                    center[0] + (i as f64 - half_n) / half_n * half[0],
                    center[1] + (j as f64 - half_n) / half_n * half[1],
                ];
                let v = dist(x);
                if v > value {
                    value = v;
                    moved = x;
                }
            }
        }
        center = moved;
        half = [half[0] * 0.5, half[1] * 0.5];
        if half[0].max(half[1]) < 1e-15 * (1.0 + center[0].abs().max(center[1].abs())) {
            break;
        }
    }
    (center, value)
}
