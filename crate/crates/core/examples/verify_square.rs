//! Prints the inequality reports for the unit square and the unit disk.

use sobolev_core::harness::verify;
use sobolev_core::{ConvexBody, ExponentPair, SolverConfig};

fn main() -> sobolev_core::Result<()> {
    let cfg = SolverConfig::default();
    for (label, body) in [("square", ConvexBody::unit_square()), ("disk", ConvexBody::ball(2, 1.0)?)] {
        for (p, q) in [(2.0, 1.0), (2.0, 2.0)] {
            let pair = ExponentPair::new(p, q)?;
            println!("{label} p={p} q={q}");
            for r in verify(&body, pair, &cfg)? {
                println!(
                    "  {:<34} {:>14.8} {:>2} {:<14.8} {:<8} tol {:.1e}",
                    r.name,
                    r.lhs,
                    r.relation.symbol(),
                    r.rhs,
                    r.verdict.name(),
                    r.tolerance_used
                );
            }
        }
    }
    Ok(())
}
