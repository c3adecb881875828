//! Shared instance sets for the benchmarks.

use decmin_core::generators::{gen_base_polyhedron, gen_cube_subset, random_difference_bounded, SubmodularTable};
use decmin_core::geometry::is_integrally_convex;
use decmin_core::{rat, PointSet};

/// Integrally convex instances of dimension `n` from the three structured generators.
pub fn convex_instances(n: usize, seeds: u64) -> Vec<PointSet> {
    let mut out = Vec::new();
    for seed in 0..seeds {
        out.push(gen_cube_subset(n, &rat(1, 2), seed).expect("cube subset"));
        if let Ok(s) = random_difference_bounded(n, seed) {
            out.push(s);
        }
        if let Ok(s) = SubmodularTable::random(n, seed).and_then(|f| gen_base_polyhedron(&f)) {
            out.push(s);
        }
    }
    out.retain(|s| is_integrally_convex(s).map(|v| v.verdict).unwrap_or(false));
    out
}

/// The full `{0,1}^n` cube, a dense worst case for the hull and cell loops.
pub fn full_cube(n: usize) -> PointSet {
    gen_cube_subset(n, &rat(1, 1), 0).expect("full cube")
}
