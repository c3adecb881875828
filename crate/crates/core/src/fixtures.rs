//! The three small worked instances used for regression: a non-convex
//! two-point set, an M-convex five-point set, and a parallelogram.

use crate::types::PointSet;

/// `{(2,1,0,0), (0,0,1,2)}`: hole-free but not integrally convex; both
/// points are dec-min at L∞ distance 2.
pub fn non_convex_pair() -> PointSet {
    PointSet::from_i64s(4, &[&[2, 1, 0, 0], &[0, 0, 1, 2]]).expect("valid literal")
}

/// Five points of an M-convex set; all but `(2,2,0,0)` are dec-min and they
/// span the box `{1,2}² × {0,1}²`.
pub fn m_convex_five() -> PointSet {
    PointSet::from_i64s(
        4,
        &[
            &[2, 1, 1, 0],
            &[2, 1, 0, 1],
            &[1, 2, 1, 0],
            &[1, 2, 0, 1],
            &[2, 2, 0, 0],
        ],
    )
    .expect("valid literal")
}

/// Vertices of a planar parallelogram in Z^4 with two dec-min elements.
pub fn parallelogram() -> PointSet {
    PointSet::from_i64s(
        4,
        &[&[2, 0, 0, 0], &[1, 1, 0, 1], &[1, 0, 1, 1], &[0, 1, 1, 2]],
    )
    .expect("valid literal")
}

/// Looks up a fixture by its label (`"1.4"`, `"3.2"`, `"4.9"`).
pub fn by_label(label: &str) -> Option<PointSet> {
    match label {
        "1.4" => Some(non_convex_pair()),
        "3.2" => Some(m_convex_five()),
        "4.9" => Some(parallelogram()),
        _ => None,
    }
}
