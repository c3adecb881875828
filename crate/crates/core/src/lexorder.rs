//! Decreasing order: compare vectors by their descending rearrangements.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::types::{IntVec, PointSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecOrdering {
    LessDec,
    EqualDec,
    GreaterDec,
}

impl From<Ordering> for DecOrdering {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => DecOrdering::LessDec,
            Ordering::Equal => DecOrdering::EqualDec,
            Ordering::Greater => DecOrdering::GreaterDec,
        }
    }
}

/// `x↓`: the components of `x` in non-increasing order.
pub fn dec_sort(x: &IntVec) -> IntVec {
    let mut c = x.coords().to_vec();
    c.sort_unstable_by(|a, b| b.cmp(a));
    IntVec::new(c)
}

pub fn dec_compare(x: &IntVec, y: &IntVec) -> Result<DecOrdering> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: y.dim(),
        });
    }
    Ok(dec_sort(x).cmp(&dec_sort(y)).into())
}

/// All dec-min elements of `s`, in one pass that keeps the best `x↓` seen so
/// far together with every point attaining it.
pub fn decmin_set(s: &PointSet) -> Result<PointSet> {
    s.require_nonempty()?;
    let mut best: Option<IntVec> = None;
    let mut attainers: Vec<IntVec> = Vec::new();
    for x in s {
        let key = dec_sort(x);
        match best.as_ref().map(|b| key.cmp(b)) {
            None | Some(Ordering::Less) => {
                best = Some(key);
                attainers.clear();
                attainers.push(x.clone());
            }
            Some(Ordering::Equal) => attainers.push(x.clone()),
            Some(Ordering::Greater) => {}
        }
    }
    PointSet::new(s.dim(), attainers)
}

/// The common descending rearrangement of the dec-min elements.
pub fn decmin_profile(s: &PointSet) -> Result<IntVec> {
    let m = decmin_set(s)?;
    Ok(dec_sort(&m.points()[0]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    #[test]
    fn sorts_descending() {
        assert_eq!(dec_sort(&IntVec::from([2, 5, 2, 1, 3])), IntVec::from([5, 3, 2, 2, 1]));
        assert_eq!(dec_sort(&IntVec::from([1, 5, 2, 4, 1])), IntVec::from([5, 4, 2, 1, 1]));
        assert_eq!(dec_sort(&IntVec::from([7])), IntVec::from([7]));
    }

    #[test]
    fn compares_by_sorted_vectors() {
        let x = IntVec::from([2, 5, 2, 1, 3]);
        let y = IntVec::from([1, 5, 2, 4, 1]);
        assert_eq!(dec_compare(&x, &y).unwrap(), DecOrdering::LessDec);
        assert_eq!(dec_compare(&y, &x).unwrap(), DecOrdering::GreaterDec);
        assert_eq!(
            dec_compare(&IntVec::from([1, 2]), &IntVec::from([2, 1])).unwrap(),
            DecOrdering::EqualDec
        );
        assert_eq!(
            dec_compare(&IntVec::from([0, 0]), &IntVec::from([0, 0])).unwrap(),
            DecOrdering::EqualDec
        );
        assert!(dec_compare(&IntVec::from([0]), &IntVec::from([0, 0])).is_err());
    }

    #[test]
    fn decmin_of_worked_examples() {
        let m = decmin_set(&fixtures::m_convex_five()).unwrap();
        let expected = PointSet::from_i64s(
            4,
            &[&[2, 1, 1, 0], &[2, 1, 0, 1], &[1, 2, 1, 0], &[1, 2, 0, 1]],
        )
        .unwrap();
        assert_eq!(m, expected);

        let pair = PointSet::from_i64s(2, &[&[1, 2], &[2, 1]]).unwrap();
        assert_eq!(decmin_set(&pair).unwrap(), pair);

        let single = PointSet::from_i64s(3, &[&[4, -1, 0]]).unwrap();
        assert_eq!(decmin_set(&single).unwrap(), single);

        assert_eq!(decmin_set(&PointSet::empty(2)).unwrap_err(), Error::EmptySet);
    }

    fn vec_strategy(n: usize) -> impl Strategy<Value = IntVec> {
        prop::collection::vec(-4i64..=4, n).prop_map(IntVec::from)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn totality_and_antisymmetry(x in vec_strategy(4), y in vec_strategy(4)) {
            let xy = dec_compare(&x, &y).unwrap();
            let yx = dec_compare(&y, &x).unwrap();
            let expected = match xy {
                DecOrdering::LessDec => DecOrdering::GreaterDec,
                DecOrdering::GreaterDec => DecOrdering::LessDec,
                DecOrdering::EqualDec => DecOrdering::EqualDec,
            };
            prop_assert_eq!(yx, expected);
            prop_assert_eq!(xy == DecOrdering::EqualDec, dec_sort(&x) == dec_sort(&y));
        }

        #[test]
        fn transitivity(x in vec_strategy(3), y in vec_strategy(3), z in vec_strategy(3)) {
            let le = |a: &IntVec, b: &IntVec| dec_compare(a, b).unwrap() != DecOrdering::GreaterDec;
            if le(&x, &y) && le(&y, &z) {
                prop_assert!(le(&x, &z));
            }
        }

        #[test]
        fn decmin_is_minimal_subset(pts in prop::collection::vec(vec_strategy(3), 1..12)) {
            let s = PointSet::new(3, pts).unwrap();
            let m = decmin_set(&s).unwrap();
            prop_assert!(!m.is_empty());
            prop_assert!(m.is_subset(&s));
            for a in &m {
                for y in &s {
                    prop_assert_ne!(dec_compare(a, y).unwrap(), DecOrdering::GreaterDec);
                }
                prop_assert_eq!(dec_compare(a, &m.points()[0]).unwrap(), DecOrdering::EqualDec);
            }
        }

        #[test]
        fn permutation_invariance(
            pts in prop::collection::vec(vec_strategy(4), 1..10),
            perm in Just(vec![0usize, 1, 2, 3]).prop_shuffle(),
        ) {
            let s = PointSet::new(4, pts).unwrap();
            let lhs = decmin_set(&s.permuted(&perm)).unwrap();
            let rhs = decmin_set(&s).unwrap().permuted(&perm);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
