//! M-convexity, matroid basis families, and the unit-cube structure of
//! dec-min sets.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lexorder::{decmin_profile, decmin_set, dec_sort};
use crate::types::{IntVec, PointSet, Rat};

/// Why a set fails M-convexity. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MConvexWitness {
    UnequalSums { x: IntVec, y: IntVec },
    /// `x_i > y_i`, yet no `j` with `x_j < y_j` puts `x − e_i + e_j` in `S`.
    Exchange { x: IntVec, y: IntVec, i: usize },
}

/// Exchange-axiom check over all ordered pairs. `x` is scanned from the
/// lexicographically largest point down, so the reported witness is
/// deterministic.
pub fn is_m_convex(s: &PointSet) -> Result<(bool, Option<MConvexWitness>)> {
    s.require_nonempty()?;
    let pts = s.points();
    let sum = pts[0].sum();
    if let Some(y) = pts.iter().find(|p| p.sum() != sum) {
        return Ok((
            false,
            Some(MConvexWitness::UnequalSums {
                x: pts[0].clone(),
                y: y.clone(),
            }),
        ));
    }
    for x in pts.iter().rev() {
        for y in pts {
            for i in 0..s.dim() {
                if x[i] <= y[i] {
                    continue;
                }
                let repaired = (0..s.dim())
                    .filter(|&j| x[j] < y[j])
                    .any(|j| s.contains(&x.exchanged(i, j)));
                if !repaired {
                    return Ok((
                        false,
                        Some(MConvexWitness::Exchange {
                            x: x.clone(),
                            y: y.clone(),
                            i,
                        }),
                    ));
                }
            }
        }
    }
    Ok((true, None))
}

/// A family of subsets of `{0, …, ground − 1}`; members sorted and distinct.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetFamily {
    ground: usize,
    members: Vec<Vec<usize>>,
}

impl SetFamily {
    pub fn new(ground: usize, members: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for mut m in members {
            m.sort_unstable();
            m.dedup();
            if let Some(&i) = m.iter().find(|&&i| i >= ground) {
                return Err(Error::Precondition(format!(
                    "element {} outside the ground set of size {ground}",
                    i + 1
                )));
            }
            set.insert(m);
        }
        Ok(SetFamily {
            ground,
            members: set.into_iter().collect(),
        })
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn members(&self) -> &[Vec<usize>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: &[usize]) -> bool {
        self.members.binary_search_by(|m| m.as_slice().cmp(x)).is_ok()
    }

    pub fn intersection(&self, other: &SetFamily) -> SetFamily {
        SetFamily {
            ground: self.ground,
            members: self
                .members
                .iter()
                .filter(|m| other.contains(m))
                .cloned()
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisWitness {
    UnequalSizes { a: Vec<usize>, b: Vec<usize> },
    /// `i ∈ A \ B` with no `j ∈ B \ A` such that `A − i + j` is a member.
    Exchange { a: Vec<usize>, b: Vec<usize>, i: usize },
}

pub fn matroid_basis_axiom(f: &SetFamily) -> Result<(bool, Option<BasisWitness>)> {
    let Some(first) = f.members.first() else {
        return Err(Error::Precondition("the family has no members".into()));
    };
    if let Some(b) = f.members.iter().find(|m| m.len() != first.len()) {
        return Ok((
            false,
            Some(BasisWitness::UnequalSizes {
                a: first.clone(),
                b: b.clone(),
            }),
        ));
    }
    for a in &f.members {
        for b in &f.members {
            for &i in a.iter().filter(|i| !b.contains(i)) {
                let ok = b.iter().filter(|j| !a.contains(j)).any(|&j| {
                    let mut swapped: Vec<usize> =
                        a.iter().copied().filter(|&k| k != i).chain([j]).collect();
                    swapped.sort_unstable();
                    f.contains(&swapped)
                });
                if !ok {
                    return Ok((
                        false,
                        Some(BasisWitness::Exchange {
                            a: a.clone(),
                            b: b.clone(),
                            i,
                        }),
                    ));
                }
            }
        }
    }
    Ok((true, None))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitCubeStructure {
    pub z: IntVec,
    pub family: SetFamily,
}

impl UnitCubeStructure {
    /// `{z + χ_X : X ∈ F}`.
    pub fn reconstruct(&self) -> PointSet {
        let pts = self
            .family
            .members
            .iter()
            .map(|x| indicator_shift(&self.z, x))
            .collect();
        PointSet::new(self.z.dim(), pts).expect("shared dimension")
    }
}

fn indicator_shift(z: &IntVec, x: &[usize]) -> IntVec {
    let mut c = z.coords().to_vec();
    for &i in x {
        c[i] += 1;
    }
    IntVec::new(c)
}

/// `z` = componentwise minimum of `decmin(S)` and `F = {supp(m − z)}`;
/// fails when some `m − z` leaves `{0,1}^n`.
pub fn unit_cube_structure(s: &PointSet) -> Result<UnitCubeStructure> {
    let m = decmin_set(s)?;
    let z = m.bounding_box().expect("nonempty").lo;
    let mut members = Vec::with_capacity(m.len());
    for x in &m {
        let d = x.sub(&z);
        if d.iter().any(|v| !(v.is_zero() || v.is_one())) {
            return Err(Error::StructuralFailure);
        }
        members.push((0..s.dim()).filter(|&i| d[i].is_one()).collect());
    }
    Ok(UnitCubeStructure {
        z,
        family: SetFamily::new(s.dim(), members)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MStructure {
    pub z: IntVec,
    pub family: SetFamily,
    pub matroidal: bool,
}

/// The matroidal description `decmin(S) = {z + χ_X : X ∈ F}` of an
/// M-convex set.
pub fn decmin_structure_m(s: &PointSet) -> Result<MStructure> {
    if !is_m_convex(s)?.0 {
        return Err(Error::NotMConvex);
    }
    let UnitCubeStructure { z, family } = unit_cube_structure(s)?;
    let matroidal = matroid_basis_axiom(&family)?.0;
    Ok(MStructure {
        z,
        family,
        matroidal,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct M2Form {
    pub z: IntVec,
    pub family: SetFamily,
    /// `{X : z + χ_X ∈ S_k, (z + χ_X)↓ = profile}` for each side.
    pub sides: [SetFamily; 2],
    /// `F` equals the intersection of the two side families.
    pub consistent: bool,
}

/// For `S = S_1 ∩ S_2`, checks that `decmin(S)` sits in `z + {0,1}^n` and is
/// recovered by intersecting the per-side unit-cube families. M₂-convexity
/// itself is not decided here; the caller supplies the two sides.
pub fn m2_form_check(s: &PointSet, s1: &PointSet, s2: &PointSet) -> Result<M2Form> {
    s1.require_dim(s.dim())?;
    s2.require_dim(s.dim())?;
    let UnitCubeStructure { z, family } = unit_cube_structure(s)?;
    let profile = decmin_profile(s)?;
    let n = s.dim();
    let side = |sk: &PointSet| -> Result<SetFamily> {
        let mut members = Vec::new();
        for mask in 0..1usize << n {
            let x: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let p = indicator_shift(&z, &x);
            if sk.contains(&p) && dec_sort(&p) == profile {
                members.push(x);
            }
        }
        SetFamily::new(n, members)
    };
    if n >= usize::BITS as usize {
        return Err(Error::Precondition(format!("dimension {n} too large to enumerate subsets")));
    }
    let sides = [side(s1)?, side(s2)?];
    let consistent = sides[0].intersection(&sides[1]) == family;
    Ok(M2Form {
        z,
        family,
        sides,
        consistent,
    })
}

/// A point of `T ⊆ {0,1}^n` whose support meets `U` in at most `⌊|U|/2⌋`
/// elements, given weights `λ` (aligned with `T`'s canonical order) whose
/// combination is `1/2` on `U`.
pub fn cube_lemma_witness(t: &PointSet, u: &[usize], lambda: &[Rat]) -> Result<IntVec> {
    t.require_nonempty()?;
    let n = t.dim();
    if lambda.len() != t.len() {
        return Err(Error::DimensionMismatch {
            expected: t.len(),
            found: lambda.len(),
        });
    }
    if t
        .iter()
        .any(|z| z.iter().any(|v| !(v.is_zero() || v.is_one())))
    {
        return Err(Error::Precondition("T must lie in {0,1}^n".into()));
    }
    if let Some(&i) = u.iter().find(|&&i| i >= n) {
        return Err(Error::Precondition(format!("index {} outside 1..={n}", i + 1)));
    }
    if lambda.iter().any(|l| l <= &Rat::zero()) {
        return Err(Error::Precondition("weights must be positive".into()));
    }
    if lambda.iter().sum::<Rat>() != Rat::one() {
        return Err(Error::Precondition("weights must sum to 1".into()));
    }
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    for &i in u {
        let yi: Rat = t
            .iter()
            .zip(lambda)
            .map(|(z, l)| l * Rat::from_integer(z[i].clone()))
            .sum();
        if yi != half {
            return Err(Error::Precondition(format!(
                "combination has coordinate {} equal to {yi}, not 1/2",
                i + 1
            )));
        }
    }
    let mut uniq = u.to_vec();
    uniq.sort_unstable();
    uniq.dedup();
    let bound = uniq.len() / 2;
    t.iter()
        .find(|z| uniq.iter().filter(|&&i| z[i].is_one()).count() <= bound)
        .cloned()
        .ok_or_else(|| Error::ClaimViolated {
            claim: "cube lemma",
            detail: "no point of T meets U in at most half its elements".into(),
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::types::{rat, rat_vec};
    use proptest::prelude::*;

    fn fam(n: usize, sets: &[&[usize]]) -> SetFamily {
        SetFamily::new(n, sets.iter().map(|s| s.to_vec())).unwrap()
    }

    #[test]
    fn m_convexity_of_worked_examples() {
        assert_eq!(is_m_convex(&fixtures::m_convex_five()).unwrap(), (true, None));
        let (ok, w) = is_m_convex(&fixtures::non_convex_pair()).unwrap();
        assert!(!ok);
        assert_eq!(
            w,
            Some(MConvexWitness::Exchange {
                x: IntVec::from([2, 1, 0, 0]),
                y: IntVec::from([0, 0, 1, 2]),
                i: 0,
            })
        );
        let single = PointSet::from_i64s(2, &[&[3, -1]]).unwrap();
        assert!(is_m_convex(&single).unwrap().0);
        let uneven = PointSet::from_i64s(2, &[&[0, 0], &[1, 0]]).unwrap();
        assert!(matches!(
            is_m_convex(&uneven).unwrap().1,
            Some(MConvexWitness::UnequalSums { .. })
        ));
    }

    #[test]
    fn basis_families() {
        let pm = fam(4, &[&[0, 2], &[0, 3], &[1, 2], &[1, 3]]);
        assert_eq!(matroid_basis_axiom(&pm).unwrap(), (true, None));
        let bad = fam(3, &[&[0], &[1, 2]]);
        assert!(matches!(
            matroid_basis_axiom(&bad).unwrap().1,
            Some(BasisWitness::UnequalSizes { .. })
        ));
        assert!(matroid_basis_axiom(&fam(3, &[&[1]])).unwrap().0);
        // two disjoint pairs: {0,1} − 0 + 2 = {1,2} missing
        let broken = fam(4, &[&[0, 1], &[2, 3]]);
        assert!(matches!(
            matroid_basis_axiom(&broken).unwrap().1,
            Some(BasisWitness::Exchange { .. })
        ));
        assert!(matroid_basis_axiom(&fam(2, &[])).is_err());
        assert!(SetFamily::new(2, [vec![2]]).is_err());
    }

    #[test]
    fn structure_of_staircase_example() {
        let st = decmin_structure_m(&fixtures::m_convex_five()).unwrap();
        assert_eq!(st.z, IntVec::from([1, 1, 0, 0]));
        assert_eq!(st.family, fam(4, &[&[0, 2], &[0, 3], &[1, 2], &[1, 3]]));
        assert!(st.matroidal);
        let cube = UnitCubeStructure {
            z: st.z,
            family: st.family,
        };
        assert_eq!(cube.reconstruct(), decmin_set(&fixtures::m_convex_five()).unwrap());
    }

    #[test]
    fn structure_of_small_sets() {
        let single = PointSet::from_i64s(3, &[&[1, 0, 2]]).unwrap();
        let st = decmin_structure_m(&single).unwrap();
        assert_eq!(st.family, fam(3, &[&[]]));
        assert!(st.matroidal);

        let pair = PointSet::from_i64s(2, &[&[1, 2], &[2, 1]]).unwrap();
        let st = decmin_structure_m(&pair).unwrap();
        assert_eq!(st.z, IntVec::from([1, 1]));
        assert_eq!(st.family, fam(2, &[&[0], &[1]]));

        assert_eq!(
            decmin_structure_m(&fixtures::non_convex_pair()).unwrap_err(),
            Error::NotMConvex
        );
        // decmin spread over two units in a coordinate
        let wide = PointSet::from_i64s(3, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]).unwrap();
        assert_eq!(unit_cube_structure(&wide).unwrap_err(), Error::StructuralFailure);
    }

    #[test]
    fn m2_form_on_intersection() {
        let s1 = fixtures::m_convex_five();
        let s2 = PointSet::from_i64s(
            4,
            &[&[2, 1, 1, 0], &[1, 2, 0, 1], &[2, 2, 0, 0], &[1, 1, 1, 1]],
        )
        .unwrap();
        let s = s1.intersection(&s2);
        let form = m2_form_check(&s, &s1, &s2).unwrap();
        assert!(form.consistent);
        assert_eq!(form.family.len(), 2);
        assert_eq!(form.sides[0].len(), 4);
    }

    #[test]
    fn cube_lemma_examples() {
        let t = PointSet::from_i64s(2, &[&[1, 0], &[0, 1]]).unwrap();
        let w = cube_lemma_witness(&t, &[0, 1], &rat_vec(&[(1, 2), (1, 2)])).unwrap();
        assert!(t.contains(&w));

        let t = PointSet::from_i64s(2, &[&[0, 0], &[1, 1]]).unwrap();
        let w = cube_lemma_witness(&t, &[0, 1], &rat_vec(&[(1, 2), (1, 2)])).unwrap();
        assert_eq!(w, IntVec::from([0, 0]));

        let bad = cube_lemma_witness(&t, &[0], &rat_vec(&[(1, 3), (2, 3)]));
        assert!(matches!(bad, Err(Error::Precondition(_))));
        let bad = cube_lemma_witness(&t, &[0], &rat_vec(&[(0, 1), (1, 1)]));
        assert!(matches!(bad, Err(Error::Precondition(_))));
        let not_cube = PointSet::from_i64s(1, &[&[2]]).unwrap();
        assert!(cube_lemma_witness(&not_cube, &[], &[rat(1, 1)]).is_err());
    }

    /// Literal transcription of the exchange axiom over a linear scan, without
    /// the early exit or the scan order of the implementation.
    fn m_convex_brute(s: &PointSet) -> bool {
        let sum = s.points()[0].sum();
        if s.iter().any(|p| p.sum() != sum) {
            return false;
        }
        s.iter().all(|x| {
            s.iter().all(|y| {
                (0..s.dim()).filter(|&i| x[i] > y[i]).all(|i| {
                    (0..s.dim())
                        .filter(|&j| x[j] < y[j])
                        .any(|j| s.points().contains(&x.exchanged(i, j)))
                })
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn m_convex_matches_brute_and_witness_is_real(
            pts in prop::collection::vec(prop::collection::vec(0i64..3, 3), 1..7)
        ) {
            let s = PointSet::new(3, pts.into_iter().map(IntVec::from).collect()).unwrap();
            let (ok, w) = is_m_convex(&s).unwrap();
            prop_assert_eq!(ok, m_convex_brute(&s));
            match w {
                None => prop_assert!(ok),
                Some(MConvexWitness::UnequalSums { x, y }) => prop_assert_ne!(x.sum(), y.sum()),
                Some(MConvexWitness::Exchange { x, y, i }) => {
                    prop_assert!(x[i] > y[i]);
                    for j in 0..3 {
                        if x[j] < y[j] {
                            prop_assert!(!s.contains(&x.exchanged(i, j)));
                        }
                    }
                }
            }
        }

        #[test]
        fn uniform_matroids_are_bases(n in 1usize..6, r in 0usize..6) {
            let r = r.min(n);
            let members = (0..1usize << n)
                .filter(|m| m.count_ones() as usize == r)
                .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect());
            let f = SetFamily::new(n, members).unwrap();
            prop_assert!(matroid_basis_axiom(&f).unwrap().0);
        }
    }
}
