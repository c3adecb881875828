//! Integral neighborhoods, hole-freeness and the integral-convexity oracle.
//!
//! A finite `S ⊂ Z^n` is integrally convex iff for every integer unit cell
//! `C = [c, c+1]` the polytope `conv(S) ∩ C` equals `conv(S ∩ C)`. The exact
//! oracle checks this cell by cell: it describes `conv(S)` by its affine
//! hull and facets (exhaustive hyperplane search over point subsets), lists
//! the vertices of `conv(S) ∩ C` by solving every admissible set of active
//! constraints, and tests each vertex for membership in `conv(S ∩ C)`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Result;
use crate::linalg::{
    cross_product, det_i128, for_each_combination, int_dot, is_zero_vec, make_primitive,
    negate, nullspace, primitive_integer, rat_int_dot, solve_integer_square,
};
use crate::ratlp::{hull_membership_unchecked, solve_feasibility, FeasibilityOutcome, IneqSystem};
use crate::types::{IntBox, IntVec, Limits, PointSet, Rat, RatVec};

/// `normal · x >= rhs` (or `= rhs` for affine-hull equations).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfSpace {
    pub normal: Vec<BigInt>,
    pub rhs: BigInt,
}

/// H-description of `conv(S)`: affine-hull equations plus facet inequalities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullDescription {
    pub dim: usize,
    pub equalities: Vec<HalfSpace>,
    pub facets: Vec<HalfSpace>,
}

impl HullDescription {
    /// Exact test `x ∈ conv(S)` against the inequality description.
    pub fn contains(&self, x: &[Rat]) -> bool {
        self.equalities
            .iter()
            .all(|e| rat_int_dot(&e.normal, x) == Rat::from_integer(e.rhs.clone()))
            && self
                .facets
                .iter()
                .all(|f| rat_int_dot(&f.normal, x) >= Rat::from_integer(f.rhs.clone()))
    }
}

/// Computes the affine hull and all facets of `conv(S)`.
pub fn hull_description(s: &PointSet) -> Result<HullDescription> {
    s.require_nonempty()?;
    let n = s.dim();
    let base = &s.points()[0];
    let diffs: Vec<RatVec> = s.points()[1..]
        .iter()
        .map(|p| p.sub(base).to_rat_vec())
        .collect();
    let equalities: Vec<HalfSpace> = nullspace(&diffs, n)
        .iter()
        .map(|g| {
            let normal = primitive_integer(g);
            let rhs = int_dot(&normal, base.coords());
            HalfSpace { normal, rhs }
        })
        .collect();
    let dim = n - equalities.len();
    let mut facets = BTreeSet::new();
    if dim > 0 {
        let eq_normals: Vec<Vec<BigInt>> = equalities.iter().map(|e| e.normal.clone()).collect();
        let pts = s.points();
        for_each_combination(pts.len(), dim, |idx| {
            let anchor = &pts[idx[0]];
            let mut spanning: Vec<Vec<BigInt>> = idx[1..]
                .iter()
                .map(|&i| pts[i].sub(anchor).into_coords())
                .collect();
            spanning.extend(eq_normals.iter().cloned());
            let h = cross_product(&spanning, n);
            if is_zero_vec(&h) {
                return;
            }
            let h = make_primitive(h);
            let level = int_dot(&h, anchor.coords());
            let (mut below, mut above) = (false, false);
            for p in pts {
                match int_dot(&h, p.coords()).cmp(&level) {
                    std::cmp::Ordering::Less => below = true,
                    std::cmp::Ordering::Greater => above = true,
                    std::cmp::Ordering::Equal => {}
                }
                if below && above {
                    return;
                }
            }
            let facet = if below {
                HalfSpace {
                    normal: negate(&h),
                    rhs: -level,
                }
            } else {
                HalfSpace {
                    normal: h,
                    rhs: level,
                }
            };
            facets.insert(facet);
        });
    }
    Ok(HullDescription {
        dim,
        equalities,
        facets: facets.into_iter().collect(),
    })
}

/// `N(x) = {z ∈ Z^n : |x_i − z_i| < 1}`; integer coordinates are pinned.
pub fn integral_neighborhood(x: &[Rat]) -> PointSet {
    let lo: Vec<BigInt> = x.iter().map(|v| v.floor().to_integer()).collect();
    let hi: Vec<BigInt> = x.iter().map(|v| v.ceil().to_integer()).collect();
    let pts = IntBox {
        lo: IntVec::new(lo),
        hi: IntVec::new(hi),
    }
    .lattice_points();
    PointSet::new(x.len().max(1), pts).expect("box points share the dimension")
}

/// Points of `s` within the integral neighborhood of `(u + v) / 2`:
/// `|2 z_i − (u_i + v_i)| < 2` for all `i`.
fn near_midpoint(s: &PointSet, u: &IntVec, v: &IntVec) -> PointSet {
    let sum = u.add(v);
    let two = BigInt::from(2);
    s.filter(|z| {
        z.iter()
            .zip(sum.iter())
            .all(|(zi, si)| (zi * BigInt::from(2) - si).abs() < two)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoleFreeness {
    pub hole_free: bool,
    /// An integer point of `conv(S)` missing from `S`.
    pub witness: Option<IntVec>,
}

/// Decides `conv(S) ∩ Z^n = S` by scanning the bounding box.
pub fn is_hole_free(s: &PointSet) -> Result<HoleFreeness> {
    s.require_nonempty()?;
    let bbox = s.bounding_box().expect("nonempty");
    for z in bbox.lattice_points() {
        if s.contains(&z) {
            continue;
        }
        if hull_membership_unchecked(&z.to_rat_vec(), s).is_inside() {
            return Ok(HoleFreeness {
                hole_free: false,
                witness: Some(z),
            });
        }
    }
    Ok(HoleFreeness {
        hole_free: true,
        witness: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefilterVerdict {
    pub pass: bool,
    /// A pair whose midpoint escapes the hull of its neighbors in `S`.
    pub witness: Option<(IntVec, IntVec)>,
}

/// Necessary condition for integral convexity: every midpoint `m = (u+v)/2`
/// of two points of `S` lies in `conv(S ∩ N(m))`.
pub fn midpoint_prefilter(s: &PointSet) -> Result<PrefilterVerdict> {
    s.require_nonempty()?;
    let pts = s.points();
    for (i, u) in pts.iter().enumerate() {
        for v in &pts[i + 1..] {
            if u.linf_distance(v) <= BigInt::one() {
                // the midpoint lies in the unit cell spanned by u and v,
                // whose two endpoints both belong to S ∩ N(m)
                continue;
            }
            let local = near_midpoint(s, u, v);
            let mid: RatVec = u
                .iter()
                .zip(v.iter())
                .map(|(a, b)| Rat::new(a + b, BigInt::from(2)))
                .collect();
            if !hull_membership_unchecked(&mid, &local).is_inside() {
                return Ok(PrefilterVerdict {
                    pass: false,
                    witness: Some((u.clone(), v.clone())),
                });
            }
        }
    }
    Ok(PrefilterVerdict {
        pass: true,
        witness: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IcWitness {
    /// A point of `conv(S)` outside `conv(S ∩ N(point))`.
    pub point: RatVec,
    /// The unit cell whose local hull misses `point`.
    pub cell: IntBox,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IcVerdict {
    pub verdict: bool,
    pub witness: Option<IcWitness>,
}

/// Exact integral-convexity decision with the default size caps.
pub fn is_integrally_convex(s: &PointSet) -> Result<IcVerdict> {
    is_integrally_convex_with(s, &Limits::default())
}

pub fn is_integrally_convex_with(s: &PointSet, limits: &Limits) -> Result<IcVerdict> {
    s.require_nonempty()?;
    limits.check(s)?;
    let desc = hull_description(s)?;
    let n = s.dim();
    let bbox = s.bounding_box().expect("nonempty");
    let top: Vec<BigInt> = bbox
        .lo
        .iter()
        .zip(bbox.hi.iter())
        .map(|(a, b)| if b > a { b - 1 } else { a.clone() })
        .collect();
    let corners = IntBox {
        lo: bbox.lo.clone(),
        hi: IntVec::new(top),
    };
    for c in corners.lattice_points() {
        let cell = IntBox {
            hi: IntVec::new(c.iter().map(|v| v + 1).collect()),
            lo: c,
        };
        let Some(rows) = cell_rows(&desc, &cell) else {
            continue;
        };
        if !cell_meets_hull(&desc, &cell, n) {
            continue;
        }
        let local = s.filter(|p| cell.contains(p));
        for v in cell_vertices(&desc.equalities, &rows, n, desc.dim) {
            if !vertex_is_local(&v, s, &local) {
                return Ok(IcVerdict {
                    verdict: false,
                    witness: Some(IcWitness { point: v, cell }),
                });
            }
        }
    }
    Ok(IcVerdict {
        verdict: true,
        witness: None,
    })
}

fn vertex_is_local(v: &[Rat], s: &PointSet, local: &PointSet) -> bool {
    if v.iter().all(|c| c.is_integer()) {
        let z = IntVec::new(v.iter().map(|c| c.to_integer()).collect());
        return s.contains(&z);
    }
    hull_membership_unchecked(v, local).is_inside()
}

/// Box bounds `x_i >= c_i`, `−x_i >= −c_i − 1` followed by the facets whose
/// hyperplane meets the cell. `None` when an equation or facet excludes the
/// whole cell.
fn cell_rows(desc: &HullDescription, cell: &IntBox) -> Option<Vec<HalfSpace>> {
    let n = cell.dim();
    let range = |normal: &[BigInt]| -> (BigInt, BigInt) {
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        for (i, a) in normal.iter().enumerate() {
            let (x_lo, x_hi) = if a.is_negative() {
                (&cell.hi[i], &cell.lo[i])
            } else {
                (&cell.lo[i], &cell.hi[i])
            };
            lo += a * x_lo;
            hi += a * x_hi;
        }
        (lo, hi)
    };
    for e in &desc.equalities {
        let (lo, hi) = range(&e.normal);
        if e.rhs < lo || e.rhs > hi {
            return None;
        }
    }
    let mut rows = Vec::with_capacity(2 * n + desc.facets.len());
    for i in 0..n {
        let mut unit = vec![BigInt::zero(); n];
        unit[i] = BigInt::one();
        rows.push(HalfSpace {
            normal: unit.clone(),
            rhs: cell.lo[i].clone(),
        });
        rows.push(HalfSpace {
            normal: negate(&unit),
            rhs: -&cell.hi[i],
        });
    }
    for f in &desc.facets {
        let (lo, hi) = range(&f.normal);
        if hi < f.rhs {
            return None;
        }
        if lo < f.rhs {
            rows.push(f.clone());
        }
    }
    Some(rows)
}

/// Phase-1 feasibility of `conv(S) ∩ cell`.
fn cell_meets_hull(desc: &HullDescription, cell: &IntBox, n: usize) -> bool {
    let to_rat = |v: &[BigInt]| -> RatVec { v.iter().cloned().map(Rat::from_integer).collect() };
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for e in &desc.equalities {
        rows.push(to_rat(&e.normal));
        rhs.push(Rat::from_integer(e.rhs.clone()));
        rows.push(to_rat(&negate(&e.normal)));
        rhs.push(Rat::from_integer(-&e.rhs));
    }
    for f in &desc.facets {
        rows.push(to_rat(&f.normal));
        rhs.push(Rat::from_integer(f.rhs.clone()));
    }
    for i in 0..n {
        let mut unit = vec![Rat::zero(); n];
        unit[i] = Rat::one();
        rows.push(unit.clone());
        rhs.push(Rat::from_integer(cell.lo[i].clone()));
        rows.push(unit.into_iter().map(|v| -v).collect());
        rhs.push(Rat::from_integer(-&cell.hi[i]));
    }
    let sys = IneqSystem::new(rows, rhs, n).expect("rows built with n columns");
    matches!(solve_feasibility(&sys), FeasibilityOutcome::Solution(_))
}

/// Vertices of `{x : eq rows hold, rows hold}` in sorted order. `rows` starts
/// with the `2n` box bounds in `(lower, upper)` pairs per coordinate.
fn cell_vertices(eqs: &[HalfSpace], rows: &[HalfSpace], n: usize, dim: usize) -> Vec<RatVec> {
    if let Some(v) = cell_vertices_small(eqs, rows, n, dim) {
        return v;
    }
    let mut out = BTreeSet::new();
    for_each_combination(rows.len(), dim, |idx| {
        if opposite_bounds(idx, n) {
            return;
        }
        let mut m: Vec<Vec<BigInt>> = eqs.iter().map(|e| e.normal.clone()).collect();
        let mut r: Vec<BigInt> = eqs.iter().map(|e| e.rhs.clone()).collect();
        for &k in idx {
            m.push(rows[k].normal.clone());
            r.push(rows[k].rhs.clone());
        }
        if let Some(v) = solve_integer_square(&m, &r) {
            let feasible = rows
                .iter()
                .all(|h| rat_int_dot(&h.normal, &v) >= Rat::from_integer(h.rhs.clone()));
            if feasible {
                out.insert(v);
            }
        }
    });
    out.into_iter().collect()
}

fn opposite_bounds(idx: &[usize], n: usize) -> bool {
    idx.windows(2)
        .any(|w| w[1] < 2 * n && w[0] % 2 == 0 && w[1] == w[0] + 1)
}

/// [`cell_vertices`] in checked `i128` arithmetic; `None` on overflow.
fn cell_vertices_small(
    eqs: &[HalfSpace],
    rows: &[HalfSpace],
    n: usize,
    dim: usize,
) -> Option<Vec<RatVec>> {
    let small = |h: &HalfSpace| -> Option<(Vec<i128>, i128)> {
        let normal = h
            .normal
            .iter()
            .map(|v| v.to_i64().map(i128::from))
            .collect::<Option<Vec<_>>>()?;
        Some((normal, i128::from(h.rhs.to_i64()?)))
    };
    let eqs: Vec<(Vec<i128>, i128)> = eqs.iter().map(small).collect::<Option<_>>()?;
    let rows: Vec<(Vec<i128>, i128)> = rows.iter().map(small).collect::<Option<_>>()?;

    let mut found: BTreeSet<RatVec> = BTreeSet::new();
    let mut overflow = false;
    let mut mat: Vec<Vec<i128>> = vec![vec![0; n]; n];
    let mut rhs: Vec<i128> = vec![0; n];
    let mut num: Vec<i128> = vec![0; n];
    for_each_combination(rows.len(), dim, |idx| {
        if overflow || opposite_bounds(idx, n) {
            return;
        }
        for (i, (a, b)) in eqs.iter().chain(idx.iter().map(|&k| &rows[k])).enumerate() {
            mat[i].copy_from_slice(a);
            rhs[i] = *b;
        }
        let step = (|| -> Option<Option<RatVec>> {
            let det = det_i128(&mut mat.clone())?;
            if det == 0 {
                return Some(None);
            }
            for (col, slot) in num.iter_mut().enumerate() {
                let mut replaced = mat.clone();
                for (row, r) in replaced.iter_mut().zip(&rhs) {
                    row[col] = *r;
                }
                *slot = det_i128(&mut replaced)?;
            }
            // a · (num / det) >= b  ⇔  a · num >= b · det  (det > 0), flipped otherwise
            for (a, b) in &rows {
                let mut lhs = 0i128;
                for (ai, xi) in a.iter().zip(&num) {
                    lhs = lhs.checked_add(ai.checked_mul(*xi)?)?;
                }
                let scaled = b.checked_mul(det)?;
                let ok = if det > 0 { lhs >= scaled } else { lhs <= scaled };
                if !ok {
                    return Some(None);
                }
            }
            Some(Some(
                num.iter()
                    .map(|&v| Rat::new(BigInt::from(v), BigInt::from(det)))
                    .collect(),
            ))
        })();
        match step {
            None => overflow = true,
            Some(Some(v)) => {
                found.insert(v);
            }
            Some(None) => {}
        }
    });
    if overflow {
        None
    } else {
        Some(found.into_iter().collect())
    }
}

/// `max_{x,y ∈ P} ‖x − y‖_∞`, equal to the widest side of the bounding box.
pub fn linf_diameter(p: &PointSet) -> Result<BigInt> {
    p.require_nonempty()?;
    let bbox = p.bounding_box().expect("nonempty");
    Ok(bbox.widths().iter().max().cloned().unwrap_or_default())
}

/// The barycenter of a nonempty point set.
pub fn barycenter(p: &PointSet) -> Result<RatVec> {
    p.require_nonempty()?;
    let k = BigInt::from(p.len());
    Ok((0..p.dim())
        .map(|i| Rat::new(p.iter().map(|z| &z[i]).sum(), k.clone()))
        .collect())
}
