//! Exact linear feasibility with Farkas certificates.
//!
//! Everything reduces to a phase-1 simplex over rationals on the standard
//! form `A x = b, x >= 0`, pivoting with Bland's rule. When the artificial
//! objective stays positive, the optimal simplex multipliers give a vector
//! `y` with `yᵀA >= 0` and `yᵀb < 0`, from which the caller-facing
//! certificates are derived.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::types::{PointSet, Rat, RatVec};

/// Linear inequality system `C q >= d` with free variables `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IneqSystem {
    rows: Vec<RatVec>,
    rhs: RatVec,
    cols: usize,
}

impl IneqSystem {
    pub fn new(rows: Vec<RatVec>, rhs: RatVec, cols: usize) -> Result<Self> {
        if rows.len() != rhs.len() {
            return Err(Error::DimensionMismatch {
                expected: rows.len(),
                found: rhs.len(),
            });
        }
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: r.len(),
            });
        }
        Ok(Self { rows, rhs, cols })
    }

    /// Builds a system from small integer literals.
    pub fn from_i64s(rows: &[&[i64]], rhs: &[i64], cols: usize) -> Result<Self> {
        let to_rats = |r: &[i64]| r.iter().map(|&v| crate::types::rat_int(v)).collect();
        Self::new(rows.iter().map(|r| to_rats(r)).collect(), to_rats(rhs), cols)
    }

    pub fn rows(&self) -> &[RatVec] {
        &self.rows
    }

    pub fn rhs(&self) -> &[Rat] {
        &self.rhs
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    /// `C q >= d`, checked row by row.
    pub fn is_satisfied_by(&self, q: &[Rat]) -> bool {
        q.len() == self.cols
            && self
                .rows
                .iter()
                .zip(&self.rhs)
                .all(|(row, d)| dot(row, q) >= *d)
    }

    /// `rᵀC = 0`, `r >= 0`, `rᵀ1 = 1`, `rᵀd > 0`.
    pub fn is_farkas_certificate(&self, r: &[Rat]) -> bool {
        if r.len() != self.rows.len() || r.iter().any(|v| v.is_negative()) {
            return false;
        }
        if r.iter().sum::<Rat>() != Rat::one() {
            return false;
        }
        let combination_vanishes = (0..self.cols).all(|j| {
            r.iter()
                .zip(&self.rows)
                .map(|(rk, row)| rk * &row[j])
                .sum::<Rat>()
                .is_zero()
        });
        combination_vanishes && dot(r, &self.rhs).is_positive()
    }
}

/// Exactly one of the two alternatives of the Farkas lemma variant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FeasibilityOutcome {
    /// A point `q` with `C q >= d`.
    Solution(RatVec),
    /// A vector `r` with `rᵀC = 0`, `r >= 0`, `rᵀ1 = 1`, `rᵀd > 0`.
    Farkas(RatVec),
}

impl FeasibilityOutcome {
    pub fn solution(&self) -> Option<&RatVec> {
        match self {
            FeasibilityOutcome::Solution(q) => Some(q),
            FeasibilityOutcome::Farkas(_) => None,
        }
    }

    pub fn farkas(&self) -> Option<&RatVec> {
        match self {
            FeasibilityOutcome::Farkas(r) => Some(r),
            FeasibilityOutcome::Solution(_) => None,
        }
    }
}

pub(crate) fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Decides `C q >= d`. Both branches are verified exactly before returning.
pub fn solve_feasibility(sys: &IneqSystem) -> FeasibilityOutcome {
    solve_feasibility_counted(sys).0
}

/// [`solve_feasibility`] together with the number of simplex pivots taken.
pub fn solve_feasibility_counted(sys: &IneqSystem) -> (FeasibilityOutcome, usize) {
    let l = sys.num_rows();
    let m = sys.num_cols();
    // q = u - v with u, v >= 0 and surplus s >= 0:  C u - C v - s = d
    let a: Vec<RatVec> = sys
        .rows
        .iter()
        .enumerate()
        .map(|(k, row)| {
            let mut a_row = Vec::with_capacity(2 * m + l);
            a_row.extend(row.iter().cloned());
            a_row.extend(row.iter().map(|v| -v));
            a_row.extend((0..l).map(|j| if j == k { -Rat::one() } else { Rat::zero() }));
            a_row
        })
        .collect();
    let (outcome, pivots) = phase_one(&a, &sys.rhs, 2 * m + l);
    let result = match outcome {
        StandardOutcome::Feasible(x) => {
            let q: RatVec = (0..m).map(|j| &x[j] - &x[m + j]).collect();
            assert!(sys.is_satisfied_by(&q), "phase-1 solution fails Cq >= d");
            FeasibilityOutcome::Solution(q)
        }
        StandardOutcome::Infeasible(y) => {
            // yᵀC = 0, y <= 0, yᵀd < 0; flip and normalize
            let neg: RatVec = y.iter().map(|v| -v).collect();
            let total: Rat = neg.iter().sum();
            let r: RatVec = neg.into_iter().map(|v| v / &total).collect();
            assert!(
                sys.is_farkas_certificate(&r),
                "phase-1 multipliers fail the Farkas conditions"
            );
            FeasibilityOutcome::Farkas(r)
        }
    };
    (result, pivots)
}

pub(crate) enum StandardOutcome {
    Feasible(RatVec),
    Infeasible(RatVec),
}

/// Phase-1 simplex for `A x = b, x >= 0` with `ncols` structural columns.
///
/// Returns either a feasible `x` or `y` with `yᵀA >= 0` and `yᵀb < 0`.
pub(crate) fn phase_one(a: &[RatVec], b: &[Rat], ncols: usize) -> (StandardOutcome, usize) {
    let m = a.len();
    if m == 0 {
        return (StandardOutcome::Feasible(vec![Rat::zero(); ncols]), 0);
    }
    let width = ncols + m;
    let rhs = width;
    let sign: Vec<bool> = b.iter().map(|v| v.is_negative()).collect();

    let mut t: Vec<RatVec> = (0..m)
        .map(|i| {
            let mut row = Vec::with_capacity(width + 1);
            for v in &a[i] {
                row.push(if sign[i] { -v } else { v.clone() });
            }
            for k in 0..m {
                row.push(if k == i { Rat::one() } else { Rat::zero() });
            }
            row.push(b[i].abs());
            row
        })
        .collect();
    let mut basis: Vec<usize> = (ncols..width).collect();

    // reduced costs of the artificial-sum objective; last entry is -w
    let mut obj: RatVec = vec![Rat::zero(); width + 1];
    for row in &t {
        for j in 0..ncols {
            obj[j] -= &row[j];
        }
        obj[rhs] -= &row[rhs];
    }

    let mut pivots = 0usize;
    while let Some(enter) = (0..width).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][rhs] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((li, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // the artificial objective is bounded below by zero
        let (r, _) = leave.expect("phase-1 objective cannot be unbounded");
        pivot(&mut t, &mut obj, r, enter);
        basis[r] = enter;
        pivots += 1;
    }

    if obj[rhs].is_zero() {
        let mut x = vec![Rat::zero(); ncols];
        for (i, &j) in basis.iter().enumerate() {
            if j < ncols {
                x[j] = t[i][rhs].clone();
            }
        }
        (StandardOutcome::Feasible(x), pivots)
    } else {
        // simplex multipliers: reduced cost of artificial k is 1 - π_k
        let y: RatVec = (0..m)
            .map(|k| {
                let pi = Rat::one() - &obj[ncols + k];
                if sign[k] {
                    pi
                } else {
                    -pi
                }
            })
            .collect();
        (StandardOutcome::Infeasible(y), pivots)
    }
}

fn pivot(t: &mut [RatVec], obj: &mut RatVec, r: usize, c: usize) {
    let p = t[r][c].clone();
    for v in t[r].iter_mut() {
        *v /= &p;
    }
    let pivot_row = t[r].clone();
    let eliminate = |row: &mut RatVec| {
        let f = row[c].clone();
        if f.is_zero() {
            return;
        }
        for (v, pv) in row.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    };
    for (i, row) in t.iter_mut().enumerate() {
        if i != r {
            eliminate(row);
        }
    }
    eliminate(obj);
}

/// Outcome of a convex-hull membership query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HullMembership {
    /// Convex weights, aligned with the canonical order of the point set.
    Inside { weights: RatVec },
    /// `⟨normal, z⟩ >= bound` for every point `z`, and `⟨normal, x⟩ < bound`.
    Outside { normal: RatVec, bound: Rat },
}

impl HullMembership {
    pub fn is_inside(&self) -> bool {
        matches!(self, HullMembership::Inside { .. })
    }
}

/// Decides `x ∈ conv(P)` exactly. An empty `P` yields a separating functional
/// as well.
pub fn hull_membership(x: &[Rat], p: &PointSet) -> Result<HullMembership> {
    p.require_dim(x.len())?;
    Ok(hull_membership_unchecked(x, p))
}

pub(crate) fn hull_membership_unchecked(x: &[Rat], p: &PointSet) -> HullMembership {
    let n = x.len();
    let k = p.len();
    let mut a: Vec<RatVec> = (0..n)
        .map(|i| p.iter().map(|z| Rat::from_integer(z[i].clone())).collect())
        .collect();
    a.push(vec![Rat::one(); k]);
    let mut b: RatVec = x.to_vec();
    b.push(Rat::one());

    match phase_one(&a, &b, k).0 {
        StandardOutcome::Feasible(weights) => {
            debug_assert!(weights.iter().sum::<Rat>() == Rat::one());
            HullMembership::Inside { weights }
        }
        StandardOutcome::Infeasible(mut y) => {
            let last = y.pop().expect("sum row present");
            let out = HullMembership::Outside {
                normal: y,
                bound: -last,
            };
            debug_assert!(separates(&out, x, p));
            out
        }
    }
}

fn separates(out: &HullMembership, x: &[Rat], p: &PointSet) -> bool {
    match out {
        HullMembership::Outside { normal, bound } => {
            dot(normal, x) < *bound && p.iter().all(|z| z.dot(normal) >= *bound)
        }
        HullMembership::Inside { .. } => false,
    }
}

/// Checks a membership witness against the query exactly.
pub fn membership_witness_holds(out: &HullMembership, x: &[Rat], p: &PointSet) -> bool {
    match out {
        HullMembership::Inside { weights } => {
            weights.len() == p.len()
                && weights.iter().all(|w| !w.is_negative())
                && weights.iter().sum::<Rat>() == Rat::one()
                && (0..x.len()).all(|i| {
                    p.iter()
                        .zip(weights)
                        .map(|(z, w)| w * &z[i])
                        .sum::<Rat>()
                        == x[i]
                })
        }
        HullMembership::Outside { .. } => separates(out, x, p),
    }
}
