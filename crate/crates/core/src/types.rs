//! Shared domain types: lattice points, finite point sets, exact rationals,
//! integral boxes and the certificate record.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rat = BigRational;

/// A vector of exact rationals (prices, weights, fractional points).
pub type RatVec = Vec<Rat>;

/// Shorthand for the rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for the integer-valued rational `v`.
pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Builds a rational vector from `(num, den)` pairs.
pub fn rat_vec(entries: &[(i64, i64)]) -> RatVec {
    entries.iter().map(|&(n, d)| rat(n, d)).collect()
}

/// An integer lattice point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntVec(Vec<BigInt>);

impl IntVec {
    pub fn new(coords: Vec<BigInt>) -> Self {
        Self(coords)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![BigInt::zero(); n])
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BigInt> {
        self.0.iter()
    }

    pub fn sum(&self) -> BigInt {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &IntVec) -> IntVec {
        IntVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &IntVec) -> IntVec {
        IntVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// `self - e_i + e_j`.
    pub fn exchanged(&self, i: usize, j: usize) -> IntVec {
        let mut out = self.clone();
        out.0[i] -= 1;
        out.0[j] += 1;
        out
    }

    pub fn linf_distance(&self, other: &IntVec) -> BigInt {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn to_rat_vec(&self) -> RatVec {
        self.0.iter().cloned().map(Rat::from_integer).collect()
    }

    /// Exact inner product with a rational vector of the same length.
    pub fn dot(&self, p: &[Rat]) -> Rat {
        self.0
            .iter()
            .zip(p)
            .fold(Rat::zero(), |acc, (x, pi)| acc + pi * x)
    }

    /// The restriction `x|_idx` onto the listed coordinates.
    pub fn restrict(&self, idx: &[usize]) -> IntVec {
        IntVec(idx.iter().map(|&i| self.0[i].clone()).collect())
    }
}

impl std::ops::Index<usize> for IntVec {
    type Output = BigInt;
    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl From<Vec<i64>> for IntVec {
    fn from(v: Vec<i64>) -> Self {
        Self::from_i64s(&v)
    }
}

impl<const N: usize> From<[i64; N]> for IntVec {
    fn from(v: [i64; N]) -> Self {
        Self::from_i64s(&v)
    }
}

impl fmt::Display for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Renders a rational vector as `(a, b/c, ...)`.
pub fn display_rat_vec(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(|r| r.to_string()).collect();
    format!("({})", parts.join(","))
}

/// A finite set of lattice points in canonical form: deduplicated and
/// sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointSet {
    n: usize,
    points: Vec<IntVec>,
}

impl PointSet {
    /// Canonicalizes `points`. Every point must have length `n`, and `n >= 1`.
    pub fn new(n: usize, mut points: Vec<IntVec>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parse("dimension n must be positive".into()));
        }
        if let Some(p) = points.iter().find(|p| p.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.dim(),
            });
        }
        points.sort();
        points.dedup();
        Ok(Self { n, points })
    }

    /// Convenience constructor from small literal coordinates.
    pub fn from_i64s(n: usize, points: &[&[i64]]) -> Result<Self> {
        Self::new(n, points.iter().map(|p| IntVec::from_i64s(p)).collect())
    }

    /// An empty set in dimension `n`.
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            points: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[IntVec] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, IntVec> {
        self.points.iter()
    }

    pub fn contains(&self, x: &IntVec) -> bool {
        self.points.binary_search(x).is_ok()
    }

    pub(crate) fn require_nonempty(&self) -> Result<()> {
        if self.points.is_empty() {
            Err(Error::EmptySet)
        } else {
            Ok(())
        }
    }

    pub(crate) fn require_dim(&self, found: usize) -> Result<()> {
        if found != self.n {
            Err(Error::DimensionMismatch {
                expected: self.n,
                found,
            })
        } else {
            Ok(())
        }
    }

    /// The subset of points satisfying `keep`; order is preserved so the
    /// result stays canonical.
    pub fn filter(&self, mut keep: impl FnMut(&IntVec) -> bool) -> PointSet {
        PointSet {
            n: self.n,
            points: self.points.iter().filter(|p| keep(p)).cloned().collect(),
        }
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        self.filter(|p| other.contains(p))
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        self.filter(|p| !other.contains(p))
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.points.iter().all(|p| other.contains(p))
    }

    /// Smallest integral box containing every point, or `None` when empty.
    pub fn bounding_box(&self) -> Option<IntBox> {
        let first = self.points.first()?;
        let mut lo = first.coords().to_vec();
        let mut hi = lo.clone();
        for p in &self.points[1..] {
            for (i, c) in p.iter().enumerate() {
                if *c < lo[i] {
                    lo[i] = c.clone();
                }
                if *c > hi[i] {
                    hi[i] = c.clone();
                }
            }
        }
        Some(IntBox {
            lo: IntVec::new(lo),
            hi: IntVec::new(hi),
        })
    }

    /// The same set with coordinates relabeled: coordinate `i` of each output
    /// point is coordinate `perm[i]` of the input point.
    pub fn permuted(&self, perm: &[usize]) -> PointSet {
        let pts = self
            .points
            .iter()
            .map(|p| IntVec::new(perm.iter().map(|&k| p[k].clone()).collect()))
            .collect();
        PointSet::new(self.n, pts).expect("permutation preserves dimension")
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a IntVec;
    type IntoIter = std::slice::Iter<'a, IntVec>;
    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// Integral box `[lo, hi]` with `lo <= hi` componentwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntBox {
    pub lo: IntVec,
    pub hi: IntVec,
}

impl IntBox {
    pub fn new(lo: IntVec, hi: IntVec) -> Result<Self> {
        if lo.dim() != hi.dim() {
            return Err(Error::DimensionMismatch {
                expected: lo.dim(),
                found: hi.dim(),
            });
        }
        if lo.iter().zip(hi.iter()).any(|(a, b)| a > b) {
            return Err(Error::Precondition(format!(
                "box lower corner {lo} exceeds upper corner {hi}"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.lo.dim()
    }

    pub fn contains(&self, x: &IntVec) -> bool {
        x.dim() == self.dim()
            && x
                .iter()
                .zip(self.lo.iter().zip(self.hi.iter()))
                .all(|(c, (a, b))| a <= c && c <= b)
    }

    /// `hi - lo`.
    pub fn widths(&self) -> IntVec {
        self.hi.sub(&self.lo)
    }

    /// True when every side has length 0 or 1.
    pub fn is_unit(&self) -> bool {
        self.widths()
            .iter()
            .all(|w| w.is_zero() || *w == BigInt::from(1))
    }

    /// All integer points of the box in lexicographic order.
    pub fn lattice_points(&self) -> Vec<IntVec> {
        let n = self.dim();
        let mut out = Vec::new();
        let mut cur = self.lo.coords().to_vec();
        loop {
            out.push(IntVec::new(cur.clone()));
            // odometer increment, last coordinate fastest
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < self.hi[i] {
                    cur[i] += 1;
                    for (j, c) in cur.iter_mut().enumerate().skip(i + 1) {
                        *c = self.lo[j].clone();
                    }
                    break;
                }
            }
        }
    }

    /// Number of lattice points, saturating at `usize::MAX`.
    pub fn lattice_count(&self) -> usize {
        self.widths().iter().fold(1usize, |acc, w| {
            let side = usize::try_from(w + 1).unwrap_or(usize::MAX);
            acc.saturating_mul(side)
        })
    }
}

impl fmt::Display for IntBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Which construction produced a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Farkas-based perturbation of the base price on the constant coordinates.
    Face,
    /// Price characterization through the shifted potential's minimizer box.
    Fenchel,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Face => "face",
            Method::Fenchel => "fenchel",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "face" => Ok(Method::Face),
            "fenchel" => Ok(Method::Fenchel),
            other => Err(Error::Parse(format!("unknown method {other:?}"))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Structural certificate `decmin(S) = F ∩ box`.
///
/// `n0`/`n1` hold 0-based coordinate indices; documents render them 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub method: Method,
    pub base: u64,
    pub price: RatVec,
    pub beta: Rat,
    pub inner_box: IntBox,
    pub n0: Vec<usize>,
    pub n1: Vec<usize>,
    pub face_members: PointSet,
}

impl Certificate {
    pub fn dim(&self) -> usize {
        self.price.len()
    }
}

/// Size caps for enumeration-heavy analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_n: usize,
    pub max_points: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_n: 8,
            max_points: 10_000,
        }
    }
}

impl Limits {
    /// Environment variable overriding [`Limits::max_n`].
    pub const MAX_N_ENV: &'static str = "DECMIN_MAX_N";

    /// Defaults, with `DECMIN_MAX_N` applied when set to a positive integer.
    pub fn from_env() -> Self {
        let mut limits = Self::default();
        if let Some(v) = std::env::var(Self::MAX_N_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .filter(|&v| v > 0)
        {
            limits.max_n = v;
        }
        limits
    }

    pub fn check(&self, s: &PointSet) -> Result<()> {
        if s.dim() > self.max_n {
            return Err(Error::CapExceeded {
                what: "n",
                value: s.dim(),
                cap: self.max_n,
            });
        }
        if s.len() > self.max_points {
            return Err(Error::CapExceeded {
                what: "|S|",
                value: s.len(),
                cap: self.max_points,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_set_is_canonical() {
        let s = PointSet::from_i64s(2, &[&[2, 1], &[1, 2], &[2, 1]]).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.points()[0], IntVec::from([1, 2]));
        assert!(s.contains(&IntVec::from([2, 1])));
    }

    #[test]
    fn ragged_points_rejected() {
        let err = PointSet::from_i64s(2, &[&[1, 2], &[1]]).unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                expected: 2,
                found: 1
            }
        );
    }

    #[test]
    fn box_lattice_points_in_order() {
        let b = IntBox::new(IntVec::from([0, 1]), IntVec::from([1, 2])).unwrap();
        let pts = b.lattice_points();
        assert_eq!(
            pts,
            vec![
                IntVec::from([0, 1]),
                IntVec::from([0, 2]),
                IntVec::from([1, 1]),
                IntVec::from([1, 2])
            ]
        );
        assert_eq!(b.lattice_count(), 4);
        assert!(b.is_unit());
    }

    #[test]
    fn inverted_box_rejected() {
        assert!(IntBox::new(IntVec::from([1]), IntVec::from([0])).is_err());
    }

    #[test]
    fn limits_reject_large_dimension() {
        let s = PointSet::new(9, vec![IntVec::zeros(9)]).unwrap();
        assert!(matches!(
            Limits::default().check(&s),
            Err(Error::CapExceeded { what: "n", .. })
        ));
    }
}
