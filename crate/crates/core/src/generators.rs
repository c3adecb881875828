//! Seeded instance generators.
//!
//! Every generator is a pure function of its parameters and a `u64` seed,
//! driven by [`SplitMix64`]. The draw rules are fixed so that other
//! implementations can reproduce instances bit for bit:
//!
//! - `below(m)` is `next_u64() % m` (the modulo bias is accepted);
//! - a point is kept with density `num/den` when `below(den) < num`;
//! - grids are enumerated lexicographically, first coordinate slowest.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::parse_rat;
use crate::types::{IntBox, IntVec, Limits, PointSet, Rat};

/// SplitMix64 (Steele, Lea, Flood 2014): a 64-bit counter advanced by the
/// golden-ratio increment and finalized by two xor-shift-multiply rounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw from `0..m`; `m` must be positive.
    pub fn below(&mut self, m: u64) -> u64 {
        assert!(m > 0, "below(0)");
        self.next_u64() % m
    }

    /// Draw from the inclusive range `lo..=hi`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        lo + self.below((hi - lo) as u64 + 1) as i64
    }
}

/// Exact rational in `(0, 1]` as a `(num, den)` pair of `u64`.
fn density_parts(density: &Rat) -> Result<(u64, u64)> {
    let bad = || Error::Precondition(format!("density {density} must lie in (0, 1]"));
    if !density.is_positive() || *density > Rat::from_integer(1.into()) {
        return Err(bad());
    }
    let num = density.numer().to_u64().ok_or_else(bad)?;
    let den = density.denom().to_u64().ok_or_else(bad)?;
    Ok((num, den))
}

fn unit_cube(n: usize) -> IntBox {
    IntBox {
        lo: IntVec::zeros(n),
        hi: IntVec::new(vec![BigInt::from(1); n]),
    }
}

fn check_n(n: usize) -> Result<()> {
    let cap = Limits::from_env().max_n;
    if n == 0 {
        return Err(Error::Precondition("dimension must be at least 1".into()));
    }
    if n > cap {
        return Err(Error::CapExceeded {
            what: "n",
            value: n,
            cap,
        });
    }
    Ok(())
}

/// Random nonempty subset of `{0,1}^n`; each vertex kept with probability
/// `density`. An empty draw is replaced by the single vertex `below(2^n)`.
pub fn gen_cube_subset(n: usize, density: &Rat, seed: u64) -> Result<PointSet> {
    check_n(n)?;
    let (num, den) = density_parts(density)?;
    let mut rng = SplitMix64::new(seed);
    let all = unit_cube(n).lattice_points();
    let mut keep: Vec<IntVec> = all
        .iter()
        .filter(|_| rng.below(den) < num)
        .cloned()
        .collect();
    if keep.is_empty() {
        keep.push(all[rng.below(all.len() as u64) as usize].clone());
    }
    PointSet::new(n, keep)
}

/// An integer set function on subsets of `{0, …, n−1}`, indexed by bitmask.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubmodularTable {
    n: usize,
    values: Vec<i64>,
}

const MAX_TABLE_N: usize = 12;

impl SubmodularTable {
    /// Validates `f(∅) = 0` and submodularity over all pairs of subsets.
    pub fn new(n: usize, values: Vec<i64>) -> Result<Self> {
        if n == 0 || n > MAX_TABLE_N {
            return Err(Error::Precondition(format!(
                "table size n = {n} outside 1..={MAX_TABLE_N}"
            )));
        }
        if values.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: values.len(),
            });
        }
        if values[0] != 0 {
            return Err(Error::Precondition("f(∅) must be 0".into()));
        }
        let t = SubmodularTable { n, values };
        t.check_submodular()?;
        Ok(t)
    }

    fn check_submodular(&self) -> Result<()> {
        let f = &self.values;
        for a in 0..f.len() {
            for b in a + 1..f.len() {
                if f[a] + f[b] < f[a | b] + f[a & b] {
                    let members = |m: usize| (0..self.n).filter(|i| m >> i & 1 == 1).collect();
                    return Err(Error::NotSubmodular {
                        a: members(a),
                        b: members(b),
                    });
                }
            }
        }
        Ok(())
    }

    fn from_fn(n: usize, f: impl Fn(usize) -> i64) -> Result<Self> {
        SubmodularTable::new(n, (0..1usize << n).map(f).collect())
    }

    /// `f(A) = min(cap, Σ_{i∈A} w_i)` with `w ≥ 0`.
    pub fn truncated_sum(weights: &[i64], cap: i64) -> Result<Self> {
        if weights.iter().any(|&w| w < 0) {
            return Err(Error::Precondition("weights must be nonnegative".into()));
        }
        SubmodularTable::from_fn(weights.len(), |m| {
            let s: i64 = (0..weights.len())
                .filter(|i| m >> i & 1 == 1)
                .map(|i| weights[i])
                .sum();
            s.min(cap.max(0))
        })
    }

    /// Rank of the uniform matroid `U_{r,n}`: `min(r, |A|)`.
    pub fn uniform_rank(n: usize, r: usize) -> Result<Self> {
        SubmodularTable::from_fn(n, |m| (m.count_ones() as usize).min(r) as i64)
    }

    /// Rank of the partition matroid with element `i` in block `block[i]`
    /// and capacity `caps[b]` per block.
    pub fn partition_rank(block: &[usize], caps: &[i64]) -> Result<Self> {
        if block.iter().any(|&b| b >= caps.len()) || caps.iter().any(|&c| c < 0) {
            return Err(Error::Precondition("invalid partition matroid".into()));
        }
        SubmodularTable::from_fn(block.len(), |m| {
            caps.iter()
                .enumerate()
                .map(|(b, &c)| {
                    let k = (0..block.len())
                        .filter(|&i| m >> i & 1 == 1 && block[i] == b)
                        .count() as i64;
                    k.min(c)
                })
                .sum()
        })
    }

    /// Pointwise sum; submodularity is preserved.
    pub fn sum(&self, other: &SubmodularTable) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        SubmodularTable::from_fn(self.n, |m| self.values[m] + other.values[m])
    }

    /// One of: a truncated sum, a partition-matroid rank, or a truncated sum
    /// plus a uniform-matroid rank, chosen and parametrized by `seed`.
    pub fn random(n: usize, seed: u64) -> Result<Self> {
        let mut rng = SplitMix64::new(seed);
        let truncated = |rng: &mut SplitMix64| {
            let w: Vec<i64> = (0..n).map(|_| rng.range(0, 2)).collect();
            let total: i64 = w.iter().sum();
            let cap = if total == 0 { 0 } else { rng.range(1, total) };
            SubmodularTable::truncated_sum(&w, cap)
        };
        match rng.below(3) {
            0 => truncated(&mut rng),
            1 => {
                let blocks = rng.range(1, n.min(3) as i64) as u64;
                let block: Vec<usize> = (0..n).map(|_| rng.below(blocks) as usize).collect();
                let caps: Vec<i64> = (0..blocks).map(|_| rng.range(1, 2)).collect();
                SubmodularTable::partition_rank(&block, &caps)
            }
            _ => {
                let t = truncated(&mut rng)?;
                let r = rng.range(0, n as i64) as usize;
                t.sum(&SubmodularTable::uniform_rank(n, r)?)
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn value(&self, mask: usize) -> i64 {
        self.values[mask]
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }
}

const MAX_ENUMERATION: usize = 1 << 20;

/// Integer points of the base polyhedron of `f`, enumerated over the box
/// `f(N) − f(N∖i) ≤ x_i ≤ f({i})`.
pub fn gen_base_polyhedron(f: &SubmodularTable) -> Result<PointSet> {
    let n = f.n;
    let full = (1usize << n) - 1;
    let lo: Vec<i64> = (0..n).map(|i| f.values[full] - f.values[full & !(1 << i)]).collect();
    let hi: Vec<i64> = (0..n).map(|i| f.values[1 << i]).collect();
    if lo.iter().zip(&hi).any(|(a, b)| a > b) {
        return Err(Error::EmptyResult);
    }
    let bx = IntBox::new(IntVec::from_i64s(&lo), IntVec::from_i64s(&hi))?;
    let count = bx.lattice_count();
    if count > MAX_ENUMERATION {
        return Err(Error::CapExceeded {
            what: "enumeration box size",
            value: count,
            cap: MAX_ENUMERATION,
        });
    }
    let mut keep = Vec::new();
    for x in bx.lattice_points() {
        let v: Vec<i64> = x.iter().map(|c| c.to_i64().expect("small box")).collect();
        let ok = (1..=full).all(|m| {
            let s: i64 = (0..n).filter(|i| m >> i & 1 == 1).map(|i| v[i]).sum();
            if m == full {
                s == f.values[m]
            } else {
                s <= f.values[m]
            }
        });
        if ok {
            keep.push(x);
        }
    }
    if keep.is_empty() {
        return Err(Error::EmptyResult);
    }
    PointSet::new(n, keep)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct M2Instance {
    pub set: PointSet,
    pub parents: [PointSet; 2],
}

pub fn gen_m2_intersection(f1: &SubmodularTable, f2: &SubmodularTable) -> Result<M2Instance> {
    if f1.n != f2.n {
        return Err(Error::DimensionMismatch {
            expected: f1.n,
            found: f2.n,
        });
    }
    let a = gen_base_polyhedron(f1)?;
    let b = gen_base_polyhedron(f2)?;
    let set = a.intersection(&b);
    if set.is_empty() {
        return Err(Error::EmptyResult);
    }
    Ok(M2Instance {
        set,
        parents: [a, b],
    })
}

/// `{x ∈ [lo, hi] ∩ Z^n : x_i − x_j ≤ gamma[i][j] for i ≠ j}`.
pub fn gen_difference_bounded(
    lo: &IntVec,
    hi: &IntVec,
    gamma: &[Vec<i64>],
) -> Result<PointSet> {
    let n = lo.dim();
    let bx = IntBox::new(lo.clone(), hi.clone())?;
    if gamma.len() != n || gamma.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: gamma.len(),
        });
    }
    if gamma
        .iter()
        .enumerate()
        .any(|(i, r)| r.iter().enumerate().any(|(j, &g)| i != j && g < 0))
    {
        return Err(Error::Precondition("gamma must be nonnegative off the diagonal".into()));
    }
    let count = bx.lattice_count();
    if count > MAX_ENUMERATION {
        return Err(Error::CapExceeded {
            what: "enumeration box size",
            value: count,
            cap: MAX_ENUMERATION,
        });
    }
    let keep: Vec<IntVec> = bx
        .lattice_points()
        .into_iter()
        .filter(|x| {
            (0..n).all(|i| {
                (0..n).all(|j| i == j || &x[i] - &x[j] <= BigInt::from(gamma[i][j]))
            })
        })
        .collect();
    if keep.is_empty() {
        return Err(Error::EmptyResult);
    }
    PointSet::new(n, keep)
}

/// Random box `[lo, lo + w]` with widths in `0..=2`, and random `gamma`
/// entries in `0..=2`.
pub fn random_difference_bounded(n: usize, seed: u64) -> Result<PointSet> {
    check_n(n)?;
    let mut rng = SplitMix64::new(seed);
    let lo: Vec<i64> = (0..n).map(|_| rng.range(-1, 1)).collect();
    let hi: Vec<i64> = lo.iter().map(|&l| l + rng.range(0, 2)).collect();
    let gamma: Vec<Vec<i64>> = (0..n)
        .map(|_| (0..n).map(|_| rng.range(0, 2)).collect())
        .collect();
    gen_difference_bounded(&IntVec::from_i64s(&lo), &IntVec::from_i64s(&hi), &gamma)
}

/// `count` distinct points of `[−radius, radius]^n`, chosen by Floyd's
/// sampling over grid indices (mixed radix, first coordinate most
/// significant).
pub fn gen_random_candidate(n: usize, radius: u32, count: usize, seed: u64) -> Result<PointSet> {
    check_n(n)?;
    if count == 0 {
        return Err(Error::Precondition("count must be at least 1".into()));
    }
    let side = 2 * u64::from(radius) + 1;
    let grid = (0..n).try_fold(1u64, |acc, _| acc.checked_mul(side));
    let grid = match grid {
        Some(g) if g <= usize::MAX as u64 => g,
        _ => {
            return Err(Error::CapExceeded {
                what: "grid size",
                value: usize::MAX,
                cap: usize::MAX,
            })
        }
    };
    if count as u64 > grid {
        return Err(Error::CapExceeded {
            what: "count",
            value: count,
            cap: grid as usize,
        });
    }
    let mut rng = SplitMix64::new(seed);
    let mut chosen = std::collections::BTreeSet::new();
    for j in grid - count as u64..grid {
        let t = rng.below(j + 1);
        if !chosen.insert(t) {
            chosen.insert(j);
        }
    }
    let pts = chosen
        .into_iter()
        .map(|mut idx| {
            let mut c = vec![0i64; n];
            for slot in c.iter_mut().rev() {
                *slot = (idx % side) as i64 - i64::from(radius);
                idx /= side;
            }
            IntVec::from_i64s(&c)
        })
        .collect();
    PointSet::new(n, pts)
}

/// Generator parameters as a JSON document, tagged by `"kind"`. Explicit
/// tables / matrices take precedence over `seed`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GenSpec {
    Cube {
        n: usize,
        density: String,
        seed: u64,
    },
    Basepoly {
        n: usize,
        #[serde(default)]
        values: Option<Vec<i64>>,
        #[serde(default)]
        seed: u64,
    },
    M2 {
        n: usize,
        #[serde(default)]
        values1: Option<Vec<i64>>,
        #[serde(default)]
        values2: Option<Vec<i64>>,
        #[serde(default)]
        seed: u64,
    },
    Diffbound {
        n: usize,
        #[serde(default)]
        lo: Option<Vec<i64>>,
        #[serde(default)]
        hi: Option<Vec<i64>>,
        #[serde(default)]
        gamma: Option<Vec<Vec<i64>>>,
        #[serde(default)]
        seed: u64,
    },
    Random {
        n: usize,
        radius: u32,
        count: usize,
        seed: u64,
    },
}

impl GenSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn kind(&self) -> &'static str {
        match self {
            GenSpec::Cube { .. } => "cube",
            GenSpec::Basepoly { .. } => "basepoly",
            GenSpec::M2 { .. } => "m2",
            GenSpec::Diffbound { .. } => "diffbound",
            GenSpec::Random { .. } => "random",
        }
    }

    /// Same spec with the seed replaced; batch generation uses `seed + k`.
    pub fn with_seed(&self, new: u64) -> GenSpec {
        let mut s = self.clone();
        match &mut s {
            GenSpec::Cube { seed, .. }
            | GenSpec::Basepoly { seed, .. }
            | GenSpec::M2 { seed, .. }
            | GenSpec::Diffbound { seed, .. }
            | GenSpec::Random { seed, .. } => *seed = new,
        }
        s
    }

    pub fn seed(&self) -> u64 {
        match self {
            GenSpec::Cube { seed, .. }
            | GenSpec::Basepoly { seed, .. }
            | GenSpec::M2 { seed, .. }
            | GenSpec::Diffbound { seed, .. }
            | GenSpec::Random { seed, .. } => *seed,
        }
    }

    pub fn generate(&self) -> Result<PointSet> {
        match self {
            GenSpec::Cube { n, density, seed } => gen_cube_subset(*n, &parse_rat(density)?, *seed),
            GenSpec::Basepoly { n, values, seed } => {
                gen_base_polyhedron(&table(*n, values, *seed)?)
            }
            GenSpec::M2 {
                n,
                values1,
                values2,
                seed,
            } => {
                let f1 = table(*n, values1, *seed)?;
                let f2 = table(*n, values2, seed.wrapping_add(0x5EED))?;
                Ok(gen_m2_intersection(&f1, &f2)?.set)
            }
            GenSpec::Diffbound {
                n,
                lo,
                hi,
                gamma,
                seed,
            } => match (lo, hi, gamma) {
                (Some(lo), Some(hi), Some(gamma)) => {
                    if lo.len() != *n || hi.len() != *n {
                        return Err(Error::DimensionMismatch {
                            expected: *n,
                            found: lo.len().max(hi.len()),
                        });
                    }
                    gen_difference_bounded(&IntVec::from_i64s(lo), &IntVec::from_i64s(hi), gamma)
                }
                (None, None, None) => random_difference_bounded(*n, *seed),
                _ => Err(Error::Parse("lo, hi and gamma must be given together".into())),
            },
            GenSpec::Random {
                n,
                radius,
                count,
                seed,
            } => gen_random_candidate(*n, *radius, *count, *seed),
        }
    }
}

fn table(n: usize, values: &Option<Vec<i64>>, seed: u64) -> Result<SubmodularTable> {
    match values {
        Some(v) => SubmodularTable::new(n, v.clone()),
        None => SubmodularTable::random(n, seed),
    }
}

/// Seed for which `gen_random_candidate(4, 2, 2, seed)` draws the pair
/// `{(2,1,0,0), (0,0,1,2)}`.
pub const NON_CONVEX_PAIR_SEED: u64 = 294_463;
