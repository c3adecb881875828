//! Separable power potentials `Φ(x) = Σ c^{x_i}` in exact arithmetic.
//!
//! For `c >= n` the potential increases rapidly enough (`φ(k+1) >= n·φ(k)`)
//! that its minimizers over a finite set are exactly the dec-min elements.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::types::{IntBox, IntVec, PointSet, Rat};

/// Exponents beyond this magnitude are refused; `c^k` would not fit in memory
/// long before that anyway.
const MAX_EXPONENT: i64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PowerPotential {
    base: u64,
    n: usize,
}

/// Value and maximizer interval of the one-dimensional conjugate
/// `sup_k (p·k − c^k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conjugate {
    pub value: Rat,
    pub argmax: IntBox,
}

impl PowerPotential {
    /// `base` must be at least 2. A base below `n` is allowed but the result
    /// is not rapidly increasing; see [`PowerPotential::is_rapid`].
    pub fn new(base: u64, n: usize) -> Result<Self> {
        if base < 2 {
            return Err(Error::BaseTooSmall {
                base,
                required: 2,
            });
        }
        Ok(Self { base, n })
    }

    /// `base = max(n, 2)`, the smallest rapidly increasing choice.
    pub fn default_for(n: usize) -> Self {
        Self {
            base: rapid_threshold(n),
            n,
        }
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_rapid(&self) -> bool {
        self.base >= rapid_threshold(self.n)
    }

    /// `φ(k) = c^k`, exact for negative `k` as well.
    pub fn phi_pow(&self, k: i64) -> Rat {
        let c = BigInt::from(self.base);
        let mag = num_traits::pow(c, k.unsigned_abs() as usize);
        if k >= 0 {
            Rat::from_integer(mag)
        } else {
            Rat::new(BigInt::one(), mag)
        }
    }

    pub(crate) fn phi_big(&self, k: &BigInt) -> Result<Rat> {
        Ok(self.phi_pow(exponent(k)?))
    }

    /// `φ(k+1) − φ(k) = c^k (c − 1)`.
    pub fn phi_diff(&self, k: i64) -> Rat {
        self.phi_pow(k) * Rat::from_integer(BigInt::from(self.base - 1))
    }

    /// `Σ_i φ(x_i)`.
    pub fn phi_rap_value(&self, x: &IntVec) -> Result<Rat> {
        self.check_dim(x.dim())?;
        x.iter()
            .try_fold(Rat::zero(), |acc, k| Ok(acc + self.phi_big(k)?))
    }

    /// `Φ[−p](x) = Φ(x) − ⟨p, x⟩`.
    pub fn shifted_value(&self, x: &IntVec, p: &[Rat]) -> Result<Rat> {
        self.check_dim(p.len())?;
        Ok(self.phi_rap_value(x)? - x.dot(p))
    }

    /// Integer minimizers of `φ(k) − p·k`, as a one-dimensional box
    /// `[k, k]` or `[k, k+1]`.
    pub fn shifted_argmin_interval(&self, p: &Rat) -> Result<IntBox> {
        if !p.is_positive() {
            return Err(Error::NonPositivePrice {
                index: 0,
                value: p.clone(),
            });
        }
        // smallest k with φ(k+1) − φ(k) >= p, searched outward from 0
        let mut k: i64 = 0;
        if self.phi_diff(0) >= *p {
            while self.phi_diff(k - 1) >= *p {
                k -= 1;
            }
        } else {
            while self.phi_diff(k) < *p {
                k += 1;
            }
        }
        let hi = if self.phi_diff(k) == *p { k + 1 } else { k };
        Ok(IntBox {
            lo: IntVec::from([k]),
            hi: IntVec::from([hi]),
        })
    }

    /// `sup_k (p·k − φ(k))` and the interval where it is attained.
    pub fn phi_conjugate(&self, p: &Rat) -> Result<Conjugate> {
        let argmax = self.shifted_argmin_interval(p)?;
        let k = exponent(&argmax.lo[0])?;
        let value = p * Rat::from_integer(BigInt::from(k)) - self.phi_pow(k);
        Ok(Conjugate { value, argmax })
    }

    /// Product over coordinates of [`PowerPotential::shifted_argmin_interval`]:
    /// the integer minimizers of `Φ[−p]`.
    pub fn shifted_argmin_box(&self, p: &[Rat]) -> Result<IntBox> {
        self.check_dim(p.len())?;
        let mut lo = Vec::with_capacity(p.len());
        let mut hi = Vec::with_capacity(p.len());
        for (i, pi) in p.iter().enumerate() {
            let iv = self
                .shifted_argmin_interval(pi)
                .map_err(|e| reindex(e, i))?;
            lo.push(iv.lo[0].clone());
            hi.push(iv.hi[0].clone());
        }
        Ok(IntBox {
            lo: IntVec::new(lo),
            hi: IntVec::new(hi),
        })
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.n {
            Err(Error::DimensionMismatch {
                expected: self.n,
                found,
            })
        } else {
            Ok(())
        }
    }
}

pub(crate) fn rapid_threshold(n: usize) -> u64 {
    (n as u64).max(2)
}

pub(crate) fn reindex(e: Error, index: usize) -> Error {
    match e {
        Error::NonPositivePrice { value, .. } => Error::NonPositivePrice { index, value },
        other => other,
    }
}

fn exponent(k: &BigInt) -> Result<i64> {
    k.to_i64()
        .filter(|k| k.abs() <= MAX_EXPONENT)
        .ok_or_else(|| Error::ExponentOutOfRange(k.to_string()))
}

/// `argmin(Φ | S)`; equals the dec-min set whenever the potential is rapidly
/// increasing, which is therefore required.
pub fn decmin_via_potential(s: &PointSet, pot: &PowerPotential) -> Result<PointSet> {
    s.require_nonempty()?;
    s.require_dim(pot.dim())?;
    if !pot.is_rapid() {
        return Err(Error::BaseTooSmall {
            base: pot.base(),
            required: rapid_threshold(pot.dim()),
        });
    }
    let mut best: Option<Rat> = None;
    let mut keep = Vec::new();
    for x in s {
        let v = pot.phi_rap_value(x)?;
        match &best {
            Some(b) if v > *b => {}
            Some(b) if v == *b => keep.push(x.clone()),
            _ => {
                best = Some(v);
                keep.clear();
                keep.push(x.clone());
            }
        }
    }
    PointSet::new(s.dim(), keep)
}
