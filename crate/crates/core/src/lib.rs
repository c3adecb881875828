//! Exact decreasing minimization on finite sets of integer points.
//!
//! The crate computes the dec-min elements of a finite set `S ⊂ Z^n`,
//! decides integral convexity of `S`, and builds and verifies certificates
//! of the form `decmin(S) = F ∩ B°`, where `F` is the set of points of `S`
//! minimizing a linear price `p*` and `B°` is the unit box spanned by the
//! dec-min elements. Two independent price constructions are provided: a
//! Farkas-based perturbation of a base price, and a search for a price whose
//! shifted potential is minimized exactly on `B°`.
//!
//! All arithmetic is exact (`BigInt` / `BigRational`).

pub mod certificate;
pub mod error;
pub mod fixtures;
pub mod generators;
pub mod geometry;
pub mod io;
pub mod lexorder;
mod linalg;
pub mod potential;
pub mod ratlp;
pub mod structures;
pub mod types;

pub use error::{Error, Result};
pub use lexorder::{dec_compare, dec_sort, decmin_set, DecOrdering};
pub use potential::{decmin_via_potential, PowerPotential};
pub use types::{rat, rat_int, Certificate, IntBox, IntVec, Limits, Method, PointSet, Rat, RatVec};
