use thiserror::Error;

use crate::types::Rat;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed document: {0}")]
    Parse(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("point set is empty")]
    EmptySet,

    #[error("instance exceeds analysis cap: {what} = {value} > {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("price component {index} is not positive ({value}); the conjugate is unbounded")]
    NonPositivePrice { index: usize, value: Rat },

    #[error("base {base} is below the rapid-increase threshold max(n, 2) = {required}")]
    BaseTooSmall { base: u64, required: u64 },

    #[error("exponent {0} is outside the supported range")]
    ExponentOutOfRange(String),

    #[error("dec-min set has L-infinity diameter {diameter} > 1; the input is not integrally convex")]
    DiameterExceeds { diameter: String },

    #[error("price system is infeasible; Farkas vector {}", crate::io::format_rat_vec(.farkas))]
    Infeasible { farkas: Vec<Rat> },

    #[error("certificate construction produced a price that violates {claim}: {detail}")]
    ClaimViolated { claim: &'static str, detail: String },

    #[error("set function is not submodular at A = {a:?}, B = {b:?}")]
    NotSubmodular { a: Vec<usize>, b: Vec<usize> },

    #[error("point set is not M-convex")]
    NotMConvex,

    #[error("dec-min set does not fit a unit cube above its componentwise minimum")]
    StructuralFailure,

    #[error("generators produced an empty set")]
    EmptyResult,

    #[error("precondition violated: {0}")]
    Precondition(String),
}
