use thiserror::Error;

/// Errors surfaced by the analysis operations.
///
/// Programmer errors (element index out of range, empty set handed to a
/// fold) panic instead; these variants are the failures a caller can
/// legitimately run into.
#[derive(Debug, Clone, Error)]
pub enum LatticeError {
    #[error("sublattice enumeration cap of {cap} exceeded ({found} found so far)")]
    CapExceeded { cap: usize, found: usize },

    #[error("the lattice is not distributive; use the brute-force oracle instead")]
    NotDistributive,

    #[error("set {{{0}}} is not a sublattice")]
    NotASublattice(String),

    #[error("{{{0}}} is not a Veinott lower bound of the family")]
    NotALowerBound(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("expected a lattice built by {expected}, got something else: {detail}")]
    WrongCatalogKind { expected: String, detail: String },
}
