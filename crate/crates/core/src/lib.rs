//! Finite lattice toolkit centered on the Veinott order.
//!
//! Given a finite lattice `C`, the nonempty sublattices `SL(C)` carry
//! the Veinott relation: `S ≤ᵛ T` when every `s ∈ S`, `t ∈ T` satisfy
//! `s ∧ t ∈ S` and `s ∨ t ∈ T`. This crate builds and validates finite
//! lattices, decides distributivity (with pentagon/diamond witnesses),
//! checks residuation, enumerates `SL(C)`, decides whether
//! `⟨SL(C), ≤ᵛ⟩` is a lattice, computes Veinott glbs/lubs both by brute
//! force and by a closed-form construction valid on distributive
//! lattices, and solves finite supermodular games.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod games;
pub mod heyting;
pub mod io;
pub mod lattice;
pub mod set;
pub mod veinott;

pub use error::LatticeError;
pub use lattice::Lattice;
pub use set::ElementSet;
pub use veinott::{Sublattice, SublatticeFamily};
