//! Finite-algebra workbench for tense distributive lattices with
//! implication, tense centered Kleene algebras with implication, and the
//! constructions relating them.
//!
//! Elements are indices `0..n`; binary tables are row-major with the row
//! as the left argument.

pub mod adjoint;
pub mod algebra;
pub mod congruence;
pub mod corpus;
pub mod dli;
pub mod error;
pub mod filter;
pub mod fixtures;
pub mod format;
pub mod kalman;
pub mod kleene;
pub mod lattice;
pub mod morphism;
pub mod nelson;
mod par;
pub mod profile;
pub mod report;
pub mod tense;

pub use adjoint::{adjoint_of, Side};
pub use algebra::{sym, Algebra, Family, OpTable, Profile};
pub use error::{Error, Result};
pub use lattice::{build_lattice, FiniteLattice, LatticeError};
pub use morphism::{certify, find_isomorphism, is_homomorphism, Morphism, Preservation, Violation};
pub use par::is_parallel;
pub use report::{AxiomOutcome, AxiomReport};
pub use tense::TenseQuadruple;
pub use profile::{check_profile, require_profile};
