//! Systems of representatives for finite graphs and finite permutation
//! actions, together with their automorphism-invariant counterparts.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`] – the finite graph model (simple, directed or undirected,
//!   loops optional).
//! * [`perm`] – permutations, finite permutation actions and orbits.
//! * [`symmetrize`] – turning a transversal of an invariant set family into
//!   an invariant transversal at most `m` times larger, with certificates.
//! * [`occurrences`] – subgraph (monomorphism) occurrence families and
//!   predicate-defined families.
//! * [`aut`] – automorphism groups by refinement and backtracking.
//! * [`hitting`] – exact minimum hitting sets, plain and orbit-constrained.
//! * [`representativeness`] – vertex/edge representativeness and the
//!   symmetric variants.
//! * [`constructions`] – graph generators for the extremal examples.
//! * [`theory_checks`] – checks of bounds and extremal values, with reports.
//! * [`io`] – the text graph format and the JSON action format.

pub mod aut;
pub mod constructions;
mod error;
pub mod graph;
pub mod hitting;
pub mod io;
pub mod occurrences;
pub mod perm;
pub mod representativeness;
pub mod symmetrize;
pub mod theory_checks;

pub use error::{Error, Result};
pub use graph::{Graph, GraphKind};
pub use occurrences::Mode;
pub use perm::{OrbitPartition, PermAction, Permutation};
pub use symmetrize::SetFamily;
