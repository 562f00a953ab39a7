//! EPPA-witness constructions for finite graphs, digraphs and uniform
//! hypergraphs, with exhaustive verification and lower bounds.
//!
//! Vertices are always dense indices `0..n`. Constructions that have a
//! natural vertex description (valuation pairs, subsets) also expose a label
//! table for display.

pub mod bounds;
pub mod canon;
pub mod coherent;
pub mod combin;
pub mod count;
pub mod directed;
pub mod error;
pub mod hyper;
pub mod kkfree;
pub mod kneser;
pub mod partial;
pub mod perm;
pub mod search;
pub mod small;
pub mod structure;
pub mod valuation;
pub mod verify;

pub use error::{EppaError, Result};
pub use partial::PartialIso;
pub use perm::Perm;
pub use structure::{Digraph, Graph, Hypergraph, Structure, StructureKind};

/// Exact count type used for every reported bound.
pub type Count = num_bigint::BigUint;

/// Largest vertex count a construction will materialize as an
/// adjacency-bitset structure.
pub const MATERIALIZE_CAP: usize = 1 << 15;
