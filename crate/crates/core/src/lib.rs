//! Exact computations on the complex of partial partitions of `[n]`.
//!
//! The faces of `D_n` are the partial partitions of `[n]` (partitions of any
//! subset, the empty one included), ordered by inclusion. Its facets are the
//! partitions of `[n]`. This crate enumerates and counts them, computes the
//! reduced integral homology of `D_n` with a sparse Smith normal form, checks
//! the decreasing-size facet order is a shelling, and builds the
//! cross-polytope cycles whose classes form a homology basis.

pub mod combinatorics;
pub mod complex;
pub mod cycles;
mod error;
pub mod homology;
pub mod limits;
pub mod shelling;

pub use complex::{Block, PartialPartition, SimplicialComplex};
pub use error::{Error, Result};
pub use homology::{Chain, IntMatrix, SnfResult};
