//! Exact enumeration of perfect matchings on lattice regions.
//!
//! The crate builds the adjacency graphs of the classical tiling families
//! (lozenge tilings of semiregular hexagons, domino tilings of Aztec
//! diamonds, rectangles and windows) together with the `n`-cube, and counts
//! their perfect matchings by several independent routes:
//!
//! * [`exact::count_brute`]: backtracking on the minimum-degree vertex,
//! * [`exact::count_permanent`]: Ryser's inclusion-exclusion permanent,
//! * [`exact::count_kasteleyn`]: determinant of a Kasteleyn-signed
//!   biadjacency matrix, by fraction-free elimination,
//! * [`transfer::transfer_count`]: column transfer matrices for square-lattice
//!   regions.
//!
//! Spectral data of the Kasteleyn matrix lives in [`spectra`]; the runnable
//! checks tying these computations to published enumeration claims live in
//! [`claims`].
//!
//! The crate is `no_std` and only needs `alloc`. File formats, timing and the
//! command-line front end are in the `perfmatch-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod claims;
pub mod count;
pub mod error;
pub mod exact;
pub mod graph;
pub mod linalg;
pub mod regions;
pub mod spectra;
pub mod transfer;

pub use count::{Count, ExactRatio};
pub use error::{ClaimError, CountError, GraphError, RegionError, SpectraError, TransferError};
pub use graph::{Color, Edge, Embedding, Face, MatchGraph, VertexLabel};
pub use regions::{HexSides, Orient, RegionKind, RegionSpec, SquareCell, TriCell};
