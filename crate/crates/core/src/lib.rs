//! Combinatorial verifiers for antipodal structures on triangulated manifolds.
//!
//! The crate works with finite abstract simplicial complexes carrying free
//! simplicial involutions. On top of that it provides:
//!
//! - complementary-edge search and antipodal labelling checks ([`labels`]),
//! - parity counts of fully-labelled facets and their verdict tables
//!   ([`labels::shashkin_report_closed`], [`labels::count_alternating`]),
//! - mod-2 degree of simplicial maps between closed pseudomanifolds
//!   ([`degree`]),
//! - the boundary double of a manifold-with-boundary ([`doubling`]),
//! - closed covering families, min-index labellings and rainbow-simplex
//!   witnesses ([`cover`]),
//! - canonical test objects ([`generators`]), text formats ([`io`]) and an
//!   SVG renderer for 2-dimensional complexes ([`render`]).
//!
//! Everything is exact integer combinatorics: no geometry, no floats in any
//! verdict path.

pub mod complex;
pub mod cover;
pub mod degree;
pub mod doubling;
pub mod embedding;
pub mod error;
pub mod generators;
pub mod involution;
pub mod io;
pub mod labels;
pub mod render;

pub use complex::{Complex, ManifoldReport, Simplex, Subdivision, VertexId};
pub use cover::{ClosedSet, PairedCover};
pub use degree::{DegreeReport, SimplicialMap};
pub use doubling::Doubling;
pub use embedding::CrosspolytopeEmbedding;
pub use error::Error;
pub use involution::{FreenessReport, Involution};
pub use labels::{Labelling, Signature};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
