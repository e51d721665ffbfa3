//! Enumeration of stable graphs up to isomorphism.
//!
//! A stable graph of type `(G, N)` is stored as a [`StableGraphMatrix`]:
//! vertex genera, marking counts, and a symmetric multiplicity matrix whose
//! diagonal counts loops. [`Enumerator`] walks the matrices whose columns
//! are ordered, [`dedup`] collapses the remaining isomorphic copies, and
//! [`oracle`] recomputes small cases by brute force.

pub mod dedup;
pub mod enumerate;
mod error;
mod graph;
pub mod oracle;
mod ordering;
pub mod pipeline;

pub use dedup::{canonical_key, CanonicalKey, IsoClassStore};
pub use enumerate::{
    enumerate, enumerate_all, one_vertex_graphs, EnumerationReport, Enumerator, Pruning,
    VertexReport,
};
pub use error::{Error, Result};
pub use graph::{Entry, GraphType, StableGraphMatrix};
pub use ordering::{BreakKind, BreakingPosition, FlatVector};
pub use pipeline::{classify, classify_vertices, distinct_graphs};
