//! Triadic-closure parameters of undirected graphs and maximal clique
//! enumeration parameterized by them.
//!
//! * [`graph`]: immutable sorted-adjacency graphs and the edge-list format.
//! * [`closure`]: c-closure, weak c-closure, the greedy A-bound and codegree
//!   statistics.
//! * [`wedges`]: induced 2-paths indexed by endpoint.
//! * [`cliques`]: the pivot baseline and the closure-parameterized
//!   enumerator in superset and exact modes.
//! * [`bounds`]: closed-form clique-count bounds and their certification.
//! * [`generators`]: extremal and random graph families.
//! * [`verify`]: the invariant corpus behind `cclosed verify`.

pub mod bounds;
pub mod cliques;
pub mod closure;
pub mod error;
pub mod generators;
pub mod graph;
pub mod report;
pub mod verify;
pub mod wedges;

pub use error::{Error, Result};
pub use graph::{load_edge_list, Graph, Vertex, VertexSet};
