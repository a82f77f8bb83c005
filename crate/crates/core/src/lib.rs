//! Tools for studying pairs of vertices at distance two.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`] and [`canon`]: bitset graphs on at most 64 vertices, BFS
//!   distances, induced subgraphs and canonical labelling.
//! - [`distance`]: the distance-k graph `G_k` and its statistics.
//! - [`structure`]: forbidden induced patterns, two-clique neighbourhood
//!   covers and the per-vertex checks built on them.
//! - [`families`]: the spindle move, diameter reduction, the neighbourhood
//!   rewiring and the two parametric extremal families.
//! - [`search`]: isomorph-free enumeration, bound verification, claim
//!   sweeps and simulated annealing.
//! - [`graph6`], [`report`], [`dot`]: interchange formats.

pub mod canon;
pub mod distance;
pub mod dot;
mod error;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod report;
pub mod search;
pub mod structure;

pub use canon::{canonical_form, canonical_labeling, CanonicalForm, CanonicalLabeling};
pub use distance::DistanceKGraph;
pub use error::{Error, Result};
pub use graph::{Distance, DistanceMatrix, Graph, VertexSet, MAX_VERTICES};
