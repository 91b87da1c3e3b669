//! Certified extraction of induced ordered patterns and linear-size
//! bi-cliques in ordered graphs and in disjointness graphs of x-monotone
//! curves.
//!
//! Every procedure returns a certificate that can be checked independently
//! of how it was produced: an order-preserving induced embedding, a balanced
//! (co-)bi-clique, or a report of the precondition that failed.

pub mod biclique;
pub mod error;
pub mod generators;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod magical;
pub mod matching;
pub mod path;
pub mod pattern;
pub mod rng;

pub use biclique::{is_biclique, max_biclique_oracle, Biclique};
pub use error::{Error, Result};
pub use graph::{OrderedGraph, VertexSet};
pub use pattern::{find_induced_embedding, Embedding, Pattern};
pub use rng::SplitMix64;
