//! Greedy graph coloring under vertex orderings drawn from social-network
//! analysis metrics.
//!
//! The crate bundles:
//!
//! - [`graph`]: a compressed-adjacency undirected simple graph with Matrix
//!   Market and edge-list ingestion plus BFS primitives;
//! - [`metrics`]: degree, 2-/3-neighborhood sizes, closeness centrality
//!   (exact and sampled), clustering coefficient, and PageRank;
//! - [`ordering`]: descending metric orders, seeded random shuffles, and
//!   z-score-normalized uniform/weighted combinations;
//! - [`coloring`]: the greedy first-fit engine, generic over the
//!   neighborhood distance, with verification;
//! - [`exact`]: a branch-and-bound chromatic-number solver and a
//!   brute-force oracle;
//! - [`bench`]: the evaluation protocol (ratios to a baseline, geometric
//!   means, fixed-seed random averaging, weight grid search) and report
//!   emission;
//! - [`gen`]: deterministic graph generators for tests and synthetic
//!   corpora.
//!
//! The `parallel` feature (on by default) runs the per-source BFS sweeps
//! and the per-graph benchmark loop on rayon. Disabling it swaps in
//! sequential loops with identical, bit-for-bit results.

pub mod bench;
pub mod coloring;
pub mod exact;
pub mod gen;
pub mod graph;
pub mod metrics;
pub mod ordering;

mod par;
mod rng;

pub use graph::{Graph, VertexId, UNREACHABLE};
