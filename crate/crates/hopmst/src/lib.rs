//! Length-constrained minimum spanning trees by randomized sampling.
//!
//! Given an edge-weighted graph and a hop bound `h`, the solver builds a
//! spanning tree whose hop diameter stays within a small multiple of `h`
//! while its weight competes with `OPT_h`, the cheapest tree of diameter
//! at most `h`. Each round samples a random subset of the still-active
//! vertices and merges everyone else to their nearest sampled vertex
//! under the `h`-hop-constrained distance.
//!
//! The crate also ships executable counterparts of the analysis that
//! backs the guarantee: Euler-tour charging verifiers ([`charging`]), a
//! brute-force optimum oracle for tiny instances ([`oracle`]), a greedy
//! matching baseline ([`baseline`]) and a benchmark harness ([`bench`]).

pub mod baseline;
pub mod bench;
pub mod charging;
pub mod error;
pub mod generate;
pub mod graph;
pub mod hopdist;
pub mod oracle;
pub mod solver;
pub mod tree;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, Instance};
pub use tree::{SpanningTree, TreeDocument};
