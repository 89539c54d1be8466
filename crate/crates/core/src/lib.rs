//! Exact solver for the broadcast routing value of weighted outerplanar
//! networks.
//!
//! The routing value `k(G, w, r)` of a connected edge-weighted graph is the
//! largest total weight of a fractional packing of spanning arborescences
//! rooted at `r`, maximized over acyclic orientations of `G` whose unique
//! source is `r`. Equivalently (by arborescence duality) it is the best
//! achievable minimum in-cut. This crate computes it exactly, with rational
//! arithmetic, for outerplanar inputs:
//!
//! - [`solve_rbrp`](solver::solve_rbrp) / [`solve_brp`](solver::solve_brp)
//!   return the value together with a witness orientation, an explicit
//!   arborescence packing of that value, and a per-block cut certificate.
//! - [`oracle`] holds an independent brute-force reference implementation
//!   (orientation enumeration, global min-cut, packing verification) used to
//!   cross-check the solver on small instances; it accepts arbitrary graphs.
//! - [`outerplanar`] recognizes outerplanar blocks and produces the outer
//!   cycle / chord structure the solver works on, or a concrete witness for
//!   rejection.
//! - [`generate`] produces random weighted outerplanar instances for tests.
//!
//! Weights are non-negative rationals ([`Weight`]); all comparisons and all
//! tie-breaks (by vertex or edge declaration index) are exact, so every
//! function in the crate is deterministic.

pub mod digraph;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod outerplanar;
pub mod packing;
pub mod partial;
pub mod reductions;
pub mod solver;
pub mod weight;

pub use digraph::{ArcDir, MixedDir, MixedOrientation, Orientation};
pub use graph::{EdgeId, Subgraph, VertexId, WeightedGraph};
pub use outerplanar::Witness;
pub use weight::Weight;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse weight {input:?}: {reason}")]
    WeightParse { input: String, reason: &'static str },
    #[error("weight underflow: {0} - {1} is negative")]
    WeightUnderflow(Weight, Weight),
    #[error("negative weight {0:?}")]
    NegativeWeight(String),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph has a single vertex; the routing value is undefined")]
    SingleVertex,
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate edge id {0:?}")]
    DuplicateEdge(String),
    #[error("edge {edge:?} references unknown vertex {vertex:?}")]
    UnknownEndpoint { edge: String, vertex: String },
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("not a circuit: {0}")]
    NotACircuit(&'static str),
    #[error("not 2-connected: {0}")]
    NotTwoConnected(&'static str),
    #[error("block {{{block}}} is not outerplanar: {witness}")]
    NotOuterplanar { block: String, witness: Witness },
    #[error("forced orientation is contradictory: {0}")]
    ForcedContradiction(String),
    #[error("instance has {n} vertices, enumeration bound is {bound}")]
    OracleBound { n: usize, bound: usize },
    #[error("cannot place {chords} pairwise non-crossing chords on a {n}-cycle (max {max})")]
    InfeasibleChords { n: usize, chords: usize, max: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
