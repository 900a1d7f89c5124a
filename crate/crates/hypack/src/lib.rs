//! Toolkit for packing k-uniform hypergraphs.
//!
//! Two hypergraphs on n vertices *pack* when some bijection of their vertex
//! sets maps no edge of the first onto an edge of the second. This crate
//! provides:
//!
//! - [`hypergraph`]: the core types (hypergraphs, vertex sets, bijections)
//!   with generalized degrees and conflict counting;
//! - [`conditions`]: the sufficient packing conditions on degrees and edge
//!   counts, plus edge-total bound reporting;
//! - [`solver`]: a conflict-switching packer with a guaranteed descent when
//!   the degree condition holds, and an exhaustive oracle for small n;
//! - [`designs`]: divisibility tests, explicit search and direct Steiner
//!   triple constructions for the t-(n,k,λ) designs the extremal pairs need;
//! - [`extremal`]: non-packing pair constructions bounding the minimum
//!   non-packing total m(n,k) from above, with structural certificates;
//! - [`format`]: the shared line-oriented file format;
//! - [`cli`]: the `hypack` command-line entry point.
//!
//! Start with the runnable examples (`cargo run --example <name>`); each one
//! walks a major capability end to end.

pub mod arith;
pub mod cli;
pub mod combi;
pub mod conditions;
pub mod designs;
pub mod error;
pub mod extremal;
pub mod format;
pub mod generate;
pub mod hypergraph;
pub mod solver;

pub use error::{Error, Result};
pub use hypergraph::{Bijection, Hypergraph, Vertex, VertexSet};
