//! Computation in right-angled Artin groups and their extension graphs.
//!
//! The crate covers the word problem and syllable combinatorics of
//! [`word::Element`], finite distance-exact subgraphs of the extension graph
//! in [`ext`], and exact asymptotic translation lengths in [`translation`].
//! Brute-force cross-checks live in [`oracles`].

pub mod dot;
pub mod ext;
pub mod graph;
pub mod oracles;
pub mod reproduce;
pub mod translation;
pub mod word;

pub use ext::{ExtError, ExtSubgraph, ExtVertex};
pub use graph::{build_graph, load_graph, GraphError, GraphSpec, SimplicialGraph, VertexId};
pub use translation::{tau, Rational, TauMethod, TauOptions, TauResult};
pub use word::{Element, Syllable, SyllableSeq, WordError};
