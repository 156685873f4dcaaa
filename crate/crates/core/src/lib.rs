//! Representation, search and verification of trivalent Hamiltonian
//! bipartite graphs given by periodic chord offsets along a Hamiltonian
//! cycle.

pub mod catalog;
pub mod girth;
pub mod graph;
pub mod pattern;
pub mod search;

pub use girth::{girth_fast, girth_oracle, has_girth_at_least, GirthResult};
pub use graph::ExpandedGraph;
pub use pattern::{OffsetPattern, PatternError, PatternTransform};
pub use search::{
    enumerate, min_order, ExhaustionCertificate, OrderOutcome, OrderResult, PartialAssignment, SearchMode,
    SearchOutcome, SearchSpec,
};
