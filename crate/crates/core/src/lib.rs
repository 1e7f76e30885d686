//! Dense bipartite and semi-bipartite induced subgraphs, separation
//! choosability, and exact stable-set machinery for small graphs.

pub mod catalog;
pub mod choosability;
pub mod coloring;
pub mod error;
pub mod experiments;
pub mod extract;
pub mod generators;
pub mod graph;
pub mod lp;
pub mod numeric;
pub mod rng;
pub mod stable_sets;

pub use error::{Error, Result};
pub use graph::{Bipartiteness, Graph, VertexSet};
pub use numeric::Rational;
