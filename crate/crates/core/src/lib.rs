//! Constructive machinery for decomposing dense graphs into cycles of a fixed even length.
//!
//! The crate is organised bottom-up: [`graph`] and [`decomposition`] hold the data model,
//! [`oracle`] gives exhaustive answers on small inputs, [`gadgets`] builds transformers and
//! absorbers, [`analysis`] recognises graph structure, [`engine`] runs the decomposition
//! pipelines and [`generators`] produces test families.

pub mod analysis;
pub mod bitset;
pub mod decomposition;
pub mod engine;
pub mod gadgets;
pub mod generators;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod paths;
pub mod rng;

pub use bitset::VertexSet;
pub use decomposition::{verify_decomposition, CycleDecomposition, DecompositionFault};
pub use graph::{Bipartition, Fraction, Graph, GraphError, VertexPartition};
