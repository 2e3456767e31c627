//! Transformers, connectors, flowers and absorbers.

use thiserror::Error;

pub mod absorber;
pub mod embed;
pub mod euler;
pub mod transformer;

pub use absorber::{build_absorber, divisible_graphs_on, AbsorberBundle, AbsorberEntry, Host};
pub use embed::{Embedding, SplitGeometry};
pub use euler::{euler_homomorphism, flower_petals, make_connector, make_flower, Connector, EdgeBijectiveHom};
pub use transformer::{c4_transformer, generic_transformer, TransformerBundle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("graph has a vertex of odd degree")]
    NotEven,
    #[error("graph has more than one edge-bearing component")]
    Disconnected,
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("edge count is not divisible by {0}")]
    NotDivisible(usize),
    #[error("unsupported half cycle length k = {0}")]
    BadK(usize),
    #[error("not an edge-bijective homomorphism: {0}")]
    BadHomomorphism(String),
    #[error("gadget pieces overlap: {0}")]
    Overlap(String),
    #[error("schedule check failed: {0}")]
    Schedule(String),
    #[error("embedding failed at {stage}: {detail}")]
    Embedding { stage: String, detail: String },
    #[error("universe of {universe} vertices has {pairs} pairs, too many to enumerate leftovers")]
    TooManyLeftovers { universe: usize, pairs: usize },
    #[error("leftover is not one of the enumerated graphs on the universe")]
    UnknownLeftover,
}
