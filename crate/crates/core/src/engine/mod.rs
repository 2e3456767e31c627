//! Covering machinery and the decomposition pipelines.
//!
//! Every stage removes cycles through a [`CoverLedger`], which checks each cycle against the
//! residual graph. Stages that cannot proceed return a [`Diagnostic`] naming the stage, the
//! procedure and the object it failed on; a certificate is only ever emitted after it
//! passes [`verify_decomposition`](crate::verify_decomposition).

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::decomposition::DecompositionFault;
use crate::graph::Graph;

pub mod absorb;
pub mod bipartite_like;
pub mod c4;
pub mod cliques;
pub mod config;
pub mod cover;
pub mod coverdown;
pub mod design;
pub mod dispatch;
pub mod greedy;
pub mod ledger;

pub use absorb::{build_c4_absorber, c4_geometry};
pub use bipartite_like::decompose_bipartite_like;
pub use c4::{decompose_c4_type1, decompose_c4_type2};
pub use cliques::decompose_two_cliques;
pub use config::{ConfigError, EngineConfig, CONFIG_ENV};
pub use cover::{bound_max_degree, careofbad, cover_sparse, cover_vertex_star, find_paths, BoundReport, CoverFlavor, StarContext};
pub use coverdown::{cover_down, near_optimal, CoverDownReport};
pub use design::clique_design;
pub use dispatch::{decompose, decompose_bipartite, Nonexistence, Outcome, Run};
pub use greedy::greedy_approx;
pub use ledger::CoverLedger;

/// Where and why a pipeline stopped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub stage: String,
    pub procedure: String,
    pub object: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "stage `{}`: {} failed on {}", self.stage, self.procedure, self.object)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EngineError {
    #[error("{0}")]
    Stage(Diagnostic),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("ledger rejected a cycle: {0}")]
    Unsound(DecompositionFault),
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

impl EngineError {
    /// Prefix the stage of a diagnostic with an enclosing stage.
    pub fn in_stage(self, outer: &str) -> Self {
        match self {
            EngineError::Stage(mut d) => {
                d.stage = format!("{outer} / {}", d.stage);
                EngineError::Stage(d)
            }
            other => other,
        }
    }

    pub fn to_diagnostic(&self) -> Diagnostic {
        match self {
            EngineError::Stage(d) => d.clone(),
            other => Diagnostic {
                stage: "engine".into(),
                procedure: "pipeline".into(),
                object: other.to_string(),
            },
        }
    }
}

pub(crate) fn diag(stage: &str, procedure: &str, object: impl Into<String>) -> EngineError {
    EngineError::Stage(Diagnostic {
        stage: stage.into(),
        procedure: procedure.into(),
        object: object.into(),
    })
}

/// Edges present in both graphs.
pub fn intersect(a: &Graph, b: &Graph) -> Graph {
    let mut g = Graph::new(a.n());
    for (u, v) in a.edges() {
        if b.has_edge(u, v) {
            g.add_edge(u, v);
        }
    }
    g
}
