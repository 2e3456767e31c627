//! Recognising which structural case a graph falls into.

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::graph::Graph;

pub mod closeness;
pub mod expansion;
pub mod extremal;
pub mod vortex;

pub use closeness::{closeness, closeness_bipartite, closeness_two_cliques, Closeness, Objective, Search};
pub use expansion::{is_expander, is_expanding, robust_neighborhood};
pub use extremal::{find_m_extremal, is_cross_free, ExtremalType, ExtremalWitness};
pub use vortex::{vortex_sample, Vortex, VortexError, VortexFlavor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureKind {
    Expander,
    CloseTwoCliques,
    CloseBipartite,
    ExtremalType1,
    ExtremalType2,
    None,
}

impl StructureKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StructureKind::Expander => "expander",
            StructureKind::CloseTwoCliques => "close_two_cliques",
            StructureKind::CloseBipartite => "close_bipartite",
            StructureKind::ExtremalType1 => "extremal_type1",
            StructureKind::ExtremalType2 => "extremal_type2",
            StructureKind::None => "none",
        }
    }
}

#[derive(Clone, Debug)]
pub struct StructureReport {
    pub kind: StructureKind,
    pub witness: Vec<VertexSet>,
    /// `ν` for an expander, achieved `ε` for the closeness kinds, `m` for extremal kinds.
    pub parameter: f64,
    /// False when a heuristic search produced the witness.
    pub exact: bool,
}

impl StructureReport {
    pub fn none() -> Self {
        StructureReport {
            kind: StructureKind::None,
            witness: Vec::new(),
            parameter: 0.0,
            exact: true,
        }
    }
}

/// First of expander, close to two cliques, close to bipartite that holds.
pub fn classify(g: &Graph, nu: f64, epsilon: f64, search: Search) -> StructureReport {
    let n = g.n();
    if n < 2 {
        return StructureReport::none();
    }
    if is_expander(g, nu) {
        return StructureReport {
            kind: StructureKind::Expander,
            witness: Vec::new(),
            parameter: nu,
            exact: true,
        };
    }
    let limit = epsilon * (n * n) as f64 + 1e-9;
    for (objective, kind) in [
        (Objective::Cut, StructureKind::CloseTwoCliques),
        (Objective::Inside, StructureKind::CloseBipartite),
    ] {
        let c = closeness(g, objective, search);
        if c.edges as f64 <= limit {
            let rest = c.set.complement(n);
            return StructureReport {
                kind,
                witness: vec![c.set, rest],
                parameter: c.epsilon.to_f64(),
                exact: c.exact,
            };
        }
    }
    StructureReport::none()
}

/// Report form of [`find_m_extremal`].
pub fn extremal_report(g: &Graph, m: usize) -> Option<StructureReport> {
    find_m_extremal(g, m).map(|w| StructureReport {
        kind: match w.kind {
            ExtremalType::Type1 => StructureKind::ExtremalType1,
            ExtremalType::Type2 => StructureKind::ExtremalType2,
        },
        witness: vec![w.s, w.t],
        parameter: m as f64,
        exact: w.exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_examples() {
        let s = Search::default();
        assert_eq!(classify(&Graph::complete(10), 0.2, 0.05, s).kind, StructureKind::Expander);
        let two = Graph::complete(8).union(&Graph::complete(8).relabelled(&(8..16).collect::<Vec<_>>(), 16));
        assert_eq!(classify(&two, 0.1, 0.05, s).kind, StructureKind::CloseTwoCliques);
        assert_eq!(classify(&Graph::complete_bipartite(8, 8), 0.1, 0.05, s).kind, StructureKind::CloseBipartite);
    }
}
