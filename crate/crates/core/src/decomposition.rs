//! Cycle decompositions and their verification.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

/// Why a claimed decomposition is not a `C_L`-decomposition of the graph.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompositionFault {
    #[error("cycle length {0} is below 3")]
    ShortLength(usize),
    #[error("cycle {index} has {len} vertices, expected {expected}")]
    WrongLength { index: usize, len: usize, expected: usize },
    #[error("cycle {index} repeats vertex {vertex}")]
    RepeatedVertex { index: usize, vertex: usize },
    #[error("cycle {index} uses {u}-{v}, which is not an edge")]
    NotAnEdge { index: usize, u: usize, v: usize },
    #[error("edge {u}-{v} is covered twice (again by cycle {index})")]
    DuplicateEdge { index: usize, u: usize, v: usize },
    #[error("{count} edges are not covered, first is {u}-{v}")]
    Uncovered { count: usize, u: usize, v: usize },
}

/// Ordered list of cycles, each a vertex sequence of length `cycle_length`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleDecomposition {
    pub cycle_length: usize,
    pub cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn new(cycle_length: usize) -> Self {
        CycleDecomposition {
            cycle_length,
            cycles: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn extend(&mut self, other: CycleDecomposition) {
        assert_eq!(self.cycle_length, other.cycle_length, "mixed cycle lengths");
        self.cycles.extend(other.cycles);
    }

    /// Rename vertices through `map` (new id = `map[old id]`).
    pub fn relabelled(&self, map: &[usize]) -> CycleDecomposition {
        CycleDecomposition {
            cycle_length: self.cycle_length,
            cycles: self
                .cycles
                .iter()
                .map(|c| c.iter().map(|&v| map[v]).collect())
                .collect(),
        }
    }

    /// Union of the cycles as a graph on `n` vertices; `None` if two cycles share an edge
    /// or an id is out of range.
    pub fn covered_graph(&self, n: usize) -> Option<Graph> {
        let mut g = Graph::new(n);
        for c in &self.cycles {
            for (u, v) in cycle_edges(c) {
                if u == v || u >= n || v >= n || !g.add_edge(u, v) {
                    return None;
                }
            }
        }
        Some(g)
    }

    /// Check that the cycles are `L`-cycles of `g` partitioning its edges.
    pub fn verify(&self, g: &Graph) -> Result<(), DecompositionFault> {
        verify_decomposition(g, self)
    }
}

/// Consecutive pairs of a closed walk, including the closing pair.
pub fn cycle_edges(c: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..c.len()).map(move |i| (c[i], c[(i + 1) % c.len()]))
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Validate a single cycle against `g` (length, distinct vertices, edges present).
pub fn check_cycle(g: &Graph, c: &[usize], len: usize, index: usize) -> Result<(), DecompositionFault> {
    if c.len() != len {
        return Err(DecompositionFault::WrongLength {
            index,
            len: c.len(),
            expected: len,
        });
    }
    let mut seen = HashSet::with_capacity(len);
    for &v in c {
        if !seen.insert(v) {
            return Err(DecompositionFault::RepeatedVertex { index, vertex: v });
        }
    }
    for (u, v) in cycle_edges(c) {
        if !g.has_edge(u, v) {
            let (u, v) = key(u, v);
            return Err(DecompositionFault::NotAnEdge { index, u, v });
        }
    }
    Ok(())
}

/// Full check that `d` is a `C_L`-decomposition of `g`.
pub fn verify_decomposition(g: &Graph, d: &CycleDecomposition) -> Result<(), DecompositionFault> {
    let len = d.cycle_length;
    if len < 3 {
        return Err(DecompositionFault::ShortLength(len));
    }
    let mut used = HashSet::with_capacity(g.edge_count());
    for (index, c) in d.cycles.iter().enumerate() {
        check_cycle(g, c, len, index)?;
        for (u, v) in cycle_edges(c) {
            let (u, v) = key(u, v);
            if !used.insert((u, v)) {
                return Err(DecompositionFault::DuplicateEdge { index, u, v });
            }
        }
    }
    if used.len() != g.edge_count() {
        let missing: Vec<_> = g.edges().into_iter().filter(|e| !used.contains(e)).collect();
        let (u, v) = missing[0];
        return Err(DecompositionFault::Uncovered {
            count: missing.len(),
            u,
            v,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4_minus() -> Graph {
        Graph::cycle(4)
    }

    #[test]
    fn accepts_a_valid_decomposition() {
        let d = CycleDecomposition {
            cycle_length: 4,
            cycles: vec![vec![0, 1, 2, 3]],
        };
        assert_eq!(d.verify(&k4_minus()), Ok(()));
    }

    #[test]
    fn reports_structured_faults() {
        let g = Graph::complete(5);
        let dup = CycleDecomposition {
            cycle_length: 3,
            cycles: vec![vec![0, 1, 2], vec![2, 1, 3]],
        };
        assert_eq!(
            dup.verify(&g),
            Err(DecompositionFault::DuplicateEdge { index: 1, u: 1, v: 2 })
        );
        let short = CycleDecomposition {
            cycle_length: 3,
            cycles: vec![vec![0, 1, 2]],
        };
        assert!(matches!(short.verify(&g), Err(DecompositionFault::Uncovered { count: 7, .. })));
        let bad = CycleDecomposition {
            cycle_length: 4,
            cycles: vec![vec![0, 1, 1, 2]],
        };
        assert!(matches!(bad.verify(&g), Err(DecompositionFault::RepeatedVertex { .. })));
        let missing = CycleDecomposition {
            cycle_length: 4,
            cycles: vec![vec![0, 1, 2, 3]],
        };
        assert!(matches!(
            missing.verify(&k4_minus().resized(5).union(&Graph::new(5))),
            Ok(())
        ));
        assert!(matches!(
            missing.verify(&Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()),
            Err(DecompositionFault::NotAnEdge { u: 0, v: 3, .. })
        ));
    }
}
