//! Bookkeeping shared by all covering stages.

use crate::bitset::VertexSet;
use crate::decomposition::{check_cycle, cycle_edges, CycleDecomposition};
use crate::graph::Graph;

use super::EngineError;

/// Cycles removed so far, the residual graph and per-vertex path-interior load.
///
/// Every cycle is checked against the residual before removal, so the removed cycles are
/// always valid and pairwise edge-disjoint.
#[derive(Clone, Debug)]
pub struct CoverLedger {
    original: Graph,
    pub residual: Graph,
    pub removed: CycleDecomposition,
    /// Number of times each vertex served as a path interior.
    pub load: Vec<u32>,
    /// Human-readable notes from the stages that touched the ledger.
    pub stages: Vec<String>,
}

impl CoverLedger {
    pub fn new(g: &Graph, cycle_length: usize) -> Self {
        CoverLedger {
            original: g.clone(),
            residual: g.clone(),
            removed: CycleDecomposition::new(cycle_length),
            load: vec![0; g.n()],
            stages: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.original.n()
    }

    pub fn cycle_length(&self) -> usize {
        self.removed.cycle_length
    }

    pub fn original(&self) -> &Graph {
        &self.original
    }

    /// Check `c` against the residual and remove its edges.
    pub fn remove_cycle(&mut self, c: Vec<usize>) -> Result<(), EngineError> {
        check_cycle(&self.residual, &c, self.cycle_length(), self.removed.len()).map_err(EngineError::Unsound)?;
        for (u, v) in cycle_edges(&c) {
            self.residual.remove_edge(u, v);
        }
        self.removed.cycles.push(c);
        Ok(())
    }

    /// Remove `c` from the ledger and from a working graph holding a subset of the residual.
    pub fn take(&mut self, work: &mut Graph, c: Vec<usize>) -> Result<(), EngineError> {
        for (u, v) in cycle_edges(&c) {
            work.remove_edge(u, v);
        }
        self.remove_cycle(c)
    }

    pub fn add_load(&mut self, interior: &[usize]) {
        for &v in interior {
            self.load[v] += 1;
        }
    }

    /// Vertices whose load reached `threshold`.
    pub fn overused(&self, threshold: u32) -> VertexSet {
        VertexSet::from_iter(self.n(), (0..self.n()).filter(|&v| self.load[v] >= threshold))
    }

    /// Edges covered by removed cycles.
    pub fn used_edges(&self) -> Graph {
        self.original.minus(&self.residual).expect("residual is a subgraph of the original")
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        self.stages.push(msg.into());
    }

    /// Removed cycles, checked once more against the original graph minus the residual.
    pub fn into_decomposition(self) -> Result<CycleDecomposition, EngineError> {
        let used = self.used_edges();
        self.removed.verify(&used).map_err(EngineError::Unsound)?;
        Ok(self.removed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_reused_edges_and_tracks_residual() {
        let mut l = CoverLedger::new(&Graph::complete(5), 4);
        l.remove_cycle(vec![0, 1, 2, 3]).unwrap();
        assert_eq!(l.residual.edge_count(), 6);
        assert!(l.remove_cycle(vec![0, 1, 4, 3]).is_err());
        assert!(l.remove_cycle(vec![0, 2, 4]).is_err());
        assert_eq!(l.removed.len(), 1);
        assert_eq!(l.used_edges().edge_count(), 4);
        l.add_load(&[1, 1, 2]);
        assert_eq!(l.overused(2).to_vec(), vec![1]);
        assert_eq!(l.into_decomposition().unwrap().len(), 1);
    }
}
