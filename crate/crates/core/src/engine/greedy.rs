//! Greedy packing of cycles until the graph is sparse.

use rand::seq::SliceRandom;

use crate::bitset::VertexSet;
use crate::graph::Graph;
use crate::paths::PathQuery;
use crate::rng::Rng;

use super::{CoverLedger, EngineError};

/// Remove `L`-cycles from `g` until at most `eta·n²` edges remain or no edge lies on a
/// cycle the bounded search can find. `g` must be a subgraph of the ledger's residual.
///
/// Edges are visited once in a seeded order; each is used as the anchor of cycles until
/// none passes through it. Since the graph only shrinks, a dead edge stays dead.
pub fn greedy_approx(g: &Graph, len: usize, eta: f64, ledger: &mut CoverLedger, rng: &mut Rng) -> Result<Graph, EngineError> {
    let n = g.n();
    let limit = (eta * (n * n) as f64).floor() as usize;
    let mut work = g.clone();
    let all = VertexSet::full(n);
    let mut order = work.edges();
    order.shuffle(rng);
    for (u, v) in order {
        while work.edge_count() > limit && work.has_edge(u, v) {
            let found = PathQuery::new(&work).cycle_through(u, v, len, &all, rng);
            match found {
                Some(c) => ledger.take(&mut work, c)?,
                None => break,
            }
        }
        if work.edge_count() <= limit {
            break;
        }
    }
    Ok(work)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_random_min_degree;
    use crate::rng::stream;

    #[test]
    fn single_cycle_is_removed() {
        let g = Graph::cycle(4);
        let mut l = CoverLedger::new(&g, 4);
        let r = greedy_approx(&g, 4, 0.0, &mut l, &mut stream(0, "t")).unwrap();
        assert_eq!(r.edge_count(), 0);
        assert_eq!(l.removed.len(), 1);
    }

    #[test]
    fn complete_graph_cycles_verify() {
        let g = Graph::complete(9);
        let mut l = CoverLedger::new(&g, 4);
        let r = greedy_approx(&g, 4, 0.0, &mut l, &mut stream(1, "t")).unwrap();
        assert_eq!(r.edge_count() + 4 * l.removed.len(), 36);
        assert_eq!(r, l.residual);
        l.into_decomposition().unwrap();
    }

    #[test]
    fn dense_random_graph_reaches_density() {
        let g = gen_random_min_degree(200, 0.0, 0.7, 3).unwrap().graph;
        let mut l = CoverLedger::new(&g, 4);
        let r = greedy_approx(&g, 4, 0.05, &mut l, &mut stream(3, "t")).unwrap();
        assert!(r.edge_count() <= 2000, "{}", r.edge_count());
    }
}
