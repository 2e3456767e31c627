//! Robust neighbourhoods and expansion.

use crate::bitset::VertexSet;
use crate::graph::{ceil_frac, Graph};

const TOL: f64 = 1e-9;

/// `R_{ν,G}(S)`: vertices with at least `⌈νn⌉` neighbours in `s`.
pub fn robust_neighborhood(g: &Graph, s: &VertexSet, nu: f64) -> VertexSet {
    let t = ceil_frac(nu, g.n());
    let mut r = VertexSet::new(g.n());
    for v in 0..g.n() {
        if g.neighbors(v).intersection_len(s) >= t {
            r.insert(v);
        }
    }
    r
}

/// `|R_ν(S)| ≥ n/2 + νn`.
pub fn is_expanding(g: &Graph, s: &VertexSet, nu: f64) -> bool {
    let n = g.n() as f64;
    robust_neighborhood(g, s, nu).len() as f64 >= n / 2.0 + nu * n - TOL
}

/// Every neighbourhood is `ν`-expanding.
pub fn is_expander(g: &Graph, nu: f64) -> bool {
    g.n() > 0 && (0..g.n()).all(|x| is_expanding(g, g.neighbors(x), nu))
}

/// Largest `ν` on the grid `step, 2·step, ..` (up to 1/2) for which `g` is a `ν`-expander.
pub fn expansion_level(g: &Graph, step: f64) -> Option<f64> {
    let mut best = None;
    let mut nu = step;
    while nu <= 0.5 + TOL {
        if !is_expander(g, nu) {
            break;
        }
        best = Some(nu);
        nu += step;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn robust_neighborhood_examples() {
        let g = Graph::complete(10);
        let s = VertexSet::from_iter(10, 0..5);
        assert_eq!(robust_neighborhood(&g, &s, 0.3).len(), 10);
        assert!(robust_neighborhood(&Graph::new(10), &s, 0.1).is_empty());
        let one = VertexSet::from_iter(6, [0]);
        assert!(robust_neighborhood(&Graph::cycle(6), &one, 0.5).is_empty());
    }

    #[test]
    fn expander_examples() {
        assert!(is_expander(&Graph::complete(10), 0.4));
        let two = Graph::complete(10).union(&Graph::complete(10).relabelled(&(10..20).collect::<Vec<_>>(), 20));
        assert!(!is_expander(&two, 0.1));
        assert!(!is_expander(&Graph::complete_bipartite(10, 10), 0.45));
    }
}
