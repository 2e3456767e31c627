//! Absorbers for `C_4` in graphs of minimum degree about `2n/3` that are not extremal.

use rand::seq::SliceRandom;

use crate::analysis::find_m_extremal;
use crate::bitset::VertexSet;
use crate::gadgets::{build_absorber, AbsorberBundle, Embedding, Host, SplitGeometry};
use crate::graph::Graph;
use crate::rng::Rng;

use super::{diag, EngineConfig, EngineError};

const INDEPENDENT_RESTARTS: usize = 32;

fn greedy_independent(g: &Graph, rng: &mut Rng) -> VertexSet {
    let n = g.n();
    let mut best = VertexSet::new(n);
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..INDEPENDENT_RESTARTS {
        order.shuffle(rng);
        order.sort_by_key(|&v| g.degree(v));
        let mut s = VertexSet::new(n);
        let mut blocked = VertexSet::new(n);
        for &v in &order {
            if !blocked.contains(v) {
                s.insert(v);
                blocked.insert(v);
                blocked.union_with(g.neighbors(v));
            }
        }
        if s.len() > best.len() {
            best = s;
        }
    }
    best
}

/// Geometry for the transforming-edge search.
///
/// Returns `None` when no two sets of size `n/3 - 3m_2` are found without edges between
/// them, in which case common neighbourhoods are large enough everywhere. Otherwise such a
/// pair forces an independent set `X'` of size `⌊n/3⌋ - 7m_2`, and the classes are
/// `X'' = X' ∪ U_m`, `Y' = V \ X''` and `Y'' = Y' \ U_{n/3-√m}`, where `U_i` holds the
/// vertices outside `X'` with at most `i` neighbours in `X'`.
pub fn c4_geometry(g: &Graph, cfg: &EngineConfig, rng: &mut Rng) -> Option<SplitGeometry> {
    let n = g.n();
    let third = n as f64 / 3.0;
    let m2 = cfg.m2 as f64;
    let s = greedy_independent(g, rng);
    if (s.len() as f64) < third - 3.0 * m2 {
        return None;
    }
    let keep = ((n / 3).saturating_sub(7 * cfg.m2)).max(1).min(s.len());
    let x1 = VertexSet::from_iter(n, s.iter().take(keep));
    let small = (cfg.m1 as f64 / 10.0).max(1.0);
    let low = |cut: f64| VertexSet::from_iter(n, (0..n).filter(|&v| !x1.contains(v) && (g.degree_into(v, &x1) as f64) <= cut));
    let x2 = x1.union(&low(small));
    let y1 = x2.complement(n);
    let y2 = y1.difference(&low(third - small.sqrt()));
    Some(SplitGeometry { x2, y1, y2 })
}

/// Absorber `A*` for every `C_4`-divisible leftover on `u`, embedded in `g` away from `G[U]`.
///
/// Fails if `g` is `m_1`-extremal, if some gadget piece cannot be placed, or if the gadgets
/// touch more than `2^{m_3²}` vertices.
pub fn build_c4_absorber(g: &Graph, u: &[usize], cfg: &EngineConfig, mut rng: Rng) -> Result<AbsorberBundle, EngineError> {
    let n = g.n();
    if let Some(w) = find_m_extremal(g, cfg.m1) {
        return Err(diag(
            "absorber: setup",
            "non-extremality check",
            format!("host is {}-extremal ({:?})", cfg.m1, w.kind),
        ));
    }
    let uset = VertexSet::from_iter(n, u.iter().copied());
    let inside = g.restricted_to(&uset);
    let avail = g.minus(&inside).expect("induced subgraph");
    let geometry = c4_geometry(g, cfg, &mut rng);
    let mut emb = Embedding::new(avail, VertexSet::new(n), rng);
    emb.geometry = geometry;
    let mut host = Host::Embedded(emb);
    let bundle = build_absorber(u, 2, &mut host)
        .map_err(|e| diag("absorber", "transforming-edge search", e.to_string()))?;
    let m3 = cfg.m3_for(2).max(u.len());
    let cap = 1u128 << (m3 * m3).min(127);
    if bundle.vertex_count() as u128 > cap {
        return Err(diag("absorber", "size bound", format!("{} vertices above 2^{}", bundle.vertex_count(), m3 * m3)));
    }
    Ok(bundle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;

    #[test]
    fn dense_clique_uses_common_neighbourhoods() {
        let g = Graph::complete(60);
        let cfg = EngineConfig::default();
        assert!(c4_geometry(&g, &cfg, &mut stream(0, "t")).is_none());
        let bundle = build_c4_absorber(&g, &[0, 1, 2, 3], &cfg, stream(1, "t")).unwrap();
        assert_eq!(bundle.entries.len(), 4);
        bundle.verify().unwrap();
        assert!(bundle.gadget_union().is_subgraph_of(&g));
    }

    #[test]
    fn tripartite_host_gets_split_geometry() {
        let n = 30;
        let mut g = Graph::complete(n);
        for a in 0..10 {
            for b in a + 1..10 {
                g.remove_edge(a, b);
            }
        }
        let geo = c4_geometry(&g, &EngineConfig::default(), &mut stream(2, "t")).unwrap();
        assert!(geo.x2.len() >= 6);
        assert_eq!(geo.x2.union(&geo.y1).len(), n);
        assert!(geo.y2.is_subset(&geo.y1));
    }

    #[test]
    fn transforming_edge_definition() {
        let g = Graph::complete(12);
        let mut emb = Embedding::new(g.clone(), VertexSet::new(12), stream(3, "t"));
        let busy = VertexSet::from_iter(12, [0, 1, 2, 3]);
        let (vx, vy) = emb.transforming_edge(&g, 0, 2, 1, 3, &busy).unwrap();
        assert!(g.has_edge(vx, 0) && g.has_edge(vx, 2));
        assert!(g.has_edge(vy, 1) && g.has_edge(vy, 3));
        assert!(g.has_edge(vx, vy));
    }
}
