//! Covering everything outside a small set, and its iteration over a vortex.

use crate::analysis::Vortex;
use crate::bitset::VertexSet;
use crate::graph::Graph;
use crate::rng::Rng;

use super::cover::{bound_max_degree, cover_sparse, cover_vertex_star, equipartition, sample_partition, CoverFlavor, StarContext};
use super::{diag, intersect, CoverLedger, EngineConfig, EngineError};

/// Result of a [`cover_down`] call that covered every edge outside `U`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverDownReport {
    /// Maximum degree of the covering cycles inside `U`.
    pub intrusion: usize,
    pub intrusion_bound: f64,
}

impl CoverDownReport {
    /// Diagnostic when the cycles used more of `G[U]` than the bound allows.
    pub fn check(&self) -> Result<(), EngineError> {
        if self.intrusion as f64 > self.intrusion_bound + 1e-9 {
            return Err(diag(
                "cover down: intrusion",
                "cover down",
                format!("cycles use degree {} inside U, bound {:.2}", self.intrusion, self.intrusion_bound),
            ));
        }
        Ok(())
    }
}

/// Allowed intrusion into `U` for a flavor.
pub fn intrusion_bound(flavor: &CoverFlavor, u_size: usize, cfg: &EngineConfig) -> f64 {
    match flavor {
        CoverFlavor::Expander { nu } => nu * nu * u_size as f64 / 4.0,
        CoverFlavor::MinDegree | CoverFlavor::Bipartite(_) => cfg.mu.powi(3) * u_size as f64,
    }
}

/// Remove cycles covering every edge of `g` outside `g[U]`. `g` must be a subgraph of the
/// ledger's residual and every vertex outside `U` must have even degree in `g`.
///
/// Phase 1 splits `U` into `M = C(m+1, 2)` parts and `W = V \ U` into `m = ⌈1/ξ⌉` parts,
/// reserves `R_i = g[V_i, V(G_W^i)]` and bounds the degree of `g - g[U] - R`. Phase 2 uses
/// each `V_i` to complete the leftover edges inside `W` that belong to the `i`-th piece.
/// Phase 3 pairs the remaining neighbours of each `w ∈ W` through paths inside `U`.
pub fn cover_down(
    g: &Graph,
    u: &VertexSet,
    len: usize,
    flavor: &CoverFlavor,
    cfg: &EngineConfig,
    ledger: &mut CoverLedger,
    rng: &mut Rng,
) -> Result<CoverDownReport, EngineError> {
    let n = g.n();
    let bound = intrusion_bound(flavor, u.len(), cfg);
    let w = g.support().difference(u);
    if w.is_empty() {
        return Ok(CoverDownReport {
            intrusion: 0,
            intrusion_bound: bound,
        });
    }
    if let Some(x) = w.iter().find(|&x| g.degree(x) % 2 == 1) {
        return Err(diag("cover down: setup", "cover down", format!("vertex {x} outside U has odd degree")));
    }
    let inside = g.restricted_to(u);

    // phase 1
    let m = (1.0 / cfg.xi).ceil() as usize;
    let big_m = m * (m + 1) / 2;
    let (v_parts, slack) = sample_partition(g, u, big_m, flavor, cfg, rng);
    if slack < 0.0 {
        ledger.note(format!("cover down: best partition of U misses its degree conditions by {:.3}", -slack));
    }
    let w_parts = equipartition(&w, m, flavor.sides(), rng);
    let mut pieces = Vec::with_capacity(big_m);
    for a in 0..m {
        for b in a..m {
            pieces.push((a, b));
        }
    }
    let mut reserved = Graph::new(n);
    let mut piece_sets = Vec::with_capacity(big_m);
    for (i, &(a, b)) in pieces.iter().enumerate() {
        let span = w_parts[a].union(&w_parts[b]);
        for (x, y) in g.bipartite_part(&v_parts[i], &span).edges() {
            reserved.add_edge(x, y);
        }
        piece_sets.push(span);
    }
    let g1 = g.minus(&inside).and_then(|h| h.minus(&reserved)).map_err(|e| EngineError::Internal(e.to_string()))?;
    let cap = (cfg.gamma * n as f64).ceil() as usize;
    let report = bound_max_degree(&g1, len, cap, flavor, cfg, ledger, rng)
        .map_err(|e| e.in_stage("cover down: degree bounding"))?;
    let h = report.remainder;

    // phase 2
    for (i, &(a, b)) in pieces.iter().enumerate() {
        let mut hi = Graph::new(n);
        for (x, y) in h.edges() {
            let (xa, ya) = (w_parts[a].contains(x), w_parts[a].contains(y));
            let (xb, yb) = (w_parts[b].contains(x), w_parts[b].contains(y));
            let hit = if a == b { xa && ya } else { (xa && yb) || (xb && ya) };
            if hit {
                hi.add_edge(x, y);
            }
        }
        if hi.edge_count() == 0 {
            continue;
        }
        let base = inside.restricted_to(&v_parts[i]).union(&reserved.bipartite_part(&v_parts[i], &piece_sets[i]));
        let mut work = intersect(&base, &ledger.residual).union(&hi);
        cover_sparse(&mut work, &piece_sets[i], &v_parts[i], &hi, len, cfg, ledger, rng)
            .map_err(|e| e.in_stage("cover down: sparse cover"))?;
    }
    let mut rest = intersect(g, &ledger.residual);
    if rest.edges_within(&w) != 0 {
        return Err(EngineError::Internal("edges inside W survived the sparse cover".into()));
    }

    // phase 3
    let ctx = StarContext {
        allowed: u.clone(),
        sides: flavor.sides().cloned(),
        gamma: cfg.gamma,
    };
    for x in w.iter() {
        if rest.degree(x) == 0 {
            continue;
        }
        let left = cover_vertex_star(&mut rest, x, len, &ctx, ledger, rng).map_err(|e| e.in_stage("cover down: pairing"))?;
        if !left.is_empty() {
            return Err(diag("cover down: pairing", "cover down", format!("vertex {x} kept {} edges", left.len())));
        }
    }
    let rest = intersect(g, &ledger.residual);
    if rest.edge_count() != rest.edges_within(u) {
        return Err(EngineError::Internal("residual left an edge outside U".into()));
    }
    let used_inside = inside.minus(&rest.restricted_to(u)).map_err(|e| EngineError::Internal(e.to_string()))?;
    Ok(CoverDownReport {
        intrusion: used_inside.max_degree(),
        intrusion_bound: bound,
    })
}

/// Apply [`cover_down`] level by level. Returns the leftover of `g`, which lies inside the
/// terminal level; with a single-level vortex the leftover is `g`.
pub fn near_optimal(
    g: &Graph,
    vortex: &Vortex,
    len: usize,
    flavor: &CoverFlavor,
    cfg: &EngineConfig,
    ledger: &mut CoverLedger,
    rng: &mut Rng,
) -> Result<Graph, EngineError> {
    let depth = vortex.depth();
    for i in 1..=depth {
        let current = intersect(g, &ledger.residual).restricted_to(&vortex.levels[i - 1]);
        let work = match vortex.levels.get(i + 1) {
            Some(next) => current
                .minus(&current.restricted_to(next))
                .map_err(|e| EngineError::Internal(e.to_string()))?,
            None => current,
        };
        let report = cover_down(&work, &vortex.levels[i], len, flavor, cfg, ledger, rng)
            .map_err(|e| e.in_stage(&format!("vortex level {i}")))?;
        if let Err(e) = report.check() {
            ledger.note(format!("level {i}: {e}"));
        }
    }
    Ok(intersect(g, &ledger.residual))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{vortex_sample, VortexFlavor};
    use crate::rng::stream;

    #[test]
    fn whole_set_is_a_no_op() {
        let g = Graph::complete(12);
        let mut l = CoverLedger::new(&g, 4);
        let r = cover_down(&g, &VertexSet::full(12), 4, &CoverFlavor::MinDegree, &EngineConfig::default(), &mut l, &mut stream(0, "t")).unwrap();
        assert_eq!(r.intrusion, 0);
        assert!(l.removed.is_empty());
    }

    #[test]
    fn clique_covers_down_for_c4() {
        let g = Graph::complete(81);
        let u = VertexSet::from_iter(81, 0..40);
        let mut l = CoverLedger::new(&g, 4);
        let cfg = EngineConfig::default();
        match cover_down(&g, &u, 4, &CoverFlavor::MinDegree, &cfg, &mut l, &mut stream(1, "t")) {
            Ok(_) => {
                let rest = l.residual.clone();
                assert_eq!(rest.edge_count(), rest.edges_within(&u));
            }
            Err(EngineError::Stage(_)) => {}
            Err(e) => panic!("{e}"),
        }
        for v in 0..81 {
            assert_eq!(l.residual.degree(v) % 2, 0);
        }
        l.into_decomposition().unwrap();
    }

    #[test]
    fn zero_depth_vortex_leaves_graph() {
        let g = Graph::complete(5);
        let v = vortex_sample(&g, VortexFlavor::MinDegree { delta: 1.0 }, 0.25, 10, 0, 5).unwrap();
        let mut l = CoverLedger::new(&g, 4);
        let left = near_optimal(&g, &v, 4, &CoverFlavor::MinDegree, &EngineConfig::default(), &mut l, &mut stream(2, "t")).unwrap();
        assert_eq!(left, g);
    }
}
