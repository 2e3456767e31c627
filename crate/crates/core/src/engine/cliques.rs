//! Graphs close to two disjoint cliques, `k ≥ 4`.
//!
//! All edges between the two near-cliques are cleared into cycles first, using a handful of
//! reserved cross edges to fix `e(A)` and `e(B)` modulo `2k`. What remains is two dense
//! graphs on `A` and `B`, which are delegated.

use crate::analysis::{closeness, Objective, Search};
use crate::bitset::VertexSet;
use crate::decomposition::CycleDecomposition;
use crate::graph::Graph;
use crate::rng::{stream, Rng};

use super::cover::{cover_vertex_star, join, record, threshold, StarContext};
use super::dispatch::{delegate, Trace};
use super::greedy::greedy_approx;
use super::{diag, CoverLedger, EngineConfig, EngineError};

type Edge = (usize, usize);

/// The two sides after moving low-degree vertices of the balanced cut across.
#[derive(Clone, Debug)]
pub struct CliqueSplit {
    pub a: VertexSet,
    pub b: VertexSet,
}

/// `S' = (S ∖ S_p) ∪ T_p` with `S_p = {v ∈ S : d(v, S) ≤ p}` and `p = 11n/50`; `A` is the
/// smaller of `S'` and its complement.
pub fn clique_split(g: &Graph, s: &VertexSet) -> CliqueSplit {
    let n = g.n();
    let t = s.complement(n);
    let p = 11.0 * n as f64 / 50.0;
    let low = |side: &VertexSet| VertexSet::from_iter(n, side.iter().filter(|&v| g.degree_into(v, side) as f64 <= p));
    let mut s2 = s.difference(&low(s));
    s2.union_with(&low(&t));
    let rest = s2.complement(n);
    if s2.len() <= rest.len() {
        CliqueSplit { a: s2, b: rest }
    } else {
        CliqueSplit { a: rest, b: s2 }
    }
}

/// `2k` pairs `(e_i, f_i)` of distinct cross edges, oriented `(a, b)` with `a ∈ A`, such that
/// `e_i` and `f_i` are vertex-disjoint. The `A`-end of `e_i` is chosen with the largest
/// available degree into `A`.
pub fn reserve_cross_edges(g: &Graph, split: &CliqueSplit, k: usize) -> Result<Vec<(Edge, Edge)>, EngineError> {
    let mut cross: Vec<Edge> = g
        .bipartite_part(&split.a, &split.b)
        .edges()
        .into_iter()
        .map(|(u, v)| if split.a.contains(u) { (u, v) } else { (v, u) })
        .collect();
    cross.sort_by_key(|&(a, b)| (std::cmp::Reverse(g.degree_into(a, &split.a)), a, b));
    let mut used = vec![false; cross.len()];
    let mut out = Vec::with_capacity(2 * k);
    for i in 0..cross.len() {
        if out.len() == 2 * k {
            break;
        }
        if used[i] {
            continue;
        }
        let e = cross[i];
        let partner = (0..cross.len()).rev().find(|&j| {
            let f = cross[j];
            j != i && !used[j] && f.0 != e.0 && f.1 != e.1
        });
        if let Some(j) = partner {
            used[i] = true;
            used[j] = true;
            out.push((e, cross[j]));
        }
    }
    if out.len() < 2 * k {
        return Err(diag(
            "two cliques: reserved edges",
            "cross-edge reservation",
            format!("only {} of {} disjoint pairs among {} cross edges", out.len(), 2 * k, cross.len()),
        ));
    }
    Ok(out)
}

/// Cross edges of the residual except the reserved ones, oriented `(a, b)`.
fn open_cross(ledger: &CoverLedger, split: &CliqueSplit, reserved: &[(Edge, Edge)]) -> Graph {
    let mut g = ledger.residual.bipartite_part(&split.a, &split.b);
    for &(e, f) in reserved {
        g.remove_edge(e.0, e.1);
        g.remove_edge(f.0, f.1);
    }
    g
}

/// Clear every unreserved cross edge: greedy packing in `G[A, B]`, star covers at the
/// heavy vertices with closing paths on the far side, then pairs of leftover edges.
fn clear_cross(
    ledger: &mut CoverLedger,
    split: &CliqueSplit,
    reserved: &[(Edge, Edge)],
    k: usize,
    cfg: &EngineConfig,
    rng: &mut Rng,
) -> Result<(), EngineError> {
    let n = ledger.n();
    let len = 2 * k;
    let cross = open_cross(ledger, split, reserved);
    if cross.edge_count() % 2 != 0 {
        return Err(EngineError::Internal(format!("{} unreserved cross edges, expected an even number", cross.edge_count())));
    }
    greedy_approx(&cross, len, cfg.eta.powi(4), ledger, rng)?;
    let heavy_cut = cfg.eta.powi(2) * n as f64;
    for (side, far) in [(&split.a, &split.b), (&split.b, &split.a)] {
        let rest = open_cross(ledger, split, reserved);
        let heavy: Vec<usize> = side.iter().filter(|&v| rest.degree(v) as f64 >= heavy_cut).collect();
        let ctx = StarContext {
            allowed: far.clone(),
            sides: None,
            gamma: cfg.gamma,
        };
        for x in heavy {
            let mut work = ledger.residual.restricted_to(far);
            for v in open_cross(ledger, split, reserved).neighbors(x).iter() {
                work.add_edge(x, v);
            }
            cover_vertex_star(&mut work, x, len, &ctx, ledger, rng).map_err(|e| e.in_stage("two cliques: clearing"))?;
        }
    }
    let overuse = threshold(cfg.gamma.sqrt(), n);
    for (shared, pairs) in pair_leftover(&open_cross(ledger, split, reserved), split) {
        match (shared, pairs) {
            (Some(x), ((_, u), (_, v))) => {
                let far = if split.a.contains(x) { &split.b } else { &split.a };
                let p = join(ledger, far, u, v, len - 2, overuse, rng)
                    .ok_or_else(|| diag("two cliques: clearing", "closing path", format!("edges {x}-{u}, {x}-{v}")))?;
                record(ledger, &[&[x], &p])?;
            }
            (None, ((a1, b1), (a2, b2))) => {
                let pa = join(ledger, &split.a, a1, a2, k - 1, overuse, rng);
                let pb = join(ledger, &split.b, b2, b1, k - 1, overuse, rng);
                let (Some(pa), Some(pb)) = (pa, pb) else {
                    return Err(diag("two cliques: clearing", "closing path", format!("edges {a1}-{b1}, {a2}-{b2}")));
                };
                record(ledger, &[&pa, &pb])?;
            }
        }
    }
    Ok(())
}

/// Pair the edges of `cross`: first at shared endpoints (returned as `(Some(x), ((x, u), (x, v)))`),
/// then the remaining, pairwise vertex-disjoint edges arbitrarily as `(a, b)` pairs.
fn pair_leftover(cross: &Graph, split: &CliqueSplit) -> Vec<(Option<usize>, (Edge, Edge))> {
    let mut rest = cross.clone();
    let mut out = Vec::new();
    for side in [&split.a, &split.b] {
        for x in side.iter() {
            let nb: Vec<usize> = rest.neighbors(x).iter().collect();
            for pair in nb.chunks_exact(2) {
                rest.remove_edge(x, pair[0]);
                rest.remove_edge(x, pair[1]);
                out.push((Some(x), ((x, pair[0]), (x, pair[1]))));
            }
        }
    }
    let loose: Vec<Edge> = rest
        .edges()
        .into_iter()
        .map(|(u, v)| if split.a.contains(u) { (u, v) } else { (v, u) })
        .collect();
    for pair in loose.chunks_exact(2) {
        out.push((None, (pair[0], pair[1])));
    }
    out
}

/// Use the reserved pairs to make `e(A) ≡ 0 mod 2k`. Returns the number of `A` edges used.
fn repair_divisibility(
    ledger: &mut CoverLedger,
    split: &CliqueSplit,
    reserved: &[(Edge, Edge)],
    k: usize,
    cfg: &EngineConfig,
    rng: &mut Rng,
) -> Result<usize, EngineError> {
    let len = 2 * k;
    let before = ledger.residual.edges_within(&split.a);
    let r = before % len;
    let overuse = threshold(cfg.gamma.sqrt(), ledger.n());
    for (i, &((a1, b1), (a2, b2))) in reserved.iter().enumerate() {
        let (pa, pb) = if i < len - r { (2, len - 4) } else { (3, len - 5) };
        let path_a = join(ledger, &split.a, a1, a2, pa, overuse, rng);
        let path_b = join(ledger, &split.b, b2, b1, pb, overuse, rng);
        let (Some(path_a), Some(path_b)) = (path_a, path_b) else {
            return Err(diag(
                "two cliques: divisibility repair",
                "reserved-pair closing paths",
                format!("pair {a1}-{b1}, {a2}-{b2} with lengths ({pa}, {pb})"),
            ));
        };
        record(ledger, &[&path_a, &path_b])?;
    }
    let used = before - ledger.residual.edges_within(&split.a);
    if used != 2 * (len - r) + 3 * r || ledger.residual.edges_within(&split.a) % len != 0 {
        return Err(EngineError::Internal(format!("divisibility repair used {used} A edges with r = {r}")));
    }
    Ok(used)
}

/// Cover all edges at vertices of degree below `n/2 − 3√ε n` by stars whose closing paths
/// avoid those vertices. Returns the set covered.
fn cover_low(ledger: &mut CoverLedger, split: &CliqueSplit, k: usize, cfg: &EngineConfig, rng: &mut Rng) -> Result<VertexSet, EngineError> {
    let n = ledger.n();
    let cut = n as f64 / 2.0 - 3.0 * cfg.epsilon.sqrt() * n as f64;
    let support = ledger.residual.support();
    let low = VertexSet::from_iter(n, support.iter().filter(|&v| (ledger.residual.degree(v) as f64) < cut));
    for x in low.iter() {
        let side = if split.a.contains(x) { &split.a } else { &split.b };
        let ctx = StarContext {
            allowed: side.difference(&low),
            sides: None,
            gamma: cfg.gamma,
        };
        let mut work = ledger.residual.restricted_to(side);
        let left = cover_vertex_star(&mut work, x, 2 * k, &ctx, ledger, rng).map_err(|e| e.in_stage("two cliques: low-degree cover"))?;
        if !left.is_empty() {
            return Err(diag("two cliques: low-degree cover", "neighbourhood pairing", format!("vertex {x} keeps {} edges", left.len())));
        }
    }
    Ok(low)
}

pub(crate) fn two_cliques_at(g: &Graph, k: usize, s: &VertexSet, cfg: &EngineConfig, trace: &mut Trace) -> Result<CycleDecomposition, EngineError> {
    if k < 4 {
        return Err(diag("two cliques", "parameter check", format!("k = {k}; this pipeline needs k >= 4")));
    }
    let n = g.n();
    let len = 2 * k;
    let mut rng = stream(cfg.seed, "engine/two-cliques");
    let split = clique_split(g, s);
    let floor = [&split.a, &split.b]
        .iter()
        .flat_map(|side| side.iter().map(|v| g.degree_into(v, side)))
        .min()
        .unwrap_or(0);
    trace.note(format!("split |A| = {}, |B| = {}, min inside degree {floor}", split.a.len(), split.b.len()));
    if (floor as f64) < n as f64 / 5.0 {
        trace.note(format!("inside degree {floor} is below n/5 = {:.1}", n as f64 / 5.0));
    }
    let cross_total = g.edges_between(&split.a, &split.b);
    if cross_total % 2 != 0 {
        return Err(EngineError::Internal(format!("e(A, B) = {cross_total} is odd in a 2-divisible graph")));
    }
    let reserved = reserve_cross_edges(g, &split, k)?;
    let mut ledger = CoverLedger::new(g, len);
    clear_cross(&mut ledger, &split, &reserved, k, cfg, &mut rng)?;
    trace.note(format!("cleared cross edges with {} cycles", ledger.removed.len()));
    let used = repair_divisibility(&mut ledger, &split, &reserved, k, cfg, &mut rng)?;
    trace.note(format!("divisibility repair used {used} edges inside A"));
    if ledger.residual.edges_between(&split.a, &split.b) != 0 {
        return Err(EngineError::Internal("cross edges remain after clearing".into()));
    }
    let low = cover_low(&mut ledger, &split, k, cfg, &mut rng)?;
    trace.note(format!("covered the edges at {} low-degree vertices", low.len()));
    let piece_a = ledger.residual.restricted_to(&split.a);
    let piece_b = ledger.residual.restricted_to(&split.b);
    for s in ledger.stages.drain(..) {
        trace.note(s);
    }
    let mut d = ledger.into_decomposition()?;
    d.extend(delegate(&piece_a, k, cfg, trace, "two cliques: side A")?);
    d.extend(delegate(&piece_b, k, cfg, trace, "two cliques: side B")?);
    Ok(d)
}

/// Decompose a graph close to two disjoint cliques into `2k`-cycles.
pub fn decompose_two_cliques(g: &Graph, k: usize, cfg: &EngineConfig) -> Result<CycleDecomposition, EngineError> {
    if g.n() < 2 {
        return Err(diag("two cliques", "parameter check", "graph has fewer than two vertices"));
    }
    let c = closeness(g, Objective::Cut, Search::Auto { seed: cfg.seed });
    let mut trace = Trace { depth: 0, log: Vec::new() };
    two_cliques_at(g, k, &c.set, cfg, &mut trace)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two copies of `K_31` joined by a 2-regular cross graph: 62 vertices, 992 edges.
    fn joined_cliques() -> (Graph, VertexSet) {
        let h = 31;
        let mut g = Graph::new(2 * h);
        for side in 0..2 {
            for u in 0..h {
                for v in u + 1..h {
                    g.add_edge(side * h + u, side * h + v);
                }
            }
        }
        for i in 0..h {
            g.add_edge(i, h + i);
            g.add_edge(i, h + (i + 1) % h);
        }
        (g, VertexSet::from_iter(2 * h, 0..h))
    }

    #[test]
    fn split_keeps_the_natural_sides() {
        let (g, s) = joined_cliques();
        let split = clique_split(&g, &s);
        assert_eq!(split.a.len(), 31);
        assert!(split.a == s || split.b == s);
    }

    #[test]
    fn reserved_pairs_are_distinct_and_disjoint() {
        let (g, s) = joined_cliques();
        let split = clique_split(&g, &s);
        let r = reserve_cross_edges(&g, &split, 4).unwrap();
        assert_eq!(r.len(), 8);
        let mut seen = std::collections::HashSet::new();
        for &(e, f) in &r {
            assert!(split.a.contains(e.0) && split.a.contains(f.0));
            assert!(e.0 != f.0 && e.1 != f.1);
            assert!(seen.insert(e) && seen.insert(f));
        }
    }

    #[test]
    fn repair_consumes_the_stated_number_of_edges() {
        let (g, s) = joined_cliques();
        let split = clique_split(&g, &s);
        let reserved = reserve_cross_edges(&g, &split, 4).unwrap();
        let cfg = EngineConfig::default();
        let mut rng = stream(5, "t");
        let mut ledger = CoverLedger::new(&g, 8);
        clear_cross(&mut ledger, &split, &reserved, 4, &cfg, &mut rng).unwrap();
        let r = ledger.residual.edges_within(&split.a) % 8;
        let used = repair_divisibility(&mut ledger, &split, &reserved, 4, &cfg, &mut rng).unwrap();
        assert_eq!(used, 2 * (8 - r) + 3 * r);
        assert_eq!(ledger.residual.edges_between(&split.a, &split.b), 0);
        assert_eq!(ledger.residual.edges_within(&split.b) % 8, 0);
        assert!(ledger.residual.odd_vertices().is_empty());
        ledger.into_decomposition().unwrap();
    }

    #[test]
    fn rejects_short_cycles() {
        let (g, s) = joined_cliques();
        let mut trace = Trace { depth: 0, log: Vec::new() };
        assert!(two_cliques_at(&g, 2, &s, &EngineConfig::default(), &mut trace).is_err());
    }
}
