//! Graphs close to bipartite, `k ≥ 4`.
//!
//! The balanced split with few inside edges is adjusted so that every vertex has high degree
//! across. Vertices with low degree to both sides are cleared by stars; inside edges are
//! then packed greedily, cleared by stars at high inside degree and finally paired through
//! cross paths. The bipartite remainder goes to the bipartite pipeline.

use crate::analysis::{closeness, Objective, Search};
use crate::bitset::VertexSet;
use crate::decomposition::CycleDecomposition;
use crate::graph::{Bipartition, Graph};
use crate::paths::PathQuery;
use crate::rng::{stream, Rng};

use super::cover::{cover_vertex_star, record, route, threshold, StarContext};
use super::dispatch::{delegate_bipartite, Trace};
use super::greedy::greedy_approx;
use super::{diag, CoverLedger, EngineConfig, EngineError};

/// Adjusted split `S', T'` and the vertices `X_0` that belong to neither side.
#[derive(Clone, Debug)]
pub struct BipartiteSplit {
    pub s: VertexSet,
    pub t: VertexSet,
    pub x0: VertexSet,
}

/// Move vertices of low cross degree to the side they have fewer neighbours in.
///
/// `X = {x : d_{G[S,T]}(x) < n/2 − √ε n}`; `x ∈ X` joins `S'` when `d(x, S) < 5n/12`.
/// `X_0` collects the vertices of `X` with fewer than `5n/12` neighbours on both sides.
pub fn bipartite_split(g: &Graph, s: &VertexSet, epsilon: f64) -> BipartiteSplit {
    let n = g.n();
    let nf = n as f64;
    let t = s.complement(n);
    let cut = nf / 2.0 - epsilon.sqrt() * nf;
    let low = 5.0 * nf / 12.0;
    let cross = g.bipartite_part(s, &t);
    let x: Vec<usize> = (0..n).filter(|&v| g.degree(v) > 0 && (cross.degree(v) as f64) < cut).collect();
    let mut s2 = s.clone();
    let mut x0 = VertexSet::new(n);
    for &v in &x {
        let (ds, dt) = (g.degree_into(v, s) as f64, g.degree_into(v, &t) as f64);
        if ds < low {
            s2.insert(v);
            if dt < low {
                x0.insert(v);
            }
        } else {
            s2.remove(v);
        }
    }
    let t2 = s2.complement(n);
    BipartiteSplit { s: s2, t: t2, x0 }
}

/// Path of length `len` from `from` to `to` whose first interior vertex lies in `first`
/// and whose interior avoids `banned`.
fn path_starting_in(
    ledger: &CoverLedger,
    from: usize,
    to: usize,
    len: usize,
    first: &VertexSet,
    banned: &VertexSet,
    overuse: u32,
    rng: &mut Rng,
) -> Option<Vec<usize>> {
    let n = ledger.n();
    let ok = VertexSet::full(n).difference(banned).difference(&ledger.overused(overuse));
    let head = ok.intersection(first);
    let mut layers: Vec<&VertexSet> = vec![&ok; len - 1];
    layers[0] = &head;
    PathQuery::new(&ledger.residual).with_load(&ledger.load).find(from, to, &layers, rng)
}

/// Flip the parity of `d(x, S')` with one cycle through an `S'` edge `xy` and an inside edge
/// `uv` away from `x`; the cycle leaves `x` again towards `T'`.
fn fix_parity(
    ledger: &mut CoverLedger,
    x: usize,
    split: &BipartiteSplit,
    exceptional: &VertexSet,
    k: usize,
    overuse: u32,
    rng: &mut Rng,
) -> Result<(), EngineError> {
    let res = &ledger.residual;
    let mut inside: Vec<(usize, usize)> = res.restricted_to(&split.s).edges();
    inside.extend(res.restricted_to(&split.t).edges());
    inside.retain(|&(u, v)| u != x && v != x);
    let ys: Vec<usize> = res.neighbors(x).intersection(&split.s).difference(exceptional).iter().collect();
    for &(u, v) in inside.iter().take(64) {
        for &y in ys.iter().filter(|&&y| y != u && y != v).take(8) {
            let mut banned = exceptional.clone();
            for w in [x, y, u, v] {
                banned.insert(w);
            }
            let in_s = split.s.contains(u);
            // u, v in S': y ~ .. ~ u by 2, v ~ .. ~ x by 2k−4; otherwise two paths of k−1
            let (l1, l2) = if in_s { (2, 2 * k - 4) } else { (k - 1, k - 1) };
            let (a, b) = if in_s { (u, v) } else { (v, u) };
            let all = VertexSet::full(ledger.n());
            let Some(p1) = path_starting_in(ledger, y, a, l1, &all, &banned, overuse, rng) else {
                continue;
            };
            let mut banned2 = banned.clone();
            for &w in &p1 {
                banned2.insert(w);
            }
            // the closing path is found backwards from x so its first step goes into T'
            let Some(mut p2) = path_starting_in(ledger, x, b, l2, &split.t, &banned2, overuse, rng) else {
                continue;
            };
            p2.reverse();
            // x, y ..p1.. a, b ..p2.. (ends at x, dropped)
            let closing = &p2[..p2.len() - 1];
            record(ledger, &[&[x], &p1, closing])?;
            return Ok(());
        }
    }
    Err(diag(
        "bipartite-like: exceptional vertices",
        "parity-fixing cycle",
        format!("vertex {x}"),
    ))
}

/// Cover every edge at the vertices of `X_0`.
fn clear_exceptional(ledger: &mut CoverLedger, split: &BipartiteSplit, k: usize, cfg: &EngineConfig, rng: &mut Rng) -> Result<(), EngineError> {
    let n = ledger.n();
    let overuse = threshold(cfg.epsilon.cbrt() / 2.0, n);
    let sides = Bipartition::new(split.s.clone(), split.t.clone());
    for x in split.x0.iter() {
        if ledger.residual.degree_into(x, &split.s) % 2 == 1 {
            fix_parity(ledger, x, split, &split.x0, k, overuse, rng)?;
        }
        let mut work = ledger.residual.bipartite_part(&split.s, &split.t);
        for v in ledger.residual.neighbors(x).iter() {
            work.add_edge(x, v);
        }
        let ctx = StarContext {
            allowed: VertexSet::full(n).difference(&split.x0),
            sides: Some(sides.clone()),
            gamma: cfg.epsilon.cbrt().powi(2) / 4.0,
        };
        let left = cover_vertex_star(&mut work, x, 2 * k, &ctx, ledger, rng).map_err(|e| e.in_stage("bipartite-like: exceptional vertices"))?;
        if !left.is_empty() {
            return Err(diag("bipartite-like: exceptional vertices", "neighbourhood pairing", format!("vertex {x} keeps {} edges", left.len())));
        }
    }
    Ok(())
}

/// Star covers at vertices of high inside degree, closing paths in `G[A, B]`.
fn clear_heavy(ledger: &mut CoverLedger, a: &VertexSet, b: &VertexSet, k: usize, cfg: &EngineConfig, rng: &mut Rng) -> Result<(), EngineError> {
    let n = ledger.n();
    let cut = cfg.epsilon.sqrt() * n as f64;
    let both = a.union(b);
    for side in [a, b] {
        let heavy: Vec<usize> = side.iter().filter(|&v| ledger.residual.degree_into(v, side) as f64 >= cut).collect();
        for x in heavy {
            let mut work = ledger.residual.bipartite_part(a, b);
            let other = if side == a { b } else { a };
            for v in other.iter() {
                work.remove_edge(x, v);
            }
            for v in ledger.residual.neighbors(x).intersection(side).iter() {
                work.add_edge(x, v);
            }
            let ctx = StarContext {
                allowed: both.clone(),
                sides: None,
                gamma: cfg.epsilon.cbrt().powi(2),
            };
            cover_vertex_star(&mut work, x, 2 * k, &ctx, ledger, rng).map_err(|e| e.in_stage("bipartite-like: heavy vertices"))?;
        }
    }
    Ok(())
}

/// Pair the remaining inside edges and close each pair through cross paths of the right
/// parity: even between vertices on one side, odd across.
fn pair_inside(ledger: &mut CoverLedger, a: &VertexSet, b: &VertexSet, k: usize, cfg: &EngineConfig, rng: &mut Rng) -> Result<usize, EngineError> {
    let n = ledger.n();
    let len = 2 * k;
    let overuse = threshold(2.0 * cfg.epsilon.cbrt(), n);
    let both = a.union(b);
    let mut edges = ledger.residual.restricted_to(a).edges();
    edges.extend(ledger.residual.restricted_to(b).edges());
    if edges.len() % 2 != 0 {
        return Err(EngineError::Internal(format!("{} inside edges left, expected an even number", edges.len())));
    }
    let pairs = edges.len() / 2;
    for pair in edges.chunks_exact(2) {
        let ((u1, v1), (u2, v2)) = (pair[0], pair[1]);
        let cross = |ledger: &CoverLedger| ledger.residual.bipartite_part(a, b);
        let shared = [u1, v1].into_iter().find(|&w| w == u2 || w == v2);
        let fail = || diag("bipartite-like: inside edges", "closing path", format!("edges {u1}-{v1}, {u2}-{v2}"));
        if let Some(x) = shared {
            let p = if u1 == x { v1 } else { u1 };
            let q = if u2 == x { v2 } else { u2 };
            let mut allowed = both.clone();
            allowed.remove(x);
            let path = route(ledger, &cross(ledger), p, q, len - 2, &allowed, overuse, rng).ok_or_else(fail)?;
            record(ledger, &[&[x], &path])?;
            continue;
        }
        let same = a.contains(u1) == a.contains(u2);
        let (l1, l2) = if same { (2, len - 4) } else { (3, len - 5) };
        let mut allowed = both.clone();
        for w in [u1, v1, u2, v2] {
            allowed.remove(w);
        }
        let p1 = route(ledger, &cross(ledger), v1, u2, l1, &allowed, overuse, rng).ok_or_else(fail)?;
        for &w in &p1 {
            allowed.remove(w);
        }
        let p2 = route(ledger, &cross(ledger), v2, u1, l2, &allowed, overuse, rng).ok_or_else(fail)?;
        // u1 v1 ..p1.. u2 v2 ..p2.. (ends at u1, dropped)
        record(ledger, &[&[u1], &p1, &p2[..p2.len() - 1]])?;
    }
    Ok(pairs)
}

pub(crate) fn bipartite_like_at(
    g: &Graph,
    k: usize,
    s: &VertexSet,
    cfg: &EngineConfig,
    trace: &mut Trace,
) -> Result<CycleDecomposition, EngineError> {
    if k < 4 {
        return Err(diag("bipartite-like", "parameter check", format!("k = {k}; this pipeline needs k >= 4")));
    }
    let n = g.n();
    let len = 2 * k;
    let mut rng = stream(cfg.seed, "engine/bipartite-like");
    let split = bipartite_split(g, s, cfg.epsilon);
    trace.note(format!(
        "split |S'| = {}, |T'| = {}, {} vertices on neither side",
        split.s.len(),
        split.t.len(),
        split.x0.len()
    ));
    let inside = g.edges_within(&split.s) + g.edges_within(&split.t);
    if g.edges_between(&split.s, &split.t) % 2 != 0 || inside % 2 != 0 {
        return Err(EngineError::Internal("cross or inside edge count is odd in a divisible graph".into()));
    }
    let mut ledger = CoverLedger::new(g, len);
    clear_exceptional(&mut ledger, &split, k, cfg, &mut rng)?;
    let a = split.s.difference(&split.x0);
    let b = split.t.clone();
    let both = a.union(&b);
    let floor = both
        .iter()
        .filter(|&v| ledger.residual.degree(v) > 0)
        .map(|v| ledger.residual.degree_into(v, if a.contains(v) { &b } else { &a }))
        .min()
        .unwrap_or(0);
    trace.note(format!("cross minimum degree {floor} after clearing (n/3 = {:.1})", n as f64 / 3.0));
    let mut inner = ledger.residual.restricted_to(&a);
    inner = inner.union(&ledger.residual.restricted_to(&b));
    greedy_approx(&inner, len, cfg.epsilon, &mut ledger, &mut rng)?;
    clear_heavy(&mut ledger, &a, &b, k, cfg, &mut rng)?;
    let pairs = pair_inside(&mut ledger, &a, &b, k, cfg, &mut rng)?;
    trace.note(format!("closed {pairs} pairs of inside edges"));
    let rest = ledger.residual.clone();
    if rest.edges_within(&a) + rest.edges_within(&b) != 0 || !rest.odd_vertices().is_empty() {
        return Err(EngineError::Internal("remainder is not an even bipartite graph".into()));
    }
    for (side, other) in [(&a, &b), (&b, &a)] {
        if let Some(v) = side.iter().find(|&v| rest.degree_into(v, other) % 2 != 0) {
            return Err(EngineError::Internal(format!("vertex {v} has odd degree across")));
        }
    }
    for s in ledger.stages.drain(..) {
        trace.note(s);
    }
    let sides = Bipartition::new(a.clone(), a.complement(n));
    let mut d = ledger.into_decomposition()?;
    d.extend(delegate_bipartite(&rest, &sides, k, cfg, trace, "bipartite-like: bipartite remainder")?);
    Ok(d)
}

/// Decompose a graph close to bipartite into `2k`-cycles.
pub fn decompose_bipartite_like(g: &Graph, k: usize, cfg: &EngineConfig) -> Result<CycleDecomposition, EngineError> {
    if g.n() < 2 {
        return Err(diag("bipartite-like", "parameter check", "graph has fewer than two vertices"));
    }
    let c = closeness(g, Objective::Inside, Search::Auto { seed: cfg.seed });
    let mut trace = Trace { depth: 0, log: Vec::new() };
    bipartite_like_at(g, k, &c.set, cfg, &mut trace)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `K_{m,m}` plus a few inside edges forming even cycles on each side.
    fn perturbed(m: usize) -> (Graph, VertexSet) {
        let mut g = Graph::complete_bipartite(m, m);
        for c in [[0, 1, 2, 3], [m, m + 1, m + 2, m + 3]] {
            for i in 0..4 {
                g.add_edge(c[i], c[(i + 1) % 4]);
            }
        }
        (g, VertexSet::from_iter(2 * m, 0..m))
    }

    #[test]
    fn split_of_a_balanced_graph_is_unchanged() {
        let (g, s) = perturbed(20);
        let split = bipartite_split(&g, &s, 0.01);
        assert_eq!(split.s, s);
        assert!(split.x0.is_empty());
    }

    #[test]
    fn inside_edges_are_cleared_with_even_parity() {
        let (g, s) = perturbed(20);
        let cfg = EngineConfig::default();
        let split = bipartite_split(&g, &s, cfg.epsilon);
        let mut ledger = CoverLedger::new(&g, 8);
        let mut rng = stream(3, "t");
        let b = split.t.clone();
        let pairs = pair_inside(&mut ledger, &split.s, &b, 4, &cfg, &mut rng).unwrap();
        assert_eq!(pairs, 4);
        assert_eq!(ledger.residual.edges_within(&split.s) + ledger.residual.edges_within(&b), 0);
        assert!(ledger.residual.odd_vertices().is_empty());
        assert_eq!(ledger.removed.len(), 4);
        ledger.into_decomposition().unwrap();
    }

    #[test]
    fn odd_count_of_inside_edges_is_reported() {
        let (mut g, s) = perturbed(10);
        g.add_edge(4, 5);
        let mut ledger = CoverLedger::new(&g, 8);
        let cfg = EngineConfig::default();
        let b = s.complement(20);
        let r = pair_inside(&mut ledger, &s, &b, 4, &cfg, &mut stream(1, "t"));
        assert!(matches!(r, Err(EngineError::Internal(_))));
    }
}
