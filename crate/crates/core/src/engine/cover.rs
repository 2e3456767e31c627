//! Path systems and the covering steps built on them.

use rand::seq::SliceRandom;

use crate::analysis::robust_neighborhood;
use crate::bitset::VertexSet;
use crate::graph::{Bipartition, Graph};
use crate::paths::{path_edges, PathQuery};
use crate::rng::Rng;

use super::design::clique_design;
use super::greedy::greedy_approx;
use super::{diag, CoverLedger, EngineConfig, EngineError};

/// Which density hypothesis a covering stage works under.
#[derive(Clone, Debug, PartialEq)]
pub enum CoverFlavor {
    /// Neighbourhoods are `ν`-expanding.
    Expander { nu: f64 },
    /// Plain minimum degree (the `C_4` case).
    MinDegree,
    /// Bipartite host; degrees are measured into the opposite side.
    Bipartite(Bipartition),
}

impl CoverFlavor {
    pub fn sides(&self) -> Option<&Bipartition> {
        match self {
            CoverFlavor::Bipartite(p) => Some(p),
            _ => None,
        }
    }
}

pub(crate) fn threshold(frac: f64, scale: usize) -> u32 {
    ((frac * scale as f64).ceil() as u32).max(1)
}

/// One path of length `len` in `avail` whose interior lies in `allowed` and avoids the
/// ledger's overused vertices. Lower-load vertices are tried first.
fn route_strict(
    ledger: &CoverLedger,
    avail: &Graph,
    from: usize,
    to: usize,
    len: usize,
    allowed: &VertexSet,
    overuse: u32,
    rng: &mut Rng,
) -> Option<Vec<usize>> {
    let ok = allowed.difference(&ledger.overused(overuse));
    PathQuery::new(avail).with_load(&ledger.load).find_in(from, to, len, &ok, rng)
}

/// As [`route_strict`], but when the load cap blocks every path the cap is dropped and only
/// the load ordering remains. At desk scale the caps are far below what the covering steps
/// need.
pub(crate) fn route(
    ledger: &CoverLedger,
    avail: &Graph,
    from: usize,
    to: usize,
    len: usize,
    allowed: &VertexSet,
    overuse: u32,
    rng: &mut Rng,
) -> Option<Vec<usize>> {
    route_strict(ledger, avail, from, to, len, allowed, overuse, rng)
        .or_else(|| PathQuery::new(avail).with_load(&ledger.load).find_in(from, to, len, allowed, rng))
}

/// Path of length `len` inside `within` in the residual, avoiding overloaded vertices.
pub(crate) fn join(ledger: &CoverLedger, within: &VertexSet, from: usize, to: usize, len: usize, overuse: u32, rng: &mut Rng) -> Option<Vec<usize>> {
    let avail = ledger.residual.restricted_to(within);
    route(ledger, &avail, from, to, len, within, overuse, rng)
}

/// Remove the cycle formed by concatenating `parts`, recording path interiors as load.
pub(crate) fn record(ledger: &mut CoverLedger, parts: &[&[usize]]) -> Result<(), EngineError> {
    let mut c = Vec::new();
    for p in parts {
        if p.len() > 2 {
            ledger.add_load(&p[1..p.len() - 1]);
        }
        c.extend_from_slice(p);
    }
    ledger.remove_cycle(c)
}

/// Edge-disjoint paths of length `len` joining each pair, with interiors in `allowed`.
///
/// Interiors avoid vertices already used `√γ·|allowed|` times. Path edges are removed from
/// `avail` and interior loads recorded. Fails on the first pair that cannot be joined or if
/// the union of the paths has maximum degree above `γ^{1/3}·|allowed|`.
pub fn find_paths(
    avail: &mut Graph,
    pairs: &[(usize, usize)],
    len: usize,
    allowed: &VertexSet,
    gamma: f64,
    ledger: &mut CoverLedger,
    rng: &mut Rng,
) -> Result<Vec<Vec<usize>>, EngineError> {
    let scale = allowed.len().max(1);
    let overuse = threshold(gamma.sqrt(), scale);
    let mut union = Graph::new(avail.n());
    let mut out = Vec::with_capacity(pairs.len());
    for &(x, y) in pairs {
        let p = route_strict(ledger, avail, x, y, len, allowed, overuse, rng)
            .ok_or_else(|| diag("path system", "bounded-reuse path finding", format!("pair ({x}, {y})")))?;
        for (a, b) in path_edges(&p) {
            avail.remove_edge(a, b);
            union.add_edge(a, b);
        }
        ledger.add_load(&p[1..p.len() - 1]);
        out.push(p);
    }
    let cap = gamma.cbrt() * scale as f64;
    let top = union.max_degree();
    if top as f64 > cap {
        return Err(diag(
            "path system",
            "bounded-reuse path finding",
            format!("path union has maximum degree {top} above {cap:.1}"),
        ));
    }
    Ok(out)
}

/// Where the closing paths of a star cover may run.
#[derive(Clone, Debug)]
pub struct StarContext {
    /// Interior vertices of the closing paths.
    pub allowed: VertexSet,
    /// With a bipartition, neighbours are paired within their side.
    pub sides: Option<Bipartition>,
    /// Load cap as a fraction of `|allowed|`.
    pub gamma: f64,
}

/// Cover all but at most one edge at `x` per side class by `L`-cycles `x a P b x`, where
/// `P` is a path of length `L-2` from `a` to `b` in `work` with interior in the context.
/// Returns the neighbours left unpaired.
pub fn cover_vertex_star(
    work: &mut Graph,
    x: usize,
    len: usize,
    ctx: &StarContext,
    ledger: &mut CoverLedger,
    rng: &mut Rng,
) -> Result<Vec<usize>, EngineError> {
    let overuse = threshold(ctx.gamma.sqrt(), ctx.allowed.len().max(1));
    let mut allowed = ctx.allowed.clone();
    allowed.remove(x);
    let mut nbrs: Vec<usize> = work.neighbors(x).iter().collect();
    nbrs.shuffle(rng);
    let classes: Vec<Vec<usize>> = match &ctx.sides {
        Some(p) => (0..2u8).map(|s| nbrs.iter().copied().filter(|&v| p.side_of(v) == s).collect()).collect(),
        None => vec![nbrs],
    };
    let mut left = Vec::new();
    for mut class in classes {
        let odd = class.len() % 2;
        let mut unpaired = Vec::new();
        while let Some(a) = class.pop() {
            let mut done = false;
            for i in (0..class.len()).rev().take(24) {
                let b = class[i];
                let Some(p) = route(ledger, work, a, b, len - 2, &allowed, overuse, rng) else {
                    continue;
                };
                class.swap_remove(i);
                ledger.add_load(&p[1..p.len() - 1]);
                let mut c = vec![x];
                c.extend(p);
                ledger.take(work, c)?;
                done = true;
                break;
            }
            if !done {
                unpaired.push(a);
            }
        }
        if unpaired.len() > odd {
            return Err(diag(
                "star cover",
                "neighbourhood pairing",
                format!("vertex {x}: {} neighbours could not be paired", unpaired.len()),
            ));
        }
        left.extend(unpaired);
    }
    Ok(left)
}

/// Approximate decomposition of `g` that keeps the remainder light at the vertices of `x`.
///
/// Edges inside `x` are closed by paths of length `L-1` outside `x`, the remaining edges at
/// each vertex of `x` are paired through paths of length `L-2` outside `x`, and the rest is
/// packed greedily. Returns the remainder `H` and `Y = {v : d_H(v) > η|g|}`.
pub fn careofbad(
    g: &Graph,
    x: &VertexSet,
    len: usize,
    cfg: &EngineConfig,
    ledger: &mut CoverLedger,
    rng: &mut Rng,
) -> Result<(Graph, VertexSet), EngineError> {
    // loads count uses within this call only
    let saved = std::mem::replace(&mut ledger.load, vec![0; g.n()]);
    let out = careofbad_scoped(g, x, len, cfg, ledger, rng);
    for (l, s) in ledger.load.iter_mut().zip(saved) {
        *l += s;
    }
    out
}

fn careofbad_scoped(
    g: &Graph,
    x: &VertexSet,
    len: usize,
    cfg: &EngineConfig,
    ledger: &mut CoverLedger,
    rng: &mut Rng,
) -> Result<(Graph, VertexSet), EngineError> {
    let support = g.support();
    let size = support.len().max(1);
    let outside = support.difference(x);
    let mut work = g.clone();
    let inner: Vec<(usize, usize)> = work.restricted_to(x).edges();
    if !inner.is_empty() {
        let mut avail = work.clone();
        for &(a, b) in &inner {
            avail.remove_edge(a, b);
        }
        let paths = find_paths(&mut avail, &inner, len - 1, &outside, cfg.eta.sqrt(), ledger, rng)?;
        for p in paths {
            ledger.take(&mut work, p)?;
        }
    }
    let ctx = StarContext {
        allowed: outside,
        sides: None,
        gamma: cfg.eta.sqrt(),
    };
    for v in x.iter() {
        cover_vertex_star(&mut work, v, len, &ctx, ledger, rng)?;
    }
    let h = greedy_approx(&work, len, cfg.eta.powi(3), ledger, rng)?;
    // η|g| drops below one at desk scale; the cycle length is the floor
    let cut = (cfg.eta * size as f64).max(len as f64);
    let y = VertexSet::from_iter(g.n(), support.iter().filter(|&v| h.degree(v) as f64 > cut));
    Ok((h, y))
}

/// Random equipartition of `vertices` into `parts` sets (per side when `sides` is given).
pub fn equipartition(vertices: &VertexSet, parts: usize, sides: Option<&Bipartition>, rng: &mut Rng) -> Vec<VertexSet> {
    let n = vertices.capacity();
    let mut out = vec![VertexSet::new(n); parts];
    let classes: Vec<VertexSet> = match sides {
        Some(p) => vec![vertices.intersection(&p.left), vertices.intersection(&p.right)],
        None => vec![vertices.clone()],
    };
    for class in classes {
        let mut vs = class.to_vec();
        vs.shuffle(rng);
        for (i, v) in vs.into_iter().enumerate() {
            out[i % parts].insert(v);
        }
    }
    out
}

/// Slack of the random-partition degree conditions; non-negative when they all hold.
///
/// Expander flavor: every robust neighbourhood meets each part in at least
/// `(1/2 + ν - η)|V_i|` vertices. Otherwise every vertex keeps its overall degree ratio
/// (into the opposite side for bipartite hosts) into each part, up to `η`.
pub fn partition_slack(g: &Graph, parts: &[VertexSet], flavor: &CoverFlavor, eta: f64, robust: &[VertexSet]) -> f64 {
    let support = g.support();
    let mut worst = f64::INFINITY;
    for v in support.iter() {
        for part in parts.iter().filter(|p| !p.is_empty()) {
            let slack = match flavor {
                CoverFlavor::Expander { nu } => {
                    let r = robust[v].intersection_len(part) as f64 / part.len() as f64;
                    r - (0.5 + nu - eta)
                }
                CoverFlavor::MinDegree => {
                    let ratio = g.degree(v) as f64 / support.len() as f64;
                    g.degree_into(v, part) as f64 / part.len() as f64 - (ratio - eta)
                }
                CoverFlavor::Bipartite(p) => {
                    let other = if p.side_of(v) == 0 { &p.right } else { &p.left };
                    let here = part.intersection(other);
                    if here.is_empty() {
                        continue;
                    }
                    let whole = support.intersection(other);
                    let ratio = g.degree(v) as f64 / whole.len().max(1) as f64;
                    g.degree_into(v, &here) as f64 / here.len() as f64 - (ratio - eta)
                }
            };
            worst = worst.min(slack);
        }
    }
    worst
}

/// Best of `cfg.retry_cap` random equipartitions by [`partition_slack`]; stops early at
/// the first one meeting all conditions. Returns the parts and their slack.
pub fn sample_partition(
    g: &Graph,
    vertices: &VertexSet,
    parts: usize,
    flavor: &CoverFlavor,
    cfg: &EngineConfig,
    rng: &mut Rng,
) -> (Vec<VertexSet>, f64) {
    let robust: Vec<VertexSet> = match flavor {
        CoverFlavor::Expander { nu } => (0..g.n()).map(|v| robust_neighborhood(g, g.neighbors(v), *nu)).collect(),
        _ => Vec::new(),
    };
    let mut best: Option<(Vec<VertexSet>, f64)> = None;
    for _ in 0..cfg.retry_cap {
        let cand = equipartition(vertices, parts, flavor.sides(), rng);
        let slack = partition_slack(g, &cand, flavor, cfg.eta, &robust);
        if best.as_ref().is_none_or(|b| slack > b.1) {
            best = Some((cand, slack));
        }
        if slack >= 0.0 {
            break;
        }
    }
    best.expect("retry_cap is positive")
}

/// Outcome of [`bound_max_degree`].
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub remainder: Graph,
    pub max_degree: usize,
    pub bound: usize,
}

impl BoundReport {
    pub fn within_bound(&self) -> bool {
        self.max_degree <= self.bound
    }
}

/// Approximate decomposition of `g` aiming at remainder maximum degree `bound`.
///
/// `V(g)` is split into `s` parts; the `K_t`-design on the parts groups the bipartite
/// pieces `g[V_j, V_k]` into multipartite graphs that are processed in turn by
/// [`careofbad`], carrying forward the set of vertices left heavy so far.
pub fn bound_max_degree(
    g: &Graph,
    len: usize,
    bound: usize,
    flavor: &CoverFlavor,
    cfg: &EngineConfig,
    ledger: &mut CoverLedger,
    rng: &mut Rng,
) -> Result<BoundReport, EngineError> {
    let support = g.support();
    if support.is_empty() {
        return Ok(BoundReport {
            remainder: g.clone(),
            max_degree: 0,
            bound,
        });
    }
    let blocks = clique_design(cfg.s, cfg.t)?;
    let (parts, slack) = sample_partition(g, &support, cfg.s, flavor, cfg, rng);
    if slack < 0.0 {
        ledger.note(format!("degree bounding: best partition misses its degree conditions by {:.3}", -slack));
    }
    let mut rest = g.clone();
    let mut heavy = VertexSet::new(g.n());
    for block in &blocks {
        let mut gi = Graph::new(g.n());
        for (i, &a) in block.iter().enumerate() {
            for &b in &block[i + 1..] {
                for (u, v) in rest.bipartite_part(&parts[a], &parts[b]).edges() {
                    gi.add_edge(u, v);
                }
            }
        }
        for (u, v) in gi.edges() {
            rest.remove_edge(u, v);
        }
        let xi = heavy.intersection(&gi.support());
        let (h, y) = careofbad(&gi, &xi, len, cfg, ledger, rng)?;
        for (u, v) in h.edges() {
            rest.add_edge(u, v);
        }
        heavy.union_with(&y);
    }
    let max_degree = rest.max_degree();
    if max_degree > bound {
        ledger.note(format!("degree bounding: remainder maximum degree {max_degree} above target {bound}"));
    }
    Ok(BoundReport {
        remainder: rest,
        max_degree,
        bound,
    })
}

/// Complete every edge of `h` (inside `l_set`) to an `L`-cycle of `work` whose other
/// vertices lie in `r_set`, avoiding vertices already heavy in the completions.
/// Returns the union `A` of the completions without the edges of `h`.
pub fn cover_sparse(
    work: &mut Graph,
    l_set: &VertexSet,
    r_set: &VertexSet,
    h: &Graph,
    len: usize,
    cfg: &EngineConfig,
    ledger: &mut CoverLedger,
    rng: &mut Rng,
) -> Result<Graph, EngineError> {
    let n = work.n();
    let mut a = Graph::new(n);
    let cap = cfg.gamma.sqrt() * r_set.len() as f64;
    let mut edges = h.edges();
    edges.shuffle(rng);
    for (u, v) in edges {
        let busy = VertexSet::from_iter(n, r_set.iter().filter(|&x| a.degree(x) as f64 > cap));
        let allowed = r_set.difference(&busy);
        let c = PathQuery::new(work)
            .with_load(&ledger.load)
            .cycle_through(u, v, len, &allowed, rng)
            .ok_or_else(|| diag("sparse cover", "sparse-graph completion", format!("edge {u}-{v}")))?;
        ledger.add_load(&c[2..]);
        for i in 1..c.len() {
            a.add_edge(c[i], c[(i + 1) % c.len()]);
        }
        ledger.take(work, c)?;
    }
    if a.edges_within(l_set) != 0 {
        return Err(EngineError::Internal("sparse cover placed an edge inside the covered side".into()));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_random_min_degree;
    use crate::rng::stream;

    fn cfg() -> EngineConfig {
        EngineConfig::default()
    }

    #[test]
    fn single_path_in_clique() {
        let mut g = Graph::complete(20);
        let mut l = CoverLedger::new(&g, 4);
        let all = VertexSet::full(20);
        let p = find_paths(&mut g, &[(0, 1)], 4, &all, 0.01, &mut l, &mut stream(0, "t")).unwrap();
        assert_eq!(p[0].len(), 5);
        assert_eq!(g.edge_count(), 190 - 4);
    }

    #[test]
    fn disjoint_pairs_in_clique() {
        let mut g = Graph::complete(20);
        let mut l = CoverLedger::new(&g, 4);
        let pairs: Vec<_> = (0..10).map(|i| (2 * i, 2 * i + 1)).collect();
        let all = VertexSet::full(20);
        let p = find_paths(&mut g, &pairs, 3, &all, 0.2, &mut l, &mut stream(1, "t")).unwrap();
        assert_eq!(p.len(), 10);
        let mut u = Graph::new(20);
        for q in &p {
            assert_eq!(q.len(), 4);
            for (a, b) in path_edges(q) {
                assert!(u.add_edge(a, b));
            }
        }
    }

    #[test]
    fn random_pairs_in_expander() {
        let mut g = gen_random_min_degree(300, 0.0, 0.6, 9).unwrap().graph;
        let mut l = CoverLedger::new(&g, 8);
        let mut rng = stream(9, "t");
        use rand::Rng as _;
        let pairs: Vec<_> = (0..100)
            .map(|_| {
                let a = rng.gen_range(0..300);
                let b = (a + rng.gen_range(1..300)) % 300;
                (a, b)
            })
            .collect();
        let all = VertexSet::full(300);
        let p = find_paths(&mut g, &pairs, 7, &all, 0.02, &mut l, &mut rng).unwrap();
        assert_eq!(p.len(), 100);
    }

    #[test]
    fn star_cover_parity() {
        for (deg, left) in [(6, 0), (7, 1)] {
            let mut g = Graph::complete(20);
            for v in deg + 1..20 {
                g.remove_edge(0, v);
            }
            let mut l = CoverLedger::new(&g, 4);
            let ctx = StarContext {
                allowed: VertexSet::full(20),
                sides: None,
                gamma: 0.25,
            };
            let mut work = g.clone();
            let out = cover_vertex_star(&mut work, 0, 4, &ctx, &mut l, &mut stream(2, "t")).unwrap();
            assert_eq!(out.len(), left);
            assert_eq!(l.removed.len(), deg / 2);
            assert_eq!(work.degree(0), left);
        }
    }

    #[test]
    fn star_cover_bipartite_pairs_same_side() {
        let g = Graph::complete_bipartite(10, 10);
        let sides = Bipartition::split_at(10, 20);
        let mut l = CoverLedger::new(&g, 6);
        let ctx = StarContext {
            allowed: VertexSet::full(20),
            sides: Some(sides),
            gamma: 0.5,
        };
        let mut work = g.clone();
        let left = cover_vertex_star(&mut work, 0, 6, &ctx, &mut l, &mut stream(3, "t")).unwrap();
        assert_eq!(left.len(), 0);
        assert_eq!(l.removed.len(), 5);
    }

    #[test]
    fn bound_max_degree_on_clique() {
        let g = Graph::complete(120);
        let mut l = CoverLedger::new(&g, 8);
        let r = bound_max_degree(&g, 8, 30, &CoverFlavor::MinDegree, &cfg(), &mut l, &mut stream(4, "t")).unwrap();
        assert!(r.within_bound(), "max degree {}", r.max_degree);
        assert_eq!(r.remainder, l.residual);
        l.into_decomposition().unwrap();
    }

    #[test]
    fn bound_max_degree_empty() {
        let g = Graph::new(10);
        let mut l = CoverLedger::new(&g, 8);
        let r = bound_max_degree(&g, 8, 0, &CoverFlavor::MinDegree, &cfg(), &mut l, &mut stream(5, "t")).unwrap();
        assert_eq!(r.remainder.edge_count(), 0);
    }

    #[test]
    fn sparse_cover_single_edge_and_matching() {
        let g = Graph::complete(30);
        let l_set = VertexSet::from_iter(30, 0..10);
        let r_set = l_set.complement(30);
        let mut h = Graph::new(30);
        h.add_edge(0, 1);
        let mut l = CoverLedger::new(&g, 8);
        let mut work = g.clone();
        let a = cover_sparse(&mut work, &l_set, &r_set, &h, 8, &cfg(), &mut l, &mut stream(6, "t")).unwrap();
        assert_eq!(a.edge_count(), 7);
        assert_eq!(a.edges_within(&l_set), 0);

        let mut h = Graph::new(30);
        for i in 0..5 {
            h.add_edge(2 * i, 2 * i + 1);
        }
        let mut l = CoverLedger::new(&g, 4);
        let mut work = g.clone();
        let a = cover_sparse(&mut work, &l_set, &r_set, &h, 4, &cfg(), &mut l, &mut stream(7, "t")).unwrap();
        assert_eq!(l.removed.len(), 5);
        assert_eq!(a.edge_count(), 15);
    }
}
