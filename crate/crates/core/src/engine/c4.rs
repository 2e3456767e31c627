//! `C_4`-decompositions of extremal graphs.
//!
//! Both types reduce the graph to pieces with a three-class structure: type 1 to two dense
//! graphs on `A`, `C` plus the bipartite graphs `G[A, B]`, `G[B, C]`; type 2 to the three
//! bipartite graphs of a tripartite graph. Atypical edges are covered first, then degree
//! parities and edge counts modulo 4 are repaired with short cycles, and the pieces are
//! delegated.

use rand::seq::SliceRandom;

use crate::analysis::{find_m_extremal, ExtremalType, ExtremalWitness};
use crate::bitset::VertexSet;
use crate::decomposition::CycleDecomposition;
use crate::graph::{Bipartition, Graph};
use crate::rng::{stream, Rng};

use super::cover::{cover_vertex_star, StarContext};
use super::dispatch::{delegate, delegate_bipartite, Trace};
use super::greedy::greedy_approx;
use super::{diag, CoverLedger, EngineConfig, EngineError};

/// Vertex classes `A, B, C`; vertices set aside by the reduction belong to none of them.
#[derive(Clone, Debug)]
pub struct Tripartition {
    pub a: VertexSet,
    pub b: VertexSet,
    pub c: VertexSet,
}

impl Tripartition {
    fn classes(&self) -> [&VertexSet; 3] {
        [&self.a, &self.b, &self.c]
    }

    fn class_of(&self, v: usize) -> Option<usize> {
        self.classes().iter().position(|s| s.contains(v))
    }
}

/// A graph left for delegation.
#[derive(Clone, Debug)]
pub enum Piece {
    Dense(Graph),
    Bipartite(Graph, Bipartition),
}

impl Piece {
    pub fn graph(&self) -> &Graph {
        match self {
            Piece::Dense(g) | Piece::Bipartite(g, _) => g,
        }
    }
}

/// Cycles removed by a reduction and the pieces that remain. The pieces partition the
/// ledger's residual.
pub struct Reduction {
    pub ledger: CoverLedger,
    pub parts: Tripartition,
    pub pieces: Vec<Piece>,
}

/// Common neighbour of `u` and `v` in `class` outside `avoid`, least loaded first.
fn common(ledger: &CoverLedger, u: usize, v: usize, class: &VertexSet, avoid: &[usize], rng: &mut Rng) -> Option<usize> {
    let res = &ledger.residual;
    let mut cand: Vec<usize> = res
        .neighbors(u)
        .intersection(res.neighbors(v))
        .intersection(class)
        .iter()
        .filter(|w| !avoid.contains(w))
        .collect();
    cand.shuffle(rng);
    cand.into_iter().min_by_key(|&w| ledger.load[w])
}

/// Remove a `C_4` `u x v y` with `x ∈ first`, `y ∈ second`.
fn square(
    ledger: &mut CoverLedger,
    u: usize,
    v: usize,
    first: &VertexSet,
    second: &VertexSet,
    avoid: &[usize],
    rng: &mut Rng,
) -> Option<Vec<usize>> {
    let mut avoid = avoid.to_vec();
    avoid.extend([u, v]);
    let x = common(ledger, u, v, first, &avoid, rng)?;
    avoid.push(x);
    let y = common(ledger, u, v, second, &avoid, rng)?;
    let c = vec![u, x, v, y];
    ledger.add_load(&[x, y]);
    ledger.remove_cycle(c.clone()).ok()?;
    Some(c)
}

/// Pair up `odd` and remove a `C_4` `v_1 X v_2 Y` for each pair.
fn pair_odd(
    ledger: &mut CoverLedger,
    odd: &[usize],
    first: &VertexSet,
    second: &VertexSet,
    stage: &str,
    rng: &mut Rng,
) -> Result<(), EngineError> {
    if odd.len() % 2 != 0 {
        return Err(EngineError::Internal(format!("{stage}: {} odd vertices", odd.len())));
    }
    for pair in odd.chunks_exact(2) {
        square(ledger, pair[0], pair[1], first, second, &[], rng)
            .ok_or_else(|| diag(stage, "parity-repair cycle", format!("pair ({}, {})", pair[0], pair[1])))?;
    }
    Ok(())
}

/// Remove three cycles `x_1 Y x_2 Z`, `x_2 Y x_3 Z`, `x_1 Y x_3 Z` with `x_i ∈ centre`.
/// This takes six edges between `centre` and each of `Y`, `Z` and keeps every degree parity.
fn triple(
    ledger: &mut CoverLedger,
    centre: &VertexSet,
    first: &VertexSet,
    second: &VertexSet,
    stage: &str,
    rng: &mut Rng,
) -> Result<(), EngineError> {
    let mut pool: Vec<usize> = centre.iter().filter(|&v| ledger.residual.degree(v) >= 4).collect();
    pool.shuffle(rng);
    let res = &ledger.residual;
    let linked = |u: usize, v: usize| {
        let shared = res.neighbors(u).intersection(res.neighbors(v));
        u != v && shared.intersection_len(first) > 0 && shared.intersection_len(second) > 0
    };
    let mut candidates = Vec::new();
    'search: for &x1 in pool.iter().take(16) {
        for &x2 in pool.iter().filter(|&&x2| linked(x1, x2)).take(8) {
            for &x3 in pool.iter().filter(|&&x3| x3 != x1 && linked(x1, x3) && linked(x2, x3)).take(4) {
                candidates.push([x1, x2, x3]);
                if candidates.len() == 64 {
                    break 'search;
                }
            }
        }
    }
    for [x1, x2, x3] in candidates {
        let mut trial = ledger.clone();
        let ok = [(x1, x2), (x2, x3), (x1, x3)]
            .into_iter()
            .all(|(u, v)| square(&mut trial, u, v, first, second, &[x1, x2, x3], rng).is_some());
        if ok {
            *ledger = trial;
            return Ok(());
        }
    }
    Err(diag(stage, "mod-4 repair triple", format!("no triple among {} centre vertices", pool.len())))
}

/// Star covers at every vertex of `set`, closing paths of length 2 in `work` through `middle`.
fn clear_stars(
    ledger: &mut CoverLedger,
    set: &[usize],
    work: &mut Graph,
    middle: &VertexSet,
    gamma: f64,
    stage: &str,
    rng: &mut Rng,
) -> Result<(), EngineError> {
    let ctx = StarContext {
        allowed: middle.clone(),
        sides: None,
        gamma,
    };
    for &v in set {
        let left = cover_vertex_star(work, v, 4, &ctx, ledger, rng).map_err(|e| e.in_stage(stage))?;
        if !left.is_empty() {
            return Err(diag(stage, "neighbourhood pairing", format!("vertex {v} keeps {} edges", left.len())));
        }
    }
    Ok(())
}

/// `work` without the edges at `v`, plus the edges from `v` to `targets`.
fn star_at(base: &Graph, v: usize, targets: &VertexSet) -> Graph {
    let mut g = base.clone();
    for w in base.neighbors(v).iter() {
        g.remove_edge(v, w);
    }
    for w in targets.iter() {
        g.add_edge(v, w);
    }
    g
}

/// Largest even subset of `s` in iteration order.
fn even_prefix(s: &VertexSet) -> VertexSet {
    let mut v = s.to_vec();
    if v.len() % 2 == 1 {
        v.pop();
    }
    VertexSet::from_iter(s.capacity(), v)
}

fn degree_floor(g: &Graph, parts: &Tripartition, pairs: &[(usize, usize)]) -> usize {
    let cls = parts.classes();
    pairs
        .iter()
        .flat_map(|&(x, y)| cls[x].iter().map(move |v| g.degree_into(v, cls[y])))
        .min()
        .unwrap_or(0)
}

/// Split a type-1 witness `A_1, C_1` (no edges between) so that every vertex has many
/// neighbours in two classes; low-degree vertices of `B_1` move to the class they see.
pub fn type1_partition(g: &Graph, w: &ExtremalWitness) -> Tripartition {
    let n = g.n();
    let (a1, c1) = (&w.s, &w.t);
    let b1 = a1.union(c1).complement(n);
    let cut = n as f64 / 50.0;
    let b_c = VertexSet::from_iter(n, b1.iter().filter(|&v| (g.degree_into(v, a1) as f64) < cut));
    let b_a = VertexSet::from_iter(n, b1.iter().filter(|&v| !b_c.contains(v) && (g.degree_into(v, c1) as f64) < cut));
    Tripartition {
        a: a1.union(&b_a),
        b: b1.difference(&b_a).difference(&b_c),
        c: c1.union(&b_c),
    }
}

/// Cover the atypical edges `E(A, C) ∪ E(B)` and the edges at the vertices of `B` with low
/// degree to `A` or `C`, leaving `e(A)` and `e(C)` even.
fn type1_atypical(ledger: &mut CoverLedger, parts: &mut Tripartition, cfg: &EngineConfig, rng: &mut Rng) -> Result<(), EngineError> {
    let n = ledger.n();
    let stage = "C4 type 1: atypical edges";
    let Tripartition { a, b, c } = parts.clone();
    let atypical = |g: &Graph| g.bipartite_part(&a, &c).union(&g.restricted_to(&b));
    let first = atypical(&ledger.residual).first_edge();
    if let Some((x, y)) = first {
        let mut g0 = atypical(&ledger.residual);
        g0.remove_edge(x, y);
        let g1 = greedy_approx(&g0, 4, cfg.eta, ledger, rng)?;
        let low = 5.0 * n as f64 / 18.0;
        let b_low = VertexSet::from_iter(
            n,
            b.iter().filter(|&v| (ledger.original().degree_into(v, &a) as f64) < low || (ledger.original().degree_into(v, &c) as f64) < low),
        );
        let bad_cut = cfg.eta.sqrt() * n as f64;
        let bad = VertexSet::from_iter(n, (0..n).filter(|&v| g1.degree(v) as f64 >= bad_cut));
        let mut typical = ledger.residual.minus(&atypical(&ledger.residual)).map_err(|e| EngineError::Internal(e.to_string()))?;
        for v in bad.iter() {
            let live = g1.neighbors(v).intersection(ledger.residual.neighbors(v));
            let s_v = even_prefix(&live.difference(&bad).difference(&b_low));
            let mut work = star_at(&typical, v, &s_v);
            let mut middle = VertexSet::full(n);
            middle.remove(v);
            clear_stars(ledger, &[v], &mut work, &middle, cfg.eta.cbrt().powi(2) / 9.0, stage, rng)?;
            typical = ledger.residual.minus(&atypical(&ledger.residual)).map_err(|e| EngineError::Internal(e.to_string()))?;
        }
        let rest = atypical(&ledger.residual);
        let odd_c = ledger.residual.edges_within(&c) % 2 == 1;
        for (i, (u, v)) in rest.edges().into_iter().enumerate() {
            let to_c = odd_c && i == 0;
            let x_class = if to_c { &c } else { &a };
            let found = if b.contains(u) {
                // B B X X
                let p = crate::paths::PathQuery::new(&ledger.residual).with_load(&ledger.load).find(v, u, &[x_class, x_class], rng);
                p.map(|p| [vec![u], p[..p.len() - 1].to_vec()].concat())
            } else {
                // edge between A and C: X X' B other, with the X end first
                let (xe, oe) = if x_class.contains(u) { (u, v) } else { (v, u) };
                let p = crate::paths::PathQuery::new(&ledger.residual).with_load(&ledger.load).find(xe, oe, &[x_class, &b], rng);
                p.map(|p| p.to_vec())
            };
            let cyc = found.ok_or_else(|| diag(stage, "assignment cycle", format!("edge {u}-{v}")))?;
            let interior = if b.contains(u) { &cyc[2..4] } else { &cyc[1..3] };
            ledger.add_load(interior);
            ledger.remove_cycle(cyc)?;
        }
        let low_list = b_low.to_vec();
        let mut work = ledger.residual.bipartite_part(&a.union(&c), &b);
        let middle = b.difference(&b_low);
        clear_stars(ledger, &low_list, &mut work, &middle, cfg.eta.powi(2), stage, rng)?;
        parts.b = b.difference(&b_low);
    }
    for (name, class) in [("A", &parts.a), ("C", &parts.c)] {
        if ledger.residual.edges_within(class) % 2 != 0 {
            return Err(EngineError::Internal(format!("{stage}: e({name}) is odd")));
        }
    }
    Ok(())
}

/// Reduce a type-1 extremal graph to `G[A]`, `G[C]`, `G[A, B]`, `G[B, C]`, all
/// `C_4`-divisible.
pub fn reduce_type1(g: &Graph, w: &ExtremalWitness, cfg: &EngineConfig, rng: &mut Rng) -> Result<Reduction, EngineError> {
    let n = g.n();
    let mut parts = type1_partition(g, w);
    let mut ledger = CoverLedger::new(g, 4);
    type1_atypical(&mut ledger, &mut parts, cfg, rng)?;
    let Tripartition { a, b, c } = parts.clone();
    ledger.note(format!(
        "type 1 classes |A| = {}, |B| = {}, |C| = {}, floor {}",
        a.len(),
        b.len(),
        c.len(),
        degree_floor(&ledger.residual, &parts, &[(0, 0), (0, 1), (1, 0), (1, 2), (2, 1), (2, 2)])
    ));
    for (x, name) in [(&a, "A"), (&c, "C")] {
        let stage = format!("C4 type 1: parity inside {name}");
        let odd: Vec<usize> = x.iter().filter(|&v| ledger.residual.degree_into(v, x) % 2 == 1).collect();
        pair_odd(&mut ledger, &odd, x, &b, &stage, rng)?;
        if ledger.residual.edges_within(x) % 4 == 2 {
            triple(&mut ledger, x, x, &b, &format!("C4 type 1: edges inside {name}"), rng)?;
        }
    }
    let odd_b: Vec<usize> = b.iter().filter(|&v| ledger.residual.degree_into(v, &a) % 2 == 1).collect();
    pair_odd(&mut ledger, &odd_b, &a, &c, "C4 type 1: parity of B", rng)?;
    if ledger.residual.edges_between(&a, &b) % 4 == 2 {
        triple(&mut ledger, &b, &a, &c, "C4 type 1: edges between A and B", rng)?;
    }
    let res = &ledger.residual;
    let pieces = vec![
        Piece::Dense(res.restricted_to(&a)),
        Piece::Dense(res.restricted_to(&c)),
        Piece::Bipartite(res.bipartite_part(&a, &b), Bipartition::new(a.clone(), a.complement(n))),
        Piece::Bipartite(res.bipartite_part(&c, &b), Bipartition::new(c.clone(), c.complement(n))),
    ];
    check_pieces(&ledger, &pieces)?;
    Ok(Reduction { ledger, parts, pieces })
}

/// Every piece is `C_4`-divisible and together they are exactly the residual.
fn check_pieces(ledger: &CoverLedger, pieces: &[Piece]) -> Result<(), EngineError> {
    let mut all = Graph::new(ledger.n());
    for (i, p) in pieces.iter().enumerate() {
        let g = p.graph();
        if !g.odd_vertices().is_empty() || g.edge_count() % 4 != 0 {
            return Err(EngineError::Internal(format!("piece {i} is not C4-divisible")));
        }
        all = all.union(g);
    }
    if all != ledger.residual {
        return Err(EngineError::Internal("pieces do not partition the residual".into()));
    }
    Ok(())
}

/// Classes from a type-2 witness `A_1, B_1` (both independent) after setting aside the
/// vertices of `C_1` with few neighbours in `A_1` or `B_1` and one vertex per class to make
/// every class even.
pub fn type2_partition(g: &Graph, w: &ExtremalWitness) -> (Tripartition, VertexSet) {
    let n = g.n();
    let (a1, b1) = (&w.s, &w.t);
    let c1 = a1.union(b1).complement(n);
    let cut = 5.0 * n as f64 / 18.0;
    let mut u = VertexSet::from_iter(
        n,
        c1.iter().filter(|&v| (g.degree_into(v, a1) as f64) < cut || (g.degree_into(v, b1) as f64) < cut),
    );
    let c_rest = c1.difference(&u);
    for class in [a1, b1, &c_rest] {
        if class.len() % 2 == 1 {
            let v = class.iter().min_by_key(|&v| (g.degree(v), v)).expect("odd class is non-empty");
            u.insert(v);
        }
    }
    let parts = Tripartition {
        a: a1.difference(&u),
        b: b1.difference(&u),
        c: c1.difference(&u),
    };
    (parts, u)
}

/// Reduce a type-2 extremal graph to the three bipartite graphs between its classes, all
/// `C_4`-divisible.
pub fn reduce_type2(g: &Graph, w: &ExtremalWitness, cfg: &EngineConfig, rng: &mut Rng) -> Result<Reduction, EngineError> {
    let n = g.n();
    let (parts, set_aside) = type2_partition(g, w);
    let mut ledger = CoverLedger::new(g, 4);
    let inside_of = |g: &Graph| parts.classes().iter().fold(Graph::new(n), |acc, x| acc.union(&g.restricted_to(x)));
    let kept = set_aside.complement(n);
    let stage = "C4 type 2: set-aside vertices";
    let mut work = ledger.residual.clone();
    clear_stars(&mut ledger, &set_aside.to_vec(), &mut work, &kept, 0.25, stage, rng)?;

    let stage = "C4 type 2: inside edges";
    let inner = inside_of(&ledger.residual);
    greedy_approx(&inner, 4, cfg.epsilon, &mut ledger, rng)?;
    let inner = inside_of(&ledger.residual);
    let heavy_cut = cfg.epsilon.sqrt() * n as f64;
    let heavy = VertexSet::from_iter(n, (0..n).filter(|&v| inner.degree(v) as f64 >= heavy_cut));
    for v in heavy.iter() {
        let inner_now = inside_of(&ledger.residual);
        let s_v = even_prefix(&inner_now.neighbors(v).difference(&heavy));
        let cross = ledger.residual.minus(&inner_now).map_err(|e| EngineError::Internal(e.to_string()))?;
        let mut work = star_at(&cross, v, &s_v);
        clear_stars(&mut ledger, &[v], &mut work, &kept, cfg.epsilon, stage, rng)?;
    }
    for (u, v) in inside_of(&ledger.residual).edges() {
        let x = parts.class_of(u).expect("inside edge lies in a class");
        let (y, z) = ((x + 1) % 3, (x + 2) % 3);
        let cls = parts.classes();
        let cross = ledger.residual.minus(&inside_of(&ledger.residual)).map_err(|e| EngineError::Internal(e.to_string()))?;
        let q = crate::paths::PathQuery::new(&cross).with_load(&ledger.load);
        let p = q.find(u, v, &[cls[y], cls[z]], rng).or_else(|| q.find(u, v, &[cls[z], cls[y]], rng));
        let p = p.ok_or_else(|| diag(stage, "closing path of length 3", format!("edge {u}-{v}")))?;
        ledger.add_load(&p[1..3]);
        ledger.remove_cycle(p)?;
    }

    let cls = parts.classes();
    for x in 0..3 {
        let (y, z) = ((x + 1) % 3, (x + 2) % 3);
        let odd: Vec<usize> = cls[x].iter().filter(|&v| ledger.residual.degree_into(v, cls[y]) % 2 == 1).collect();
        pair_odd(&mut ledger, &odd, cls[y], cls[z], "C4 type 2: degree parity", rng)?;
    }
    // the pairwise counts are even and sum to 0 mod 4, so either none or two are 2 mod 4
    let bad: Vec<usize> = (0..3)
        .filter(|&x| ledger.residual.edges_between(cls[(x + 1) % 3], cls[(x + 2) % 3]) % 4 == 2)
        .collect();
    if bad.len() == 2 {
        let centre = 3 - bad[0] - bad[1];
        let (y, z) = ((centre + 1) % 3, (centre + 2) % 3);
        triple(&mut ledger, cls[centre], cls[y], cls[z], "C4 type 2: edge counts mod 4", rng)?;
    } else if !bad.is_empty() {
        return Err(EngineError::Internal(format!("{} class pairs with 2 mod 4 edges", bad.len())));
    }
    let res = &ledger.residual;
    let pieces = [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .map(|(x, y)| Piece::Bipartite(res.bipartite_part(cls[x], cls[y]), Bipartition::new(cls[x].clone(), cls[x].complement(n))))
        .collect::<Vec<_>>();
    check_pieces(&ledger, &pieces)?;
    ledger.note(format!(
        "type 2 classes |A| = {}, |B| = {}, |C| = {}, {} vertices set aside",
        parts.a.len(),
        parts.b.len(),
        parts.c.len(),
        set_aside.len()
    ));
    Ok(Reduction { ledger, parts, pieces })
}

fn finish(red: Reduction, cfg: &EngineConfig, trace: &mut Trace, label: &str) -> Result<CycleDecomposition, EngineError> {
    let Reduction { mut ledger, pieces, .. } = red;
    for s in ledger.stages.drain(..) {
        trace.note(s);
    }
    let mut d = ledger.into_decomposition()?;
    for (i, p) in pieces.iter().enumerate() {
        let stage = format!("{label}: piece {i}");
        let part = match p {
            Piece::Dense(g) => delegate(g, 2, cfg, trace, &stage)?,
            Piece::Bipartite(g, sides) => delegate_bipartite(g, sides, 2, cfg, trace, &stage)?,
        };
        d.extend(part);
    }
    Ok(d)
}

pub(crate) fn type1_at(g: &Graph, w: &ExtremalWitness, cfg: &EngineConfig, trace: &mut Trace) -> Result<CycleDecomposition, EngineError> {
    let mut rng = stream(cfg.seed, "engine/c4-type1");
    let red = reduce_type1(g, w, cfg, &mut rng)?;
    finish(red, cfg, trace, "C4 type 1")
}

pub(crate) fn type2_at(g: &Graph, w: &ExtremalWitness, cfg: &EngineConfig, trace: &mut Trace) -> Result<CycleDecomposition, EngineError> {
    let mut rng = stream(cfg.seed, "engine/c4-type2");
    let red = reduce_type2(g, w, cfg, &mut rng)?;
    finish(red, cfg, trace, "C4 type 2")
}

fn witness(g: &Graph, cfg: &EngineConfig, kind: ExtremalType) -> Result<ExtremalWitness, EngineError> {
    match find_m_extremal(g, cfg.m1) {
        Some(w) if w.kind == kind => Ok(w),
        _ => Err(diag("C4 extremal", "extremal witness search", format!("no {kind:?} witness with m = {}", cfg.m1))),
    }
}

/// `C_4`-decomposition of a type-1 extremal graph.
pub fn decompose_c4_type1(g: &Graph, cfg: &EngineConfig) -> Result<CycleDecomposition, EngineError> {
    let w = witness(g, cfg, ExtremalType::Type1)?;
    type1_at(g, &w, cfg, &mut Trace { depth: 0, log: Vec::new() })
}

/// `C_4`-decomposition of a type-2 extremal graph.
pub fn decompose_c4_type2(g: &Graph, cfg: &EngineConfig) -> Result<CycleDecomposition, EngineError> {
    let w = witness(g, cfg, ExtremalType::Type2)?;
    type2_at(g, &w, cfg, &mut Trace { depth: 0, log: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, r: std::ops::Range<usize>) -> VertexSet {
        VertexSet::from_iter(n, r)
    }

    /// `K_8` on `A` and on `C`, `B` of size 9 complete to both, plus a `C_4` alternating
    /// between `A` and `C`.
    fn type1_instance() -> (Graph, ExtremalWitness) {
        let n = 25;
        let mut g = Graph::new(n);
        for base in [0, 17] {
            for u in base..base + 8 {
                for v in u + 1..base + 8 {
                    g.add_edge(u, v);
                }
                for b in 8..17 {
                    g.add_edge(u, b);
                }
            }
        }
        for (u, v) in [(0, 17), (17, 1), (1, 18), (18, 0)] {
            g.add_edge(u, v);
        }
        let w = ExtremalWitness {
            kind: ExtremalType::Type1,
            s: set(n, 2..8),
            t: set(n, 19..25),
            min_size: 6,
            exact: true,
        };
        (g, w)
    }

    /// `K_{8,8,8}` plus a `C_4` inside `A` and one inside `C`.
    fn type2_instance() -> (Graph, ExtremalWitness) {
        let n = 24;
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if u / 8 != v / 8 {
                    g.add_edge(u, v);
                }
            }
        }
        for base in [0, 16] {
            for i in 0..4 {
                g.add_edge(base + i, base + (i + 1) % 4);
            }
        }
        let w = ExtremalWitness {
            kind: ExtremalType::Type2,
            s: set(n, 0..8),
            t: set(n, 8..16),
            min_size: 6,
            exact: true,
        };
        (g, w)
    }

    #[test]
    fn type1_reduction_leaves_divisible_pieces() {
        let (g, w) = type1_instance();
        assert!(g.is_cycle_divisible(4));
        let cfg = EngineConfig::default();
        let red = reduce_type1(&g, &w, &cfg, &mut stream(1, "t")).unwrap();
        let res = &red.ledger.residual;
        assert_eq!(res.bipartite_part(&red.parts.a, &red.parts.c).edge_count(), 0);
        assert_eq!(res.edges_within(&red.parts.b), 0);
        assert_eq!(red.pieces.len(), 4);
        red.ledger.into_decomposition().unwrap();
    }

    #[test]
    fn type2_reduction_leaves_three_divisible_bipartite_pieces() {
        let (g, w) = type2_instance();
        assert!(g.is_cycle_divisible(4));
        let cfg = EngineConfig::default();
        let red = reduce_type2(&g, &w, &cfg, &mut stream(2, "t")).unwrap();
        assert_eq!(red.pieces.len(), 3);
        for p in &red.pieces {
            assert!(matches!(p, Piece::Bipartite(..)));
            assert_eq!(p.graph().edge_count() % 4, 0);
        }
        for x in red.parts.classes() {
            assert_eq!(red.ledger.residual.edges_within(x), 0);
        }
        red.ledger.into_decomposition().unwrap();
    }

    #[test]
    fn triple_takes_six_edges_from_each_side() {
        let g = Graph::complete(12);
        let mut ledger = CoverLedger::new(&g, 4);
        let (x, y, z) = (set(12, 0..4), set(12, 4..8), set(12, 8..12));
        triple(&mut ledger, &x, &y, &z, "t", &mut stream(3, "t")).unwrap();
        let used = ledger.used_edges();
        assert_eq!(used.edges_between(&x, &y), 6);
        assert_eq!(used.edges_between(&x, &z), 6);
        assert_eq!(used.edges_between(&y, &z), 0);
        assert!(used.odd_vertices().is_empty());
    }

    #[test]
    fn type2_mod4_defect_is_repaired() {
        // classes of 12; G[A, B] is a 6-cycle and G[A, C] misses a 6-cycle, so both
        // class pairs carry 2 mod 4 edges although every class is even
        let n = 36;
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                let (cu, cv) = (u / 12, v / 12);
                if cu != cv && !(cu == 0 && cv == 1) {
                    g.add_edge(u, v);
                }
            }
        }
        for i in 0..3 {
            g.add_edge(i, 12 + i);
            g.add_edge(12 + i, (i + 1) % 3);
            g.remove_edge(3 + i, 24 + i);
            g.remove_edge(24 + i, 3 + (i + 1) % 3);
        }
        assert!(g.is_cycle_divisible(4));
        assert_eq!(g.edges_between(&set(n, 0..12), &set(n, 12..24)) % 4, 2);
        let w = ExtremalWitness {
            kind: ExtremalType::Type2,
            s: set(n, 0..12),
            t: set(n, 12..24),
            min_size: 10,
            exact: true,
        };
        let red = reduce_type2(&g, &w, &EngineConfig::default(), &mut stream(4, "t")).unwrap();
        assert_eq!(red.parts.a.len(), 12);
        for p in &red.pieces {
            assert_eq!(p.graph().edge_count() % 4, 0);
        }
        red.ledger.into_decomposition().unwrap();
    }
}
