//! Exhaustive tools for small graphs: cycle enumeration, an exact decomposition search
//! and checkable certificates of non-decomposability.

use std::collections::HashSet;
use std::ops::ControlFlow;

use thiserror::Error;

use crate::bitset::VertexSet;
use crate::decomposition::{cycle_edges, CycleDecomposition};
use crate::graph::Graph;

/// Largest vertex count for which parity certificates are checked by enumeration.
pub const EXHAUSTIVE_LIMIT: usize = 20;

/// Default node budget of [`exact_decompose`].
pub const DEFAULT_BUDGET: u64 = 100_000_000;

const MEMO_CAP: usize = 4_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("cycle length {0} is below 3")]
    ShortCycle(usize),
    #[error("more than {0} cycles")]
    CapExceeded(usize),
    #[error("graph on {0} vertices is too large for exhaustive checking and carries no shape")]
    TooLarge(usize),
}

/// Call `f` on every simple path `from = p0, p1, .., p_len = to` of exactly `len` edges.
/// Paths are produced in lexicographic order of their interiors.
pub fn for_each_path<F>(g: &Graph, from: usize, to: usize, len: usize, f: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if from == to || len == 0 {
        return ControlFlow::Continue(());
    }
    let mut path = vec![from];
    let mut used = VertexSet::new(g.n());
    used.insert(from);
    used.insert(to);
    path_rec(g, to, len, &mut path, &mut used, f)
}

fn path_rec<F>(
    g: &Graph,
    to: usize,
    len: usize,
    path: &mut Vec<usize>,
    used: &mut VertexSet,
    f: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let cur = *path.last().expect("path starts non-empty");
    let remaining = len + 1 - path.len();
    if remaining == 1 {
        if g.has_edge(cur, to) {
            path.push(to);
            let r = f(path);
            path.pop();
            return r;
        }
        return ControlFlow::Continue(());
    }
    let mut cand = g.neighbors(cur).difference(used);
    if remaining == 2 {
        cand.intersect_with(g.neighbors(to));
    }
    for w in cand.iter() {
        path.push(w);
        used.insert(w);
        let r = path_rec(g, to, len, path, used, f);
        used.remove(w);
        path.pop();
        r?;
    }
    ControlFlow::Continue(())
}

/// Call `f` on every `L`-cycle of `g` exactly once, in canonical form: the smallest
/// vertex first and the second vertex smaller than the last.
pub fn for_each_cycle<F>(g: &Graph, len: usize, f: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = g.n();
    for s in 0..n {
        let higher = VertexSet::from_iter(n, s + 1..n);
        let nb = g.neighbors(s).intersection(&higher);
        if nb.len() < 2 {
            continue;
        }
        let sub = g.restricted_to(&higher);
        for a in nb.iter() {
            for b in nb.iter().filter(|&b| b > a) {
                // paths a -> b of length len-2 avoiding vertices below s
                let mut inner = |p: &[usize]| {
                    let mut c = Vec::with_capacity(len);
                    c.push(s);
                    c.extend_from_slice(p);
                    f(&c)
                };
                for_each_path(&sub, a, b, len - 2, &mut inner)?;
            }
        }
    }
    ControlFlow::Continue(())
}

/// All `L`-cycles of `g`, each once up to rotation and reflection.
pub fn enumerate_cycles(g: &Graph, len: usize, cap: usize) -> Result<Vec<Vec<usize>>, OracleError> {
    if len < 3 {
        return Err(OracleError::ShortCycle(len));
    }
    let mut out = Vec::new();
    let flow = for_each_cycle(g, len, &mut |c| {
        if out.len() == cap {
            return ControlFlow::Break(());
        }
        out.push(c.to_vec());
        ControlFlow::Continue(())
    });
    match flow {
        ControlFlow::Break(()) => Err(OracleError::CapExceeded(cap)),
        ControlFlow::Continue(()) => Ok(out),
    }
}

/// `L`-cycles of `g` that contain the edge `uv`, each starting `u, v, ..`.
pub fn cycles_through_edge(g: &Graph, u: usize, v: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let _ = for_each_path(g, v, u, len - 1, &mut |p| {
        let mut c = Vec::with_capacity(len);
        c.push(u);
        c.extend_from_slice(&p[..p.len() - 1]);
        out.push(c);
        ControlFlow::Continue(())
    });
    out
}

/// Result of the exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactOutcome {
    Found(CycleDecomposition),
    NoneExists,
    BudgetExceeded,
}

struct Search {
    len: usize,
    budget: u64,
    nodes: u64,
    edge_id: Vec<Vec<u32>>,
    state: Vec<u64>,
    failed: HashSet<Vec<u64>>,
    stack: Vec<Vec<usize>>,
}

struct OutOfBudget;

impl Search {
    fn toggle(&mut self, c: &[usize]) {
        for (u, v) in cycle_edges(c) {
            let id = self.edge_id[u][v] as usize;
            self.state[id / 64] ^= 1 << (id % 64);
        }
    }

    fn components_ok(&self, g: &Graph) -> bool {
        g.component_edge_counts().iter().all(|c| c % self.len == 0)
    }

    fn run(&mut self, g: &mut Graph) -> Result<bool, OutOfBudget> {
        let Some((u, v)) = g.first_edge() else {
            return Ok(true);
        };
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(OutOfBudget);
        }
        if self.failed.contains(&self.state) {
            return Ok(false);
        }
        if !self.components_ok(g) {
            self.remember_failure();
            return Ok(false);
        }
        for c in cycles_through_edge(g, u, v, self.len) {
            for (a, b) in cycle_edges(&c) {
                g.remove_edge(a, b);
            }
            self.toggle(&c);
            self.stack.push(c);
            let found = self.run(g);
            let c = self.stack.pop().expect("pushed above");
            if matches!(found, Ok(true)) {
                self.stack.push(c);
                return Ok(true);
            }
            self.toggle(&c);
            for (a, b) in cycle_edges(&c) {
                g.add_edge(a, b);
            }
            found?;
        }
        self.remember_failure();
        Ok(false)
    }

    fn remember_failure(&mut self) {
        if self.failed.len() < MEMO_CAP {
            self.failed.insert(self.state.clone());
        }
    }
}

/// Exhaustive search for a `C_L`-decomposition.
///
/// Branches on the lexicographically smallest uncovered edge, prunes on the edge count of
/// every residual component, and remembers residual edge sets already shown to fail.
/// `budget` bounds the number of search nodes.
pub fn exact_decompose(g: &Graph, len: usize, budget: u64) -> ExactOutcome {
    assert!(len >= 3, "cycle length must be at least 3");
    if !g.is_cycle_divisible(len) {
        return ExactOutcome::NoneExists;
    }
    let n = g.n();
    let mut edge_id = vec![vec![u32::MAX; n]; n];
    for (i, (u, v)) in g.edges().into_iter().enumerate() {
        edge_id[u][v] = i as u32;
        edge_id[v][u] = i as u32;
    }
    let words = g.edge_count().div_ceil(64).max(1);
    let mut search = Search {
        len,
        budget,
        nodes: 0,
        edge_id,
        state: vec![0; words],
        failed: HashSet::new(),
        stack: Vec::new(),
    };
    let mut work = g.clone();
    match search.run(&mut work) {
        Ok(true) => ExactOutcome::Found(CycleDecomposition {
            cycle_length: len,
            cycles: search.stack,
        }),
        Ok(false) => ExactOutcome::NoneExists,
        Err(OutOfBudget) => ExactOutcome::BudgetExceeded,
    }
}

/// Structural description that lets a parity certificate be checked without enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParityShape {
    /// Parts `a, b, c` with `b` independent and no `a`-`c` edges; the witness is `a`.
    /// Valid for `L = 4`.
    HubAndCliques { a: VertexSet, b: VertexSet, c: VertexSet },
    /// Parts `P_0..P_{r-1}` with every edge between cyclically consecutive parts and
    /// `r > L`; the witness is `P_i ∪ P_{i+1}` for some `i`.
    CycleBlowup { parts: Vec<VertexSet> },
}

/// A set `S` with `e(S)` odd such that every `L`-cycle uses an even number of edges of `G[S]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityCertificate {
    pub cycle_length: usize,
    pub witness: VertexSet,
    pub shape: Option<ParityShape>,
}

/// Edge counts of the components, at least one of which is not divisible by `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountCertificate {
    pub cycle_length: usize,
    pub component_edge_counts: Vec<usize>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("e(S) = {0} is even")]
    EvenWitness(usize),
    #[error("cycle {0:?} uses an odd number of witness edges")]
    OddCycle(Vec<usize>),
    #[error("graph does not have the declared shape: {0}")]
    ShapeMismatch(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("component edge counts {claimed:?} do not match the graph ({actual:?})")]
    CountMismatch { claimed: Vec<usize>, actual: Vec<usize> },
    #[error("every component edge count is divisible by {0}")]
    AllDivisible(usize),
}

/// Check a parity certificate; any valid one proves `g` has no `C_L`-decomposition.
pub fn check_parity_certificate(g: &Graph, cert: &ParityCertificate) -> Result<(), CertificateError> {
    let len = cert.cycle_length;
    if len < 3 {
        return Err(OracleError::ShortCycle(len).into());
    }
    let s = &cert.witness;
    let es = g.edges_within(s);
    if es % 2 == 0 {
        return Err(CertificateError::EvenWitness(es));
    }
    if g.n() <= EXHAUSTIVE_LIMIT {
        let mut bad = None;
        let _ = for_each_cycle(g, len, &mut |c| {
            let inside = cycle_edges(c)
                .filter(|&(u, v)| s.contains(u) && s.contains(v))
                .count();
            if inside % 2 == 1 {
                bad = Some(c.to_vec());
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        return match bad {
            Some(c) => Err(CertificateError::OddCycle(c)),
            None => Ok(()),
        };
    }
    match &cert.shape {
        Some(shape) => check_shape(g, len, s, shape),
        None => Err(OracleError::TooLarge(g.n()).into()),
    }
}

fn check_shape(g: &Graph, len: usize, s: &VertexSet, shape: &ParityShape) -> Result<(), CertificateError> {
    let mismatch = |m: &str| Err(CertificateError::ShapeMismatch(m.to_string()));
    match shape {
        ParityShape::HubAndCliques { a, b, c } => {
            if len != 4 {
                return mismatch("hub shape only certifies 4-cycles");
            }
            let parts = crate::graph::VertexPartition {
                parts: vec![a.clone(), b.clone(), c.clone()],
            };
            if !parts.is_partition_of(g.n()) {
                return mismatch("parts do not partition the vertex set");
            }
            if g.edges_within(b) != 0 {
                return mismatch("hub part is not independent");
            }
            if g.edges_between(a, c) != 0 {
                return mismatch("edges between the two outer parts");
            }
            if s != a {
                return mismatch("witness is not the first part");
            }
            Ok(())
        }
        ParityShape::CycleBlowup { parts } => {
            let r = parts.len();
            if r <= len || r < 3 {
                return mismatch("blow-up cycle must be longer than L");
            }
            let p = crate::graph::VertexPartition { parts: parts.clone() };
            if !p.is_partition_of(g.n()) {
                return mismatch("parts do not partition the vertex set");
            }
            let owner: Vec<usize> = (0..g.n()).map(|v| p.part_of(v).expect("partition")).collect();
            for (u, v) in g.edges() {
                let d = (owner[u] + r - owner[v]) % r;
                if d != 1 && d != r - 1 {
                    return mismatch("edge between non-consecutive parts");
                }
            }
            let ok = (0..r).any(|i| &parts[i].union(&parts[(i + 1) % r]) == s);
            if !ok {
                return mismatch("witness is not a union of two consecutive parts");
            }
            Ok(())
        }
    }
}

/// Check a component-count certificate.
pub fn check_count_certificate(g: &Graph, cert: &CountCertificate) -> Result<(), CertificateError> {
    let actual = g.component_edge_counts();
    if actual != cert.component_edge_counts {
        return Err(CertificateError::CountMismatch {
            claimed: cert.component_edge_counts.clone(),
            actual,
        });
    }
    if actual.iter().all(|c| c % cert.cycle_length == 0) {
        return Err(CertificateError::AllDivisible(cert.cycle_length));
    }
    Ok(())
}

/// Count certificate for `g` if some component has an edge count not divisible by `L`.
pub fn count_certificate(g: &Graph, len: usize) -> Option<CountCertificate> {
    let counts = g.component_edge_counts();
    counts.iter().any(|c| c % len != 0).then_some(CountCertificate {
        cycle_length: len,
        component_edge_counts: counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn cycle_counts_match_closed_forms() {
        assert_eq!(enumerate_cycles(&Graph::complete(4), 4, 100).unwrap().len(), 3);
        assert_eq!(enumerate_cycles(&Graph::complete_bipartite(3, 3), 4, 100).unwrap().len(), 9);
        for n in 4..9 {
            let c = enumerate_cycles(&Graph::complete(n), 4, 10_000).unwrap();
            assert_eq!(c.len(), 3 * binom(n, 4));
        }
        assert_eq!(enumerate_cycles(&Graph::complete(5), 5, 100).unwrap().len(), 12);
        assert_eq!(enumerate_cycles(&Graph::complete(5), 3, 100).unwrap().len(), 10);
    }

    #[test]
    fn enumeration_respects_cap() {
        assert_eq!(
            enumerate_cycles(&Graph::complete(6), 4, 5),
            Err(OracleError::CapExceeded(5))
        );
    }

    #[test]
    fn cycles_through_an_edge() {
        let k4 = Graph::complete(4);
        let c = cycles_through_edge(&k4, 0, 1, 4);
        assert_eq!(c, vec![vec![0, 1, 2, 3], vec![0, 1, 3, 2]]);
    }

    #[test]
    fn exact_search_small_cases() {
        match exact_decompose(&Graph::cycle(8), 8, DEFAULT_BUDGET) {
            ExactOutcome::Found(d) => assert_eq!(d.verify(&Graph::cycle(8)), Ok(())),
            other => panic!("{other:?}"),
        }
        assert_eq!(exact_decompose(&Graph::complete(5), 4, DEFAULT_BUDGET), ExactOutcome::NoneExists);
        assert_eq!(exact_decompose(&Graph::complete(9), 4, 0), ExactOutcome::BudgetExceeded);
    }

    #[test]
    fn count_certificate_round_trip() {
        let g = Graph::complete(5).union(&Graph::new(10));
        let c = count_certificate(&g, 4).unwrap();
        assert_eq!(c.component_edge_counts, vec![10]);
        assert_eq!(check_count_certificate(&g, &c), Ok(()));
        let wrong = CountCertificate {
            cycle_length: 5,
            component_edge_counts: vec![10],
        };
        assert_eq!(check_count_certificate(&g, &wrong), Err(CertificateError::AllDivisible(5)));
    }

    #[test]
    fn parity_certificate_rejects_even_witness() {
        let g = Graph::complete(4);
        let cert = ParityCertificate {
            cycle_length: 4,
            witness: VertexSet::from_iter(4, [0, 1]),
            shape: None,
        };
        // e(S) = 1, but 0-1-2-3 uses one witness edge
        assert!(matches!(check_parity_certificate(&g, &cert), Err(CertificateError::OddCycle(_))));
        let even = ParityCertificate {
            witness: VertexSet::from_iter(4, [0, 1, 2]),
            ..cert
        };
        // every 4-cycle of K_4 meets a triangle in exactly two edges
        assert_eq!(check_parity_certificate(&g, &even), Ok(()));
        let all = ParityCertificate {
            witness: VertexSet::full(4),
            ..even
        };
        assert_eq!(check_parity_certificate(&g, &all), Err(CertificateError::EvenWitness(6)));
    }
}
