//! Simple undirected graphs with bitset adjacency.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::bitset::VertexSet;

/// Hard ceiling on vertex ids accepted by the library.
pub const MAX_VERTICES: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("graph has {0} vertices, limit is {MAX_VERTICES}")]
    TooLarge(usize),
    #[error("edge {0}-{1} is not present")]
    MissingEdge(usize, usize),
    #[error("edge {0}-{1} lies inside one side of the bipartition")]
    EdgeInsidePart(usize, usize),
    #[error("bipartition does not cover the vertex set exactly")]
    BadBipartition,
    #[error("graph has no vertices")]
    Empty,
}

/// Undirected simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<VertexSet>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.n, self.m, self.edges())
    }
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            m: 0,
            adj: (0..n).map(|_| VertexSet::new(n)).collect(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Cycle `0-1-..-(len-1)-0`.
    pub fn cycle(len: usize) -> Self {
        let mut g = Graph::new(len);
        for i in 0..len {
            g.add_edge(i, (i + 1) % len);
        }
        g
    }

    /// Build from an edge list, rejecting loops, duplicates and bad ids.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.add_edge(u, v);
        Ok(())
    }

    /// Insert an edge; returns false if it was already there.
    ///
    /// Panics on a loop or an id outside the vertex range.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v && u < self.n && v < self.n, "bad edge {u}-{v}");
        if self.adj[u].insert(v) {
            self.adj[v].insert(u);
            self.m += 1;
            true
        } else {
            false
        }
    }

    /// Delete an edge; returns false if it was absent.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u >= self.n || v >= self.n {
            return false;
        }
        if self.adj[u].remove(v) {
            self.adj[v].remove(u);
            self.m -= 1;
            true
        } else {
            false
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    /// Lexicographically smallest edge.
    pub fn first_edge(&self) -> Option<(usize, usize)> {
        (0..self.n).find_map(|u| self.adj[u].iter().find(|&v| v > u).map(|v| (u, v)))
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// `d(v, S)`.
    pub fn degree_into(&self, v: usize, s: &VertexSet) -> usize {
        self.adj[v].intersection_len(s)
    }

    /// `e(S)`: edges with both ends in `S`.
    pub fn edges_within(&self, s: &VertexSet) -> usize {
        s.iter().map(|v| self.degree_into(v, s)).sum::<usize>() / 2
    }

    /// `e(S, T)` for disjoint `S`, `T`; shared vertices count once per ordered pair.
    pub fn edges_between(&self, s: &VertexSet, t: &VertexSet) -> usize {
        s.iter().map(|v| self.degree_into(v, t)).sum()
    }

    /// Vertices of positive degree.
    pub fn support(&self) -> VertexSet {
        VertexSet::from_iter(self.n, (0..self.n).filter(|&v| self.degree(v) > 0))
    }

    /// Same graph padded with isolated vertices up to `n`.
    pub fn resized(&self, n: usize) -> Graph {
        assert!(n >= self.n, "cannot shrink a graph by resizing");
        let mut g = Graph::new(n);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        g
    }

    /// Edge union; the result has `max(n)` vertices.
    pub fn union(&self, other: &Graph) -> Graph {
        let mut g = self.resized(self.n.max(other.n));
        for (u, v) in other.edges() {
            g.add_edge(u, v);
        }
        g
    }

    /// `G - H`: remove the edges of `h`, which must all be present.
    pub fn minus(&self, h: &Graph) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        for (u, v) in h.edges() {
            if !g.remove_edge(u, v) {
                return Err(GraphError::MissingEdge(u, v));
            }
        }
        Ok(g)
    }

    /// Edge sets are disjoint.
    pub fn is_edge_disjoint(&self, other: &Graph) -> bool {
        let (small, big) = if self.m <= other.m { (self, other) } else { (other, self) };
        small.edges().into_iter().all(|(u, v)| !big.has_edge(u, v))
    }

    /// Every edge of `self` is an edge of `other`.
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.edges().into_iter().all(|(u, v)| other.has_edge(u, v))
    }

    /// Edges with both ends in `s`, keeping vertex ids.
    pub fn restricted_to(&self, s: &VertexSet) -> Graph {
        let mut g = Graph::new(self.n);
        for u in s.iter().filter(|&u| u < self.n) {
            for v in self.adj[u].intersection(s).iter().filter(|&v| v > u) {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Drop every edge touching `s`, keeping vertex ids.
    pub fn without_edges_at(&self, s: &VertexSet) -> Graph {
        let keep = s.complement(self.n);
        self.restricted_to(&keep)
    }

    /// Edges between `s` and `t` only, keeping vertex ids.
    pub fn bipartite_part(&self, s: &VertexSet, t: &VertexSet) -> Graph {
        let mut g = Graph::new(self.n);
        for u in s.iter() {
            for v in self.adj[u].intersection(t).iter() {
                if !g.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Induced subgraph on `s`, relabelled to `0..|s|`; the map sends new ids to old.
    pub fn induced(&self, s: &VertexSet) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = s.iter().filter(|&v| v < self.n).collect();
        let mut back = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            back[v] = i;
        }
        let mut g = Graph::new(map.len());
        for (i, &u) in map.iter().enumerate() {
            for v in self.adj[u].iter() {
                let j = back[v];
                if j != usize::MAX && j > i {
                    g.add_edge(i, j);
                }
            }
        }
        (g, map)
    }

    /// `G \ S`: induced subgraph on the complement of `s`, relabelled.
    pub fn without_vertices(&self, s: &VertexSet) -> (Graph, Vec<usize>) {
        self.induced(&s.complement(self.n))
    }

    /// Rename vertices through `map` into a graph on `n` vertices.
    pub fn relabelled(&self, map: &[usize], n: usize) -> Graph {
        let mut g = Graph::new(n);
        for (u, v) in self.edges() {
            g.add_edge(map[u], map[v]);
        }
        g
    }

    /// Connected components of the edge-bearing part, each as a vertex set,
    /// ordered by smallest vertex.
    pub fn edge_components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new(self.n);
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen.contains(s) || self.degree(s) == 0 {
                continue;
            }
            let mut comp = VertexSet::new(self.n);
            let mut stack = vec![s];
            seen.insert(s);
            while let Some(u) = stack.pop() {
                comp.insert(u);
                for v in self.adj[u].iter() {
                    if seen.insert(v) {
                        stack.push(v);
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }

    /// All edges lie in one component (isolated vertices are ignored).
    pub fn is_edge_connected(&self) -> bool {
        self.edge_components().len() <= 1
    }

    /// Edge counts of the edge-bearing components.
    pub fn component_edge_counts(&self) -> Vec<usize> {
        self.edge_components()
            .iter()
            .map(|c| self.edges_within(c))
            .collect()
    }

    /// Every degree is even.
    pub fn is_two_divisible(&self) -> bool {
        (0..self.n).all(|v| self.degree(v) % 2 == 0)
    }

    /// `C_L`-divisible: `L | e(G)` and every degree is even.
    pub fn is_cycle_divisible(&self, cycle_length: usize) -> bool {
        assert!(cycle_length >= 3, "cycle length must be at least 3");
        self.m % cycle_length == 0 && self.is_two_divisible()
    }

    pub fn odd_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) % 2 == 1).collect()
    }

    /// Check that every edge crosses the bipartition.
    pub fn check_bipartition(&self, p: &Bipartition) -> Result<(), GraphError> {
        p.check_cover(self.n)?;
        for (u, v) in self.edges() {
            if p.side_of(u) == p.side_of(v) {
                return Err(GraphError::EdgeInsidePart(u, v));
            }
        }
        Ok(())
    }

    /// `δ_bip`: minimum over vertices of `d(v) / |other side|`.
    pub fn bipartite_min_degree(&self, p: &Bipartition) -> Result<Fraction, GraphError> {
        self.check_bipartition(p)?;
        if self.n == 0 {
            return Err(GraphError::Empty);
        }
        let mut best: Option<Fraction> = None;
        for v in 0..self.n {
            let other = if p.left.contains(v) { p.right.len() } else { p.left.len() };
            let f = Fraction::new(self.degree(v), other.max(1));
            if best.is_none_or(|b| f < b) {
                best = Some(f);
            }
        }
        Ok(best.expect("non-empty"))
    }
}

/// Ordered pair of disjoint sides covering the vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub left: VertexSet,
    pub right: VertexSet,
}

impl Bipartition {
    pub fn new(left: VertexSet, right: VertexSet) -> Self {
        Bipartition { left, right }
    }

    /// Left side is `0..a`, right side is `a..n`.
    pub fn split_at(a: usize, n: usize) -> Self {
        Bipartition {
            left: VertexSet::from_iter(n, 0..a),
            right: VertexSet::from_iter(n, a..n),
        }
    }

    pub fn check_cover(&self, n: usize) -> Result<(), GraphError> {
        let all = VertexSet::full(n);
        if !self.left.is_disjoint(&self.right)
            || self.left.len() + self.right.len() != n
            || !self.left.is_subset(&all)
            || !self.right.is_subset(&all)
        {
            return Err(GraphError::BadBipartition);
        }
        Ok(())
    }

    /// 0 for the left side, 1 for the right.
    pub fn side_of(&self, v: usize) -> u8 {
        if self.left.contains(v) {
            0
        } else {
            1
        }
    }

    pub fn side(&self, s: u8) -> &VertexSet {
        if s == 0 {
            &self.left
        } else {
            &self.right
        }
    }
}

/// Ordered list of disjoint parts covering the vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPartition {
    pub parts: Vec<VertexSet>,
}

impl VertexPartition {
    pub fn part_of(&self, v: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(v))
    }

    pub fn is_partition_of(&self, n: usize) -> bool {
        let mut seen = VertexSet::new(n);
        for p in &self.parts {
            if !p.is_disjoint(&seen) {
                return false;
            }
            seen.union_with(p);
        }
        seen.len() == n && seen.iter().all(|v| v < n)
    }
}

/// Non-negative rational number in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fraction {
    pub num: usize,
    pub den: usize,
}

impl Fraction {
    pub fn new(num: usize, den: usize) -> Self {
        assert!(den > 0, "zero denominator");
        let g = gcd(num, den);
        Fraction {
            num: num / g,
            den: den / g,
        }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// `⌈x·n⌉` with a small tolerance so that e.g. `0.3 · 10` rounds to 3.
pub fn ceil_frac(x: f64, n: usize) -> usize {
    let v = x * n as f64;
    if v <= 0.0 {
        0
    } else {
        (v - 1e-9).ceil().max(0.0) as usize
    }
}

/// `⌊x·n⌋` with the same tolerance as [`ceil_frac`].
pub fn floor_frac(x: f64, n: usize) -> usize {
    let v = x * n as f64;
    if v <= 0.0 {
        0
    } else {
        (v + 1e-9).floor() as usize
    }
}
