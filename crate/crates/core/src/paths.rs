//! Exact-length path and cycle search with per-position vertex classes.
//!
//! All cover and embedding routines reduce to one query: find a path `from = p_0, .., p_len = to`
//! using edges of a working graph, with interior vertex `p_i` drawn from `layers[i-1]`.
//! Bitset pruning at the last two steps keeps the depth-first search cheap on dense graphs.

use rand::Rng as _;

use crate::bitset::VertexSet;
use crate::graph::Graph;
use crate::rng::Rng;

/// Default number of search nodes per query.
pub const DEFAULT_NODE_BUDGET: usize = 20_000;

/// Search parameters shared by many queries.
pub struct PathQuery<'a> {
    pub graph: &'a Graph,
    /// Interior uses per vertex; lower is tried first.
    pub load: Option<&'a [u32]>,
    pub budget: usize,
}

impl<'a> PathQuery<'a> {
    pub fn new(graph: &'a Graph) -> Self {
        PathQuery {
            graph,
            load: None,
            budget: DEFAULT_NODE_BUDGET,
        }
    }

    pub fn with_load(mut self, load: &'a [u32]) -> Self {
        self.load = Some(load);
        self
    }

    /// Path of length `layers.len() + 1` from `from` to `to`; interior vertex `i` lies in
    /// `layers[i]`. All vertices are distinct.
    pub fn find(&self, from: usize, to: usize, layers: &[&VertexSet], rng: &mut Rng) -> Option<Vec<usize>> {
        if from == to {
            return None;
        }
        if layers.is_empty() {
            return self.graph.has_edge(from, to).then(|| vec![from, to]);
        }
        let mut st = State {
            q: self,
            to,
            layers,
            salt: rng.gen(),
            nodes: 0,
            path: vec![from],
            used: VertexSet::new(self.graph.n()),
        };
        st.used.insert(from);
        st.used.insert(to);
        if st.dfs(0) {
            st.path.push(to);
            Some(st.path)
        } else {
            None
        }
    }

    /// Same as [`find`](Self::find) with one class for every interior position.
    pub fn find_in(&self, from: usize, to: usize, len: usize, allowed: &VertexSet, rng: &mut Rng) -> Option<Vec<usize>> {
        if len == 0 {
            return None;
        }
        let layers = vec![allowed; len - 1];
        self.find(from, to, &layers, rng)
    }

    /// Cycle of length `len` through edge `uv`, other vertices from `allowed`; starts `u, v, ..`.
    pub fn cycle_through(&self, u: usize, v: usize, len: usize, allowed: &VertexSet, rng: &mut Rng) -> Option<Vec<usize>> {
        if !self.graph.has_edge(u, v) || len < 3 {
            return None;
        }
        let p = self.find_in(v, u, len - 1, allowed, rng)?;
        let mut c = Vec::with_capacity(len);
        c.push(u);
        c.extend_from_slice(&p[..p.len() - 1]);
        Some(c)
    }
}

struct State<'q, 'a> {
    q: &'q PathQuery<'a>,
    to: usize,
    layers: &'q [&'q VertexSet],
    salt: u64,
    nodes: usize,
    path: Vec<usize>,
    used: VertexSet,
}

fn mix(v: usize, salt: u64) -> u64 {
    let mut z = (v as u64) ^ salt;
    z = (z ^ (z >> 33)).wrapping_mul(0xff51_afd7_ed55_8ccd);
    z ^ (z >> 33)
}

impl State<'_, '_> {
    fn dfs(&mut self, depth: usize) -> bool {
        let g = self.q.graph;
        let cur = *self.path.last().expect("non-empty");
        let left = self.layers.len() - depth;
        if left == 0 {
            return g.has_edge(cur, self.to);
        }
        let mut cand = g.neighbors(cur).intersection(self.layers[depth]);
        cand.difference_with(&self.used);
        if left == 1 {
            cand.intersect_with(g.neighbors(self.to));
        }
        let mut order: Vec<usize> = cand.iter().collect();
        if order.is_empty() {
            return false;
        }
        let salt = self.salt ^ (depth as u64).wrapping_mul(0x9e37_79b9);
        match self.q.load {
            Some(load) => order.sort_by_key(|&v| (load[v], mix(v, salt))),
            None => order.sort_by_key(|&v| mix(v, salt)),
        }
        for w in order {
            self.nodes += 1;
            if self.nodes > self.q.budget {
                return false;
            }
            if left == 1 {
                self.path.push(w);
                return true;
            }
            self.path.push(w);
            self.used.insert(w);
            if self.dfs(depth + 1) {
                return true;
            }
            self.used.remove(w);
            self.path.pop();
        }
        false
    }
}

/// Edges of a path given as a vertex sequence.
pub fn path_edges(p: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    p.windows(2).map(|w| (w[0], w[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;

    #[test]
    fn finds_exact_length_paths() {
        let g = Graph::complete(8);
        let all = VertexSet::full(8);
        let mut rng = stream(1, "t");
        for len in 1..8 {
            let p = PathQuery::new(&g).find_in(0, 1, len, &all, &mut rng).unwrap();
            assert_eq!(p.len(), len + 1);
            assert_eq!((p[0], p[len]), (0, 1));
            let distinct: VertexSet = VertexSet::from_iter(8, p.iter().copied());
            assert_eq!(distinct.len(), len + 1);
        }
        assert!(PathQuery::new(&g).find_in(0, 1, 8, &all, &mut rng).is_none());
    }

    #[test]
    fn respects_layers_and_parity() {
        let g = Graph::complete_bipartite(4, 4);
        let all = VertexSet::full(8);
        let mut rng = stream(2, "t");
        // same side needs even length
        assert!(PathQuery::new(&g).find_in(0, 1, 3, &all, &mut rng).is_none());
        assert!(PathQuery::new(&g).find_in(0, 1, 4, &all, &mut rng).is_some());
        let left = VertexSet::from_iter(8, 0..4);
        let right = VertexSet::from_iter(8, 4..8);
        let p = PathQuery::new(&g).find(0, 5, &[&right, &left], &mut rng).unwrap();
        assert!(right.contains(p[1]) && left.contains(p[2]));
    }

    #[test]
    fn cycle_through_edge() {
        let g = Graph::complete(6);
        let mut rng = stream(3, "t");
        let c = PathQuery::new(&g).cycle_through(2, 4, 5, &VertexSet::full(6), &mut rng).unwrap();
        assert_eq!(c.len(), 5);
        assert_eq!(&c[..2], &[2, 4]);
    }
}
