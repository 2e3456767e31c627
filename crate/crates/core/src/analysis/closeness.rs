//! Balanced bisections minimising crossing edges or inside edges.

use rand::Rng as _;

use crate::bitset::VertexSet;
use crate::graph::{Fraction, Graph};
use crate::rng::indexed_stream;

/// Largest `n` for which the minimum is found by enumerating every balanced set.
pub const EXACT_LIMIT: usize = 20;
/// Independent annealing runs in heuristic mode.
pub const RESTARTS: u64 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objective {
    /// `e(S, S̄)`, small when the graph is close to two disjoint cliques.
    Cut,
    /// `e(S)`, small when the graph is close to bipartite.
    Inside,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Search {
    /// Exact up to [`EXACT_LIMIT`] vertices, annealing above.
    Auto { seed: u64 },
    /// Exact regardless of size.
    Exact,
}

impl Default for Search {
    fn default() -> Self {
        Search::Auto { seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closeness {
    /// Achieved `ε = edges / n²`.
    pub epsilon: Fraction,
    pub edges: usize,
    /// A set of size `⌊n/2⌋` achieving `edges`.
    pub set: VertexSet,
    pub exact: bool,
}

pub fn closeness_two_cliques(g: &Graph) -> Closeness {
    closeness(g, Objective::Cut, Search::default())
}

pub fn closeness_bipartite(g: &Graph) -> Closeness {
    closeness(g, Objective::Inside, Search::default())
}

/// Minimise the objective over sets of size `⌊n/2⌋`.
pub fn closeness(g: &Graph, objective: Objective, search: Search) -> Closeness {
    let n = g.n();
    assert!(n >= 2, "closeness needs at least two vertices");
    let (edges, set, exact) = match search {
        Search::Exact => {
            let (e, s) = exact_min(g, objective);
            (e, s, true)
        }
        Search::Auto { .. } if n <= EXACT_LIMIT => {
            let (e, s) = exact_min(g, objective);
            (e, s, true)
        }
        Search::Auto { seed } => {
            let (e, s) = anneal_min(g, objective, seed);
            (e, s, false)
        }
    };
    Closeness {
        epsilon: Fraction::new(edges, n * n),
        edges,
        set,
        exact,
    }
}

/// Objective value of `s` computed from scratch.
pub fn objective_value(g: &Graph, s: &VertexSet, objective: Objective) -> usize {
    match objective {
        Objective::Cut => g.edges_between(s, &s.complement(g.n())),
        Objective::Inside => g.edges_within(s),
    }
}

fn exact_min(g: &Graph, objective: Objective) -> (usize, VertexSet) {
    let n = g.n();
    assert!(n <= 63, "exact closeness is limited to 63 vertices");
    let half = n / 2;
    let adj: Vec<u64> = (0..n).map(|v| g.neighbors(v).iter().fold(0u64, |m, w| m | 1 << w)).collect();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let value = |mask: u64| -> usize {
        let mut total = 0usize;
        let mut bits = mask;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            total += match objective {
                Objective::Cut => (adj[v] & !mask & full).count_ones() as usize,
                Objective::Inside => (adj[v] & mask).count_ones() as usize,
            };
        }
        match objective {
            Objective::Cut => total,
            Objective::Inside => total / 2,
        }
    };
    let mut best = (usize::MAX, 0u64);
    if half == 0 {
        return (0, VertexSet::new(n));
    }
    let mut mask: u64 = (1u64 << half) - 1;
    // Gosper's hack visits sets of a fixed size in increasing numeric order; the first
    // minimum found is kept.
    while mask <= full {
        let val = value(mask);
        if val < best.0 {
            best = (val, mask);
            if val == 0 {
                break;
            }
        }
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    let set = VertexSet::from_iter(n, (0..n).filter(|&v| best.1 >> v & 1 == 1));
    (best.0, set)
}

fn anneal_min(g: &Graph, objective: Objective, seed: u64) -> (usize, VertexSet) {
    let mut best: Option<(usize, Vec<usize>)> = None;
    for restart in 0..RESTARTS {
        let (val, set) = anneal_once(g, objective, seed, restart);
        let mut key = set.to_vec();
        key.sort_unstable();
        let better = match &best {
            None => true,
            Some((bv, bk)) => (val, &key) < (*bv, bk),
        };
        if better {
            best = Some((val, key));
        }
    }
    let (val, key) = best.expect("at least one restart");
    (val, VertexSet::from_iter(g.n(), key))
}

fn anneal_once(g: &Graph, objective: Objective, seed: u64, restart: u64) -> (usize, VertexSet) {
    let n = g.n();
    let half = n / 2;
    let mut rng = indexed_stream(seed, "closeness/anneal", restart);
    let mut order: Vec<usize> = (0..n).collect();
    rand::seq::SliceRandom::shuffle(order.as_mut_slice(), &mut rng);
    let mut in_s = vec![false; n];
    for &v in &order[..half] {
        in_s[v] = true;
    }
    let mut inside: Vec<usize> = order[..half].to_vec();
    let mut outside: Vec<usize> = order[half..].to_vec();
    let set_of = |in_s: &[bool]| VertexSet::from_iter(n, (0..n).filter(|&v| in_s[v]));
    // deg_in[v] = |N(v) ∩ S|
    let mut deg_in: Vec<i64> = (0..n)
        .map(|v| g.neighbors(v).iter().filter(|&w| in_s[w]).count() as i64)
        .collect();
    let mut value = objective_value(g, &set_of(&in_s), objective) as i64;
    let mut best = (value, in_s.clone());
    if half == 0 || outside.is_empty() {
        return (value as usize, set_of(&in_s));
    }
    let steps = 400 * n;
    let t0 = (g.max_degree() as f64 / 2.0).max(1.0);
    for step in 0..steps {
        let temp = t0 * (1.0 - step as f64 / steps as f64) + 1e-3;
        let ia = rng.gen_range(0..inside.len());
        let ib = rng.gen_range(0..outside.len());
        let (a, b) = (inside[ia], outside[ib]);
        let ab = g.has_edge(a, b) as i64;
        let out = |v: usize| g.degree(v) as i64 - deg_in[v];
        let delta = match objective {
            Objective::Cut => deg_in[a] - out(a) + out(b) - deg_in[b] + 2 * ab,
            Objective::Inside => deg_in[b] - deg_in[a] - ab,
        };
        if delta <= 0 || rng.gen::<f64>() < (-(delta as f64) / temp).exp() {
            in_s[a] = false;
            in_s[b] = true;
            for w in g.neighbors(a).iter() {
                deg_in[w] -= 1;
            }
            for w in g.neighbors(b).iter() {
                deg_in[w] += 1;
            }
            inside[ia] = b;
            outside[ib] = a;
            value += delta;
            if value < best.0 {
                best = (value, in_s.clone());
                if value == 0 {
                    break;
                }
            }
        }
    }
    let set = set_of(&best.1);
    debug_assert_eq!(objective_value(g, &set, objective) as i64, best.0);
    (best.0 as usize, set)
}
