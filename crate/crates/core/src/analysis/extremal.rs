//! Two large sets with no edges between them (type 1) or none inside either (type 2).

use crate::bitset::VertexSet;
use crate::graph::Graph;

/// Largest `n` searched exhaustively.
pub const EXACT_LIMIT: usize = 18;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtremalType {
    /// `e(S, T) = 0`.
    Type1,
    /// `e(S) = e(T) = 0`.
    Type2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalWitness {
    pub kind: ExtremalType,
    pub s: VertexSet,
    pub t: VertexSet,
    /// Required size `⌈n/3 − m⌉` (at least 0).
    pub min_size: usize,
    pub exact: bool,
}

/// `⌈n/3 − m⌉`, clamped at 0.
pub fn extremal_size(n: usize, m: usize) -> usize {
    ((n + 2) / 3).saturating_sub(m)
}

/// No edge joins a vertex of `x` to a vertex of `y`; the sets may overlap.
pub fn is_cross_free(g: &Graph, x: &VertexSet, y: &VertexSet) -> bool {
    x.iter().all(|v| g.neighbors(v).is_disjoint(y))
}

/// Check a witness against the definition: disjoint sets of the required size with the
/// defining edge condition.
pub fn check_witness(g: &Graph, w: &ExtremalWitness) -> bool {
    if !w.s.is_disjoint(&w.t) || w.s.len() < w.min_size || w.t.len() < w.min_size {
        return false;
    }
    match w.kind {
        ExtremalType::Type1 => is_cross_free(g, &w.s, &w.t),
        ExtremalType::Type2 => g.edges_within(&w.s) == 0 && g.edges_within(&w.t) == 0,
    }
}

/// Search for an `m`-extremal witness, type 1 first.
pub fn find_m_extremal(g: &Graph, m: usize) -> Option<ExtremalWitness> {
    find_of_type(g, m, ExtremalType::Type1).or_else(|| find_of_type(g, m, ExtremalType::Type2))
}

pub fn find_of_type(g: &Graph, m: usize, kind: ExtremalType) -> Option<ExtremalWitness> {
    let n = g.n();
    let s0 = extremal_size(n, m);
    let exact = n <= EXACT_LIMIT;
    let found = match (kind, exact) {
        (ExtremalType::Type1, true) => exact_type1(g, s0),
        (ExtremalType::Type2, true) => exact_type2(g, s0),
        (ExtremalType::Type1, false) => greedy_type1(g, s0),
        (ExtremalType::Type2, false) => greedy_type2(g, s0),
    };
    found.map(|(s, t)| {
        let w = ExtremalWitness {
            kind,
            s,
            t,
            min_size: s0,
            exact,
        };
        debug_assert!(check_witness(g, &w));
        w
    })
}

fn masks(g: &Graph) -> Vec<u32> {
    (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u32, |m, w| m | 1 << w)).collect()
}

fn to_set(n: usize, mask: u32) -> VertexSet {
    VertexSet::from_iter(n, (0..n).filter(|&v| mask >> v & 1 == 1))
}

/// Every `size`-subset of `0..n` in increasing numeric order.
fn for_each_subset(n: usize, size: usize, mut f: impl FnMut(u32) -> bool) {
    if size > n {
        return;
    }
    if size == 0 {
        f(0);
        return;
    }
    let full: u64 = (1u64 << n) - 1;
    let mut mask: u64 = (1u64 << size) - 1;
    while mask <= full {
        if f(mask as u32) {
            return;
        }
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
}

fn exact_type1(g: &Graph, s0: usize) -> Option<(VertexSet, VertexSet)> {
    let n = g.n();
    let adj = masks(g);
    let full = ((1u64 << n) - 1) as u32;
    let mut out = None;
    // a minimal S suffices: T can be all of V \ N[S]
    for_each_subset(n, s0, |s| {
        let mut closed = s;
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros();
            bits &= bits - 1;
            closed |= adj[v as usize];
        }
        let z = full & !closed;
        if z.count_ones() as usize >= s0 {
            out = Some((to_set(n, s), to_set(n, z)));
            return true;
        }
        false
    });
    out
}

fn exact_type2(g: &Graph, s0: usize) -> Option<(VertexSet, VertexSet)> {
    let n = g.n();
    let adj = masks(g);
    let independent = |s: u32| {
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros();
            bits &= bits - 1;
            if adj[v as usize] & s != 0 {
                return false;
            }
        }
        true
    };
    let mut sets = Vec::new();
    for_each_subset(n, s0, |s| {
        if independent(s) {
            sets.push(s);
        }
        false
    });
    for (i, &a) in sets.iter().enumerate() {
        if let Some(&b) = sets[i..].iter().find(|&&b| a & b == 0) {
            return Some((to_set(n, a), to_set(n, b)));
        }
    }
    None
}

fn greedy_type1(g: &Graph, s0: usize) -> Option<(VertexSet, VertexSet)> {
    let n = g.n();
    for start in 0..n {
        let mut s = VertexSet::new(n);
        let mut closed = g.neighbors(start).clone();
        closed.insert(start);
        s.insert(start);
        while s.len() < s0 {
            // add the vertex inside N[S] \ S whose closed neighbourhood grows N[S] least
            let pick = closed
                .difference(&s)
                .iter()
                .chain((0..n).filter(|v| !closed.contains(*v)))
                .min_by_key(|&v| {
                    let mut c = g.neighbors(v).difference(&closed);
                    c.remove(v);
                    (c.len(), v)
                });
            let Some(v) = pick else { break };
            s.insert(v);
            closed.union_with(g.neighbors(v));
            closed.insert(v);
        }
        let z = closed.complement(n);
        if s.len() >= s0 && z.len() >= s0 {
            return Some((s, z));
        }
    }
    None
}

fn greedy_independent(g: &Graph, allowed: &VertexSet, start: usize) -> VertexSet {
    let mut pool = allowed.clone();
    let mut out = VertexSet::new(g.n());
    let mut next = Some(start).filter(|&v| pool.contains(v));
    while let Some(v) = next.or_else(|| pool.iter().min_by_key(|&v| (g.degree_into(v, &pool), v))) {
        out.insert(v);
        pool.remove(v);
        pool.difference_with(g.neighbors(v));
        next = None;
    }
    out
}

fn greedy_type2(g: &Graph, s0: usize) -> Option<(VertexSet, VertexSet)> {
    let n = g.n();
    let all = VertexSet::full(n);
    for start in 0..n {
        let s = greedy_independent(g, &all, start);
        if s.len() < s0 {
            continue;
        }
        let rest = s.complement(n);
        let t = greedy_independent(g, &rest, rest.first().unwrap_or(0));
        if t.len() >= s0 {
            return Some((s, t));
        }
    }
    None
}
