//! Deterministic constructions of the extremal families plus seeded random families.
//!
//! Vertices are labelled part by part in the order the parts are named.

use rand::seq::SliceRandom;
use rand::Rng as _;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::graph::{Bipartition, Graph, VertexPartition, MAX_VERTICES};
use crate::oracle::{count_certificate, CountCertificate, ParityCertificate, ParityShape};
use crate::rng::{stream, Rng};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeneratorError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("could not reach the requested minimum degree {0}")]
    Unreachable(usize),
}

fn invalid(msg: impl Into<String>) -> GeneratorError {
    GeneratorError::InvalidParameter(msg.into())
}

/// A generated graph with whatever structure the family knows about itself.
#[derive(Clone, Debug)]
pub struct GeneratorOutput {
    pub graph: Graph,
    pub partition: Option<VertexPartition>,
    pub bipartition: Option<Bipartition>,
    pub parity: Option<ParityCertificate>,
    pub count: Option<CountCertificate>,
}

impl GeneratorOutput {
    fn plain(graph: Graph) -> Self {
        GeneratorOutput {
            graph,
            partition: None,
            bipartition: None,
            parity: None,
            count: None,
        }
    }
}

fn range_set(n: usize, lo: usize, hi: usize) -> VertexSet {
    VertexSet::from_iter(n, lo..hi)
}

fn add_clique(g: &mut Graph, lo: usize, hi: usize) {
    for u in lo..hi {
        for v in u + 1..hi {
            g.add_edge(u, v);
        }
    }
}

fn add_biclique(g: &mut Graph, a: (usize, usize), b: (usize, usize)) {
    for u in a.0..a.1 {
        for v in b.0..b.1 {
            g.add_edge(u, v);
        }
    }
}

/// Parts `A` (4m+2), `B` (4m+3), `C` (4m-2): cliques on `A` and `C`, `B` joined to both.
///
/// `e = 4(12m^2 + 5m + 1)` and `δ = 8m`; every 4-cycle meets `G[A]` in an even number of
/// edges while `e(A)` is odd, so there is no `C_4`-decomposition.
pub fn gen_c4_extremal(m: usize) -> Result<GeneratorOutput, GeneratorError> {
    if m < 1 {
        return Err(invalid("m must be at least 1"));
    }
    let (a, b, c) = (4 * m + 2, 4 * m + 3, 4 * m - 2);
    let n = a + b + c;
    let mut g = Graph::new(n);
    add_clique(&mut g, 0, a);
    add_clique(&mut g, a + b, n);
    add_biclique(&mut g, (0, a), (a, a + b));
    add_biclique(&mut g, (a, a + b), (a + b, n));
    let (sa, sb, sc) = (range_set(n, 0, a), range_set(n, a, a + b), range_set(n, a + b, n));
    let parity = ParityCertificate {
        cycle_length: 4,
        witness: sa.clone(),
        shape: Some(ParityShape::HubAndCliques {
            a: sa.clone(),
            b: sb.clone(),
            c: sc.clone(),
        }),
    };
    Ok(GeneratorOutput {
        partition: Some(VertexPartition {
            parts: vec![sa, sb, sc],
        }),
        parity: Some(parity),
        ..GeneratorOutput::plain(g)
    })
}

/// Two disjoint copies of `K_n` with `n = 2k + 1 + 4kj`.
pub fn gen_two_cliques(k: usize, j: usize) -> Result<GeneratorOutput, GeneratorError> {
    if k < 2 {
        return Err(invalid("k must be at least 2"));
    }
    let s = 2 * k + 1 + 4 * k * j;
    if 2 * s > MAX_VERTICES {
        return Err(invalid("graph too large"));
    }
    let mut g = Graph::new(2 * s);
    add_clique(&mut g, 0, s);
    add_clique(&mut g, s, 2 * s);
    let count = count_certificate(&g, 2 * k);
    Ok(GeneratorOutput {
        partition: Some(VertexPartition {
            parts: vec![range_set(2 * s, 0, s), range_set(2 * s, s, 2 * s)],
        }),
        count,
        ..GeneratorOutput::plain(g)
    })
}

/// Blow-up of `C_6` with parts `V_1..V_6` of size `2m+1`, minus one 6-cycle inside `G[V_5, V_6]`.
///
/// `e = 24m(m+1)`, `δ = 4m`; sides are `V_1 ∪ V_3 ∪ V_5` and `V_2 ∪ V_4 ∪ V_6`.
pub fn gen_c4_bip_extremal(m: usize) -> Result<GeneratorOutput, GeneratorError> {
    if m < 1 {
        return Err(invalid("m must be at least 1"));
    }
    let s = 2 * m + 1;
    let n = 6 * s;
    let mut g = Graph::new(n);
    let part = |i: usize| (i * s, (i + 1) * s);
    for i in 0..6 {
        add_biclique(&mut g, part(i), part((i + 1) % 6));
    }
    let (v5, v6) = (part(4).0, part(5).0);
    let hole = [v5, v6, v5 + 1, v6 + 1, v5 + 2, v6 + 2];
    for i in 0..6 {
        g.remove_edge(hole[i], hole[(i + 1) % 6]);
    }
    let parts: Vec<VertexSet> = (0..6).map(|i| range_set(n, part(i).0, part(i).1)).collect();
    let left = parts[0].union(&parts[2]).union(&parts[4]);
    let right = left.complement(n);
    let parity = ParityCertificate {
        cycle_length: 4,
        witness: parts[0].union(&parts[1]),
        shape: Some(ParityShape::CycleBlowup { parts: parts.clone() }),
    };
    Ok(GeneratorOutput {
        partition: Some(VertexPartition { parts }),
        bipartition: Some(Bipartition::new(left, right)),
        parity: Some(parity),
        ..GeneratorOutput::plain(g)
    })
}

/// Part sizes of the `C_{2k}` bipartite extremal family.
///
/// Even `k`: two copies of `K^-_{m,m}` with `m ≡ k+1 (mod 2k)`.
/// Odd `k`: `K^-_{2m+1,2m+1}` plus `K_{2m,2m}` with `4m ≡ k-1 (mod 2k)`.
/// The smallest valid `m ≥ 1` is used, shifted by `index · 2k`.
pub fn c2k_bip_parameter(k: usize, index: usize) -> usize {
    let base = (1..=2 * k)
        .find(|&m| {
            if k % 2 == 0 {
                m % (2 * k) == (k + 1) % (2 * k)
            } else {
                (4 * m) % (2 * k) == (k - 1) % (2 * k)
            }
        })
        .expect("a residue class always has a representative");
    base + index * 2 * k
}

/// Balanced bipartite `C_{2k}`-divisible graph with `δ_bip` just below the threshold
/// and no `C_{2k}`-decomposition.
pub fn gen_c2k_bip_extremal(k: usize, index: usize) -> Result<GeneratorOutput, GeneratorError> {
    if k < 2 {
        return Err(invalid("k must be at least 2"));
    }
    let m = c2k_bip_parameter(k, index);
    // component sizes (left, right) and whether a perfect matching is removed
    let comps: Vec<(usize, bool)> = if k % 2 == 0 {
        vec![(m, true), (m, true)]
    } else {
        vec![(2 * m + 1, true), (2 * m, false)]
    };
    let n: usize = comps.iter().map(|(s, _)| 2 * s).sum();
    if n > MAX_VERTICES {
        return Err(invalid("graph too large"));
    }
    let mut g = Graph::new(n);
    let mut left = VertexSet::new(n);
    let mut off = 0;
    for &(s, minus) in &comps {
        add_biclique(&mut g, (off, off + s), (off + s, off + 2 * s));
        if minus {
            for i in 0..s {
                g.remove_edge(off + i, off + s + i);
            }
        }
        for v in off..off + s {
            left.insert(v);
        }
        off += 2 * s;
    }
    let right = left.complement(n);
    let count = count_certificate(&g, 2 * k);
    Ok(GeneratorOutput {
        bipartition: Some(Bipartition::new(left, right)),
        count,
        ..GeneratorOutput::plain(g)
    })
}

/// `G(n, p)` topped up until every degree is at least `⌈δ n⌉`.
pub fn gen_random_min_degree(n: usize, delta: f64, p: f64, seed: u64) -> Result<GeneratorOutput, GeneratorError> {
    if n > MAX_VERTICES || n == 0 {
        return Err(invalid("vertex count out of range"));
    }
    if !(0.0..=1.0).contains(&delta) || !(0.0..=1.0).contains(&p) {
        return Err(invalid("delta and p must lie in [0, 1]"));
    }
    let target = crate::graph::ceil_frac(delta, n);
    if target > n - 1 {
        return Err(GeneratorError::Unreachable(target));
    }
    let mut rng = stream(seed, "gen/random");
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    raise_min_degree(&mut g, target, &mut rng);
    Ok(GeneratorOutput::plain(g))
}

fn raise_min_degree(g: &mut Graph, target: usize, rng: &mut Rng) {
    let n = g.n();
    loop {
        let low: Vec<usize> = (0..n).filter(|&v| g.degree(v) < target).collect();
        if low.is_empty() {
            return;
        }
        for &v in &low {
            if g.degree(v) >= target {
                continue;
            }
            let mut cand: Vec<usize> = (0..n).filter(|&u| u != v && !g.has_edge(u, v)).collect();
            cand.shuffle(rng);
            // prefer partners that are also short of the target
            cand.sort_by_key(|&u| g.degree(u) >= target);
            let need = target - g.degree(v);
            for &u in cand.iter().take(need) {
                g.add_edge(u, v);
            }
        }
    }
}

/// Ideal shapes for [`gen_perturbed`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    TwoCliques,
    Bipartite,
    Tripartite,
}

impl std::str::FromStr for Shape {
    type Err = GeneratorError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "two_cliques" | "two-cliques" => Ok(Shape::TwoCliques),
            "bipartite" => Ok(Shape::Bipartite),
            "tripartite" => Ok(Shape::Tripartite),
            _ => Err(invalid(format!("unknown shape `{s}`"))),
        }
    }
}

/// The ideal graph of a shape on `n` vertices together with its parts.
pub fn ideal_shape(shape: Shape, n: usize) -> (Graph, Vec<VertexSet>) {
    let mut g = Graph::new(n);
    let parts: Vec<(usize, usize)> = match shape {
        Shape::TwoCliques | Shape::Bipartite => vec![(0, n / 2), (n / 2, n)],
        Shape::Tripartite => vec![(0, n / 3), (n / 3, 2 * n / 3), (2 * n / 3, n)],
    };
    match shape {
        Shape::TwoCliques => {
            for &(lo, hi) in &parts {
                add_clique(&mut g, lo, hi);
            }
        }
        Shape::Bipartite | Shape::Tripartite => {
            for i in 0..parts.len() {
                for j in i + 1..parts.len() {
                    add_biclique(&mut g, parts[i], parts[j]);
                }
            }
        }
    }
    let sets = parts.iter().map(|&(lo, hi)| range_set(n, lo, hi)).collect();
    (g, sets)
}

/// Ideal shape with `round(noise · n²)` random pairs toggled, then degree parity repaired.
pub fn gen_perturbed(shape: Shape, n: usize, noise: f64, seed: u64) -> Result<GeneratorOutput, GeneratorError> {
    if !(2..=MAX_VERTICES).contains(&n) {
        return Err(invalid("vertex count out of range"));
    }
    if !(0.0..=1.0).contains(&noise) {
        return Err(invalid("noise must lie in [0, 1]"));
    }
    let (mut g, parts) = ideal_shape(shape, n);
    let mut rng = stream(seed, "gen/perturbed");
    let flips = (noise * (n * n) as f64).round() as usize;
    for _ in 0..flips {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        if !g.remove_edge(u, v) {
            g.add_edge(u, v);
        }
    }
    repair_parity(&mut g);
    let bipartition = (shape == Shape::Bipartite).then(|| Bipartition::new(parts[0].clone(), parts[1].clone()));
    Ok(GeneratorOutput {
        partition: Some(VertexPartition { parts }),
        bipartition,
        ..GeneratorOutput::plain(g)
    })
}

/// Make every degree even by toggling a greedy matching on the odd-degree vertices.
pub fn repair_parity(g: &mut Graph) {
    let odd = g.odd_vertices();
    for pair in odd.chunks(2) {
        if let [u, v] = *pair {
            if !g.remove_edge(u, v) {
                g.add_edge(u, v);
            }
        }
    }
}

/// Make `g` `C_L`-divisible: repair parity, then delete short cycles until `L | e(G)`.
///
/// Deleting a cycle keeps every degree even; lengths 3, 4 and 5 are used as needed.
pub fn make_divisible(g: &mut Graph, len: usize, seed: u64) -> Result<(), GeneratorError> {
    repair_parity(g);
    let mut rng = stream(seed, "gen/divisible");
    let mut guard = 0;
    while g.edge_count() % len != 0 {
        guard += 1;
        if guard > 4 * len + 8 {
            return Err(invalid("could not reach a divisible edge count"));
        }
        let r = g.edge_count() % len;
        // pick a cycle length whose removal moves toward 0 mod len
        let choices: Vec<usize> = [3usize, 4, 5].into_iter().filter(|&c| c <= g.edge_count()).collect();
        let best = choices
            .iter()
            .copied()
            .find(|&c| c == r)
            .or_else(|| choices.iter().copied().find(|&c| gcd(c, len) == 1))
            .or_else(|| choices.first().copied())
            .ok_or_else(|| invalid("graph too sparse"))?;
        let cycle = short_cycle(g, best, &mut rng)
            .or_else(|| choices.iter().find_map(|&c| short_cycle(g, c, &mut rng)))
            .ok_or_else(|| invalid("no short cycle left to delete"))?;
        for i in 0..cycle.len() {
            g.remove_edge(cycle[i], cycle[(i + 1) % cycle.len()]);
        }
    }
    Ok(())
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn short_cycle(g: &Graph, len: usize, rng: &mut Rng) -> Option<Vec<usize>> {
    let mut edges = g.edges();
    edges.shuffle(rng);
    for (u, v) in edges.into_iter().take(200) {
        let c = crate::oracle::cycles_through_edge(g, u, v, len);
        if let Some(c) = c.into_iter().next() {
            return Some(c);
        }
    }
    None
}

/// Relabel so that the vertices of `parts` come first, in part order, ascending inside parts.
/// Returns the relabelled graph and the map from new ids to old ids.
pub fn canonical_labelling(g: &Graph, parts: &[VertexSet]) -> (Graph, Vec<usize>) {
    let mut order: Vec<usize> = parts.iter().flat_map(|p| p.iter()).collect();
    let seen = VertexSet::from_iter(g.n(), order.iter().copied());
    order.extend((0..g.n()).filter(|v| !seen.contains(*v)));
    let mut to_new = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        to_new[v] = i;
    }
    (g.relabelled(&to_new, g.n()), order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{check_count_certificate, check_parity_certificate};

    #[test]
    fn c4_extremal_counts() {
        for m in 1..=5 {
            let out = gen_c4_extremal(m).unwrap();
            let g = &out.graph;
            assert_eq!(g.n(), 12 * m + 3);
            assert_eq!(g.edge_count(), 4 * (12 * m * m + 5 * m + 1));
            assert_eq!(g.min_degree(), 8 * m);
            assert!(g.is_cycle_divisible(4));
        }
        assert_eq!(gen_c4_extremal(1).unwrap().graph.edge_count(), 72);
        assert_eq!(gen_c4_extremal(2).unwrap().graph.edge_count(), 236);
    }

    #[test]
    fn c4_extremal_certificate_checks_both_ways() {
        let out = gen_c4_extremal(1).unwrap();
        assert_eq!(check_parity_certificate(&out.graph, out.parity.as_ref().unwrap()), Ok(()));
        let big = gen_c4_extremal(3).unwrap();
        assert_eq!(check_parity_certificate(&big.graph, big.parity.as_ref().unwrap()), Ok(()));
    }

    #[test]
    fn bip_extremal_counts() {
        for m in 1..=3 {
            let out = gen_c4_bip_extremal(m).unwrap();
            assert_eq!(out.graph.edge_count(), 24 * m * (m + 1));
            assert_eq!(out.graph.min_degree(), 4 * m);
            assert!(out.graph.is_cycle_divisible(4));
            out.graph.check_bipartition(out.bipartition.as_ref().unwrap()).unwrap();
            assert_eq!(check_parity_certificate(&out.graph, out.parity.as_ref().unwrap()), Ok(()));
        }
    }

    #[test]
    fn c2k_bip_parameters() {
        assert_eq!(c2k_bip_parameter(2, 0), 3);
        assert_eq!(c2k_bip_parameter(3, 0), 2);
        assert_eq!(c2k_bip_parameter(4, 1), 13);
        let out = gen_c2k_bip_extremal(3, 0).unwrap();
        assert_eq!(out.graph.edge_count(), 36);
        for (k, i) in [(2, 0), (2, 1), (3, 0), (4, 0), (5, 0), (5, 1)] {
            let out = gen_c2k_bip_extremal(k, i).unwrap();
            assert!(out.graph.is_cycle_divisible(2 * k), "k={k} i={i}");
            assert_eq!(check_count_certificate(&out.graph, out.count.as_ref().unwrap()), Ok(()));
        }
    }

    #[test]
    fn two_cliques_are_divisible_but_split() {
        let out = gen_two_cliques(2, 0).unwrap();
        assert_eq!(out.graph.n(), 10);
        assert!(out.graph.is_cycle_divisible(4));
        assert_eq!(out.count.unwrap().component_edge_counts, vec![10, 10]);
    }

    #[test]
    fn random_min_degree_reaches_target() {
        let out = gen_random_min_degree(40, 0.7, 0.5, 3).unwrap();
        assert!(out.graph.min_degree() >= 28);
        let again = gen_random_min_degree(40, 0.7, 0.5, 3).unwrap();
        assert_eq!(out.graph, again.graph);
    }

    #[test]
    fn perturbed_noise_zero_is_exact() {
        let out = gen_perturbed(Shape::TwoCliques, 18, 0.0, 1).unwrap();
        assert_eq!(out.graph, ideal_shape(Shape::TwoCliques, 18).0);
        let noisy = gen_perturbed(Shape::Tripartite, 30, 0.005, 1).unwrap();
        assert!(noisy.graph.is_two_divisible());
    }

    #[test]
    fn divisibility_repair() {
        let mut g = gen_random_min_degree(20, 0.6, 0.6, 9).unwrap().graph;
        make_divisible(&mut g, 8, 9).unwrap();
        assert!(g.is_cycle_divisible(8));
    }
}
