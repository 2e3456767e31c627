use std::collections::BTreeSet;

use cycledecomp::analysis::{closeness, is_expander, Objective, Search};
use cycledecomp::engine::{decompose, EngineConfig, Outcome};
use cycledecomp::gadgets::{c4_transformer, euler_homomorphism, generic_transformer};
use cycledecomp::generators::{gen_c4_extremal, gen_two_cliques, make_divisible};
use cycledecomp::io::{parse_certificate, parse_edge_list, write_certificate, write_edge_list};
use cycledecomp::oracle::{enumerate_cycles, exact_decompose, ExactOutcome};
use cycledecomp::{verify_decomposition, CycleDecomposition, Graph};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::new(n);
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() {
                        g.add_edge(u, v);
                    }
                }
            }
            g
        })
    })
}

/// Symmetric difference of a few cycles given as vertex orders: every degree is even.
fn even_graph_strategy(n: usize) -> impl Strategy<Value = Graph> {
    let cycle = (3..=n).prop_flat_map(move |len| Just((0..n).collect::<Vec<_>>()).prop_shuffle().prop_map(move |vs| vs[..len].to_vec()));
    proptest::collection::vec(cycle, 1..=3).prop_map(move |cycles| {
        let mut g = Graph::new(n);
        for c in cycles {
            for i in 0..c.len() {
                let (a, b) = (c[i], c[(i + 1) % c.len()]);
                if !g.remove_edge(a, b) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    })
}

/// Independent certificate check: simple cycles of the right length whose edges are
/// exactly the edges of `g`, each used once.
fn naive_valid(g: &Graph, d: &CycleDecomposition) -> bool {
    let mut used = BTreeSet::new();
    for c in &d.cycles {
        if c.len() != d.cycle_length || c.len() < 3 || c.iter().collect::<BTreeSet<_>>().len() != c.len() {
            return false;
        }
        for i in 0..c.len() {
            let (a, b) = (c[i], c[(i + 1) % c.len()]);
            if a >= g.n() || b >= g.n() || !g.has_edge(a, b) || !used.insert((a.min(b), a.max(b))) {
                return false;
            }
        }
    }
    used.len() == g.edge_count()
}

fn brute_closeness(g: &Graph, objective: Objective) -> usize {
    let n = g.n();
    let edges = g.edges();
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == n / 2)
        .map(|m| {
            edges
                .iter()
                .filter(|&&(u, v)| {
                    let (iu, iv) = (m >> u & 1 == 1, m >> v & 1 == 1);
                    match objective {
                        Objective::Cut => iu != iv,
                        Objective::Inside => iu && iv,
                    }
                })
                .count()
        })
        .min()
        .unwrap()
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_list_round_trips(g in graph_strategy(12)) {
        prop_assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn certificate_round_trips(cycles in proptest::collection::vec(proptest::collection::vec(0usize..40, 4), 0..6)) {
        let d = CycleDecomposition { cycle_length: 4, cycles };
        prop_assert_eq!(parse_certificate(&write_certificate(&d)).unwrap(), d);
    }

    #[test]
    fn verifier_matches_naive_check(
        g in graph_strategy(7),
        cycles in proptest::collection::vec(proptest::collection::vec(0usize..7, 3..5), 0..5),
    ) {
        for len in [3usize, 4] {
            let d = CycleDecomposition { cycle_length: len, cycles: cycles.iter().filter(|c| c.len() == len).cloned().collect() };
            prop_assert_eq!(verify_decomposition(&g, &d).is_ok(), naive_valid(&g, &d));
        }
    }

    #[test]
    fn tampered_oracle_certificates_are_rejected(g in graph_strategy(8), pick in any::<prop::sample::Index>()) {
        if let ExactOutcome::Found(d) = exact_decompose(&g, 4, 1_000_000) {
            prop_assert!(verify_decomposition(&g, &d).is_ok());
            if !d.cycles.is_empty() {
                let mut dropped = d.clone();
                dropped.cycles.remove(pick.index(d.cycles.len()));
                prop_assert!(verify_decomposition(&g, &dropped).is_err());
                let mut doubled = d.clone();
                doubled.cycles.push(d.cycles[pick.index(d.cycles.len())].clone());
                prop_assert!(verify_decomposition(&g, &doubled).is_err());
            }
        }
    }

    #[test]
    fn euler_tour_hits_every_edge_once(h in even_graph_strategy(8)) {
        prop_assume!(h.edge_count() > 0 && h.is_edge_connected());
        let hom = euler_homomorphism(&h).unwrap();
        prop_assert_eq!(hom.len(), h.edge_count());
        let mut seen = BTreeSet::new();
        for i in 0..hom.len() {
            let (a, b) = (hom.image[i], hom.image[(i + 1) % hom.len()]);
            prop_assert!(h.has_edge(a, b));
            prop_assert!(seen.insert((a.min(b), a.max(b))));
        }
        prop_assert!(hom.verify(&h).is_ok());
    }

    #[test]
    fn transformer_schedules_verify(h in even_graph_strategy(7), k in 3usize..=5) {
        prop_assume!(h.edge_count() > 0 && h.is_edge_connected());
        let t = generic_transformer(&h, k).unwrap();
        prop_assert!(naive_valid(&t.transformer.union(&t.cycle), &t.with_cycle));
        prop_assert!(naive_valid(&t.transformer.union(&t.target), &t.with_target));
        prop_assert!(t.transformer.is_edge_disjoint(&t.cycle) && t.transformer.is_edge_disjoint(&t.target));
    }

    #[test]
    fn c4_transformer_schedules_verify(h in even_graph_strategy(7)) {
        prop_assume!(h.edge_count() > 0 && h.edge_count() % 4 == 0 && h.is_edge_connected());
        let t = c4_transformer(&h).unwrap();
        prop_assert!(naive_valid(&t.transformer.union(&t.cycle), &t.with_cycle));
        prop_assert!(naive_valid(&t.transformer.union(&t.target), &t.with_target));
        prop_assert!(t.vertex_count() <= 5 * h.edge_count());
    }

    #[test]
    fn exact_closeness_matches_brute_force(g in graph_strategy(12)) {
        for objective in [Objective::Cut, Objective::Inside] {
            let c = closeness(&g, objective, Search::Exact);
            prop_assert!(c.exact);
            prop_assert_eq!(c.set.len(), g.n() / 2);
            prop_assert_eq!(c.edges, brute_closeness(&g, objective));
        }
    }

    #[test]
    fn expansion_is_monotone_in_nu(g in graph_strategy(10), a in 0.0f64..0.5, b in 0.0f64..0.5) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if is_expander(&g, hi) {
            prop_assert!(is_expander(&g, lo));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decompose_certificates_verify(g in graph_strategy(11), seed in any::<u64>(), k in 2usize..=3) {
        let mut g = g;
        prop_assume!(make_divisible(&mut g, 2 * k, seed).is_ok());
        let cfg = EngineConfig { seed, ..EngineConfig::default() };
        match decompose(&g, k, &cfg).outcome {
            Outcome::Certificate(d) => prop_assert!(naive_valid(&g, &d)),
            Outcome::Nonexistence(_) => {
                prop_assert_eq!(exact_decompose(&g, 2 * k, cfg.budget), ExactOutcome::NoneExists);
            }
            Outcome::Diagnostic(d) => prop_assert!(false, "diagnostic below the oracle cutoff: {:?}", d),
        }
    }
}

#[test]
fn cycle_counts_in_complete_graphs() {
    for n in 4..=8 {
        let c = enumerate_cycles(&Graph::complete(n), 4, 1 << 20).unwrap();
        assert_eq!(c.len(), 3 * binom(n, 4), "K_{n}");
    }
}

#[test]
fn generator_edge_counts() {
    for m in 1..=8 {
        let g = gen_c4_extremal(m).unwrap().graph;
        let (a, b, c) = (4 * m + 2, 4 * m + 3, 4 * m - 2);
        assert_eq!(g.edge_count(), binom(a, 2) + (a + c) * b + binom(c, 2));
        assert!(g.is_cycle_divisible(4));
    }
    for k in 2..=5 {
        for j in 0..4 {
            let g = gen_two_cliques(k, j).unwrap().graph;
            let c = g.n() / 2;
            assert_eq!(c % (4 * k), 2 * k + 1);
            assert!(g.is_cycle_divisible(2 * k));
            assert_ne!(binom(c, 2) % (2 * k), 0);
        }
    }
}
