//! Euler tours as edge-bijective homomorphisms, flowers and connectors.

use crate::decomposition::CycleDecomposition;
use crate::graph::Graph;

use super::GadgetError;

/// A cycle `u_0 .. u_{h-1}` together with images `φ(u_i)` such that
/// `i ↦ φ(u_i)φ(u_{i+1})` is a bijection onto the edges of the target graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeBijectiveHom {
    pub source_cycle: Vec<usize>,
    pub image: Vec<usize>,
}

impl EdgeBijectiveHom {
    pub fn len(&self) -> usize {
        self.source_cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.source_cycle.is_empty()
    }

    /// Same images, with the source cycle placed on `ids`.
    pub fn on_cycle(&self, ids: &[usize]) -> EdgeBijectiveHom {
        assert_eq!(ids.len(), self.len(), "cycle length mismatch");
        EdgeBijectiveHom {
            source_cycle: ids.to_vec(),
            image: self.image.clone(),
        }
    }

    /// Shift the images by `r` steps along the cycle: `φ'(u_i) = φ(u_{i+r})`.
    pub fn shifted(&self, r: usize) -> EdgeBijectiveHom {
        let h = self.len();
        EdgeBijectiveHom {
            source_cycle: self.source_cycle.clone(),
            image: (0..h).map(|i| self.image[(i + r) % h]).collect(),
        }
    }

    /// Check that the induced edge map is a bijection onto the edges of `target`.
    pub fn verify(&self, target: &Graph) -> Result<(), GadgetError> {
        let h = self.len();
        if h < 3 || self.image.len() != h {
            return Err(GadgetError::BadHomomorphism("cycle too short".into()));
        }
        let mut seen = Graph::new(target.n());
        for i in 0..h {
            let (a, b) = (self.image[i], self.image[(i + 1) % h]);
            if !target.has_edge(a, b) || !seen.add_edge(a, b) {
                return Err(GadgetError::BadHomomorphism(format!("edge {a}-{b} hit twice or missing")));
            }
        }
        if seen.edge_count() != target.edge_count() {
            return Err(GadgetError::BadHomomorphism("not surjective on edges".into()));
        }
        Ok(())
    }
}

/// Euler tour of a connected 2-divisible graph, read as a homomorphism from `C_{e(H)}`.
///
/// The source cycle is labelled `0..e(H)`; place it with [`EdgeBijectiveHom::on_cycle`].
/// The tour starts at the smallest non-isolated vertex and always leaves by the smallest
/// unused edge, so the result is deterministic.
pub fn euler_homomorphism(h: &Graph) -> Result<EdgeBijectiveHom, GadgetError> {
    if !h.is_two_divisible() {
        return Err(GadgetError::NotEven);
    }
    if !h.is_edge_connected() {
        return Err(GadgetError::Disconnected);
    }
    let Some((start, _)) = h.first_edge() else {
        return Err(GadgetError::EmptyGraph);
    };
    let mut rest = h.clone();
    let mut stack = vec![start];
    let mut tour = Vec::with_capacity(h.edge_count() + 1);
    while let Some(&v) = stack.last() {
        match rest.neighbors(v).first() {
            Some(w) => {
                rest.remove_edge(v, w);
                stack.push(w);
            }
            None => {
                tour.push(v);
                stack.pop();
            }
        }
    }
    tour.reverse();
    tour.pop();
    let hom = EdgeBijectiveHom {
        source_cycle: (0..tour.len()).collect(),
        image: tour,
    };
    debug_assert!(hom.verify(h).is_ok());
    Ok(hom)
}

/// Flower `L(i, k)`: `i` copies of `C_{2k}` sharing vertex 0 and otherwise disjoint.
/// It has `i(2k-1) + 1` vertices and `2ki` edges.
pub fn make_flower(i: usize, k: usize) -> Graph {
    let petal = 2 * k - 1;
    let mut g = Graph::new(i * petal + 1);
    for j in 0..i {
        let base = 1 + j * petal;
        g.add_edge(0, base);
        for t in 0..petal - 1 {
            g.add_edge(base + t, base + t + 1);
        }
        g.add_edge(base + petal - 1, 0);
    }
    g
}

/// The petals of [`make_flower`] as a `C_{2k}`-decomposition.
pub fn flower_petals(i: usize, k: usize) -> CycleDecomposition {
    let petal = 2 * k - 1;
    CycleDecomposition {
        cycle_length: 2 * k,
        cycles: (0..i)
            .map(|j| {
                let base = 1 + j * petal;
                std::iter::once(0).chain(base..base + petal).collect()
            })
            .collect(),
    }
}

/// Edges added to join the components of a graph, and the `2k`-cycles they form.
#[derive(Clone, Debug)]
pub struct Connector {
    pub graph: Graph,
    pub cycles: CycleDecomposition,
}

/// Join the edge-bearing components of `h` into one by `2k`-cycles made of two
/// length-`k` paths on fresh vertices. Fresh ids start at `*next`, which is advanced.
///
/// With `c` components this adds `c - 1` cycles, so `e(H ∪ H^con) ≤ (2k-1) e(H)`.
pub fn make_connector(h: &Graph, k: usize, next: &mut usize) -> Connector {
    let comps = h.edge_components();
    let mut cycles = Vec::new();
    if comps.len() > 1 {
        let u = comps[0].first().expect("non-empty component");
        for c in &comps[1..] {
            let v = c.first().expect("non-empty component");
            let mut cyc = vec![u];
            cyc.extend(*next..*next + k - 1);
            cyc.push(v);
            cyc.extend((*next + k - 1..*next + 2 * k - 2).rev());
            *next += 2 * k - 2;
            cycles.push(cyc);
        }
    }
    let n = (*next).max(h.n());
    let mut g = Graph::new(n);
    for c in &cycles {
        for (a, b) in crate::decomposition::cycle_edges(c) {
            g.add_edge(a, b);
        }
    }
    Connector {
        graph: g,
        cycles: CycleDecomposition {
            cycle_length: 2 * k,
            cycles,
        },
    }
}
