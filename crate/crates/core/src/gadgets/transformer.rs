//! Transformers between a graph `H` and a cycle `C` mapped onto it edge-bijectively.
//!
//! A transformer `T` is edge-disjoint from `H ∪ C` and both `T ∪ C` and `T ∪ H` have
//! `C_{2k}`-decompositions. Each bundle carries both schedules and can re-verify them.

use crate::decomposition::{cycle_edges, CycleDecomposition};
use crate::graph::Graph;

use super::euler::{euler_homomorphism, EdgeBijectiveHom};
use super::GadgetError;

/// A transformer together with its two decomposition schedules.
#[derive(Clone, Debug)]
pub struct TransformerBundle {
    pub cycle_length: usize,
    /// Edges of `T` only.
    pub transformer: Graph,
    /// Edges of the source cycle `C`.
    pub cycle: Graph,
    /// Edges of the target `H`.
    pub target: Graph,
    pub hom: EdgeBijectiveHom,
    /// Decomposition of `T ∪ C`.
    pub with_cycle: CycleDecomposition,
    /// Decomposition of `T ∪ H`.
    pub with_target: CycleDecomposition,
    /// `Σ_i |V(P_i ∪ Q_i)|` for the generic construction, `|V(T)|` for the `C_4` one.
    pub vertex_budget: usize,
}

impl TransformerBundle {
    /// Distinct vertices incident to edges of `T`.
    pub fn vertex_count(&self) -> usize {
        self.transformer.support().len()
    }

    /// Re-check disjointness and both schedules.
    pub fn verify(&self) -> Result<(), GadgetError> {
        let t = &self.transformer;
        if !t.is_edge_disjoint(&self.cycle) || !t.is_edge_disjoint(&self.target) {
            return Err(GadgetError::Overlap("transformer meets C or H".into()));
        }
        if !self.cycle.is_edge_disjoint(&self.target) {
            return Err(GadgetError::Overlap("C meets H".into()));
        }
        self.with_cycle
            .verify(&t.union(&self.cycle))
            .map_err(|e| GadgetError::Schedule(format!("T ∪ C: {e}")))?;
        self.with_target
            .verify(&t.union(&self.target))
            .map_err(|e| GadgetError::Schedule(format!("T ∪ H: {e}")))?;
        Ok(())
    }
}

/// Paths `P_i` (length `k`, `u_i → φ(u_i)`) and `Q_i` (length `k-1`, `u_{i+1} → φ(u_i)`),
/// stored with their endpoints.
#[derive(Clone, Debug, Default)]
pub struct GenericLayout {
    pub p: Vec<Vec<usize>>,
    pub q: Vec<Vec<usize>>,
}

/// Transforming vertices of the `C_4` construction: for cycle edge `i = u_i u_{i+1}`,
/// `z[i] = (z^{u_i,u_{i+1}}, z^{u_{i+1},u_i})`, and `w[i]` sits at `u_i`.
#[derive(Clone, Debug, Default)]
pub struct C4Layout {
    pub z: Vec<(usize, usize)>,
    pub w: Vec<usize>,
}

fn cycle_graph(ids: &[usize], n: usize) -> Graph {
    let mut g = Graph::new(n);
    for (a, b) in cycle_edges(ids) {
        g.add_edge(a, b);
    }
    g
}

fn add_path(g: &mut Graph, p: &[usize]) -> Result<(), GadgetError> {
    for w in p.windows(2) {
        if !g.add_edge(w[0], w[1]) {
            return Err(GadgetError::Overlap(format!("edge {}-{} used twice", w[0], w[1])));
        }
    }
    Ok(())
}

/// Build and verify the generic (`k ≥ 3`) transformer from chosen paths.
pub fn assemble_generic(
    target: &Graph,
    hom: &EdgeBijectiveHom,
    k: usize,
    layout: &GenericLayout,
    n: usize,
) -> Result<TransformerBundle, GadgetError> {
    let h = hom.len();
    let u = &hom.source_cycle;
    let phi = &hom.image;
    if layout.p.len() != h || layout.q.len() != h {
        return Err(GadgetError::Schedule("layout size mismatch".into()));
    }
    let mut t = Graph::new(n);
    for i in 0..h {
        let (p, q) = (&layout.p[i], &layout.q[i]);
        let ok = p.len() == k + 1
            && q.len() == k
            && p[0] == u[i]
            && p[k] == phi[i]
            && q[0] == u[(i + 1) % h]
            && q[k - 1] == phi[i];
        if !ok {
            return Err(GadgetError::Schedule(format!("path pair {i} has the wrong shape")));
        }
        add_path(&mut t, p)?;
        add_path(&mut t, q)?;
    }
    let mut with_cycle = CycleDecomposition::new(2 * k);
    let mut with_target = CycleDecomposition::new(2 * k);
    for i in 0..h {
        let j = (i + 1) % h;
        let (p, q) = (&layout.p[i], &layout.q[i]);
        // u_i u_{i+1} + Q_i + P_i reversed
        let mut c = vec![u[i]];
        c.extend_from_slice(q);
        c.extend(p[1..k].iter().rev());
        with_cycle.cycles.push(c);
        // φ(u_i)φ(u_{i+1}) + P_{i+1} reversed + Q_i
        let pn = &layout.p[j];
        let mut c = vec![phi[i]];
        c.extend(pn.iter().rev());
        c.extend_from_slice(&q[1..k - 1]);
        with_target.cycles.push(c);
    }
    let budget = (0..h)
        .map(|i| {
            let mut s = crate::bitset::VertexSet::new(n);
            layout.p[i].iter().chain(&layout.q[i]).for_each(|&v| {
                s.insert(v);
            });
            s.len()
        })
        .sum();
    let bundle = TransformerBundle {
        cycle_length: 2 * k,
        transformer: t,
        cycle: cycle_graph(u, n),
        target: target.resized(n.max(target.n())),
        hom: hom.clone(),
        with_cycle,
        with_target,
        vertex_budget: budget,
    };
    bundle.verify()?;
    Ok(bundle)
}

/// Build and verify the `C_4` transformer from chosen transforming vertices.
pub fn assemble_c4(
    target: &Graph,
    hom: &EdgeBijectiveHom,
    layout: &C4Layout,
    n: usize,
) -> Result<TransformerBundle, GadgetError> {
    let h = hom.len();
    let u = &hom.source_cycle;
    let phi = &hom.image;
    if layout.z.len() != h || layout.w.len() != h {
        return Err(GadgetError::Schedule("layout size mismatch".into()));
    }
    let mut t = Graph::new(n);
    let mut add = |a: usize, b: usize| -> Result<(), GadgetError> {
        if a == b || !t.add_edge(a, b) {
            return Err(GadgetError::Overlap(format!("edge {a}-{b} repeated or a loop")));
        }
        Ok(())
    };
    for i in 0..h {
        let j = (i + 1) % h;
        let (zi, zj) = layout.z[i];
        add(u[i], zi)?;
        add(u[j], zj)?;
        add(zi, zj)?;
        add(phi[i], zi)?;
        add(phi[j], zj)?;
        add(layout.w[i], zi)?;
        add(layout.w[j], zj)?;
    }
    let mut with_cycle = CycleDecomposition::new(4);
    let mut with_target = CycleDecomposition::new(4);
    for i in 0..h {
        let j = (i + 1) % h;
        let prev = (i + h - 1) % h;
        let (zi, zj) = layout.z[i];
        with_cycle.cycles.push(vec![u[i], u[j], zj, zi]);
        with_target.cycles.push(vec![phi[i], phi[j], zj, zi]);
        // the two transforming vertices at u_i
        let (a, b) = (layout.z[i].0, layout.z[prev].1);
        with_cycle.cycles.push(vec![phi[i], a, layout.w[i], b]);
        with_target.cycles.push(vec![u[i], a, layout.w[i], b]);
    }
    let bundle = TransformerBundle {
        cycle_length: 4,
        vertex_budget: t.support().len(),
        transformer: t,
        cycle: cycle_graph(u, n),
        target: target.resized(n.max(target.n())),
        hom: hom.clone(),
        with_cycle,
        with_target,
    };
    bundle.verify()?;
    Ok(bundle)
}

fn check_target(h: &Graph, modulus: usize) -> Result<(), GadgetError> {
    if h.edge_count() == 0 {
        return Err(GadgetError::EmptyGraph);
    }
    if !h.is_two_divisible() {
        return Err(GadgetError::NotEven);
    }
    if h.edge_count() % modulus != 0 {
        return Err(GadgetError::NotDivisible(modulus));
    }
    if !h.is_edge_connected() {
        return Err(GadgetError::Disconnected);
    }
    Ok(())
}

/// Generic layout on fresh vertices starting at `*next`.
pub fn fresh_generic_layout(hom: &EdgeBijectiveHom, k: usize, next: &mut usize) -> GenericLayout {
    let h = hom.len();
    let mut fresh = |count: usize| {
        let r: Vec<usize> = (*next..*next + count).collect();
        *next += count;
        r
    };
    let mut layout = GenericLayout::default();
    for i in 0..h {
        let mut p = vec![hom.source_cycle[i]];
        p.extend(fresh(k - 1));
        p.push(hom.image[i]);
        let mut q = vec![hom.source_cycle[(i + 1) % h]];
        q.extend(fresh(k - 2));
        q.push(hom.image[i]);
        layout.p.push(p);
        layout.q.push(q);
    }
    layout
}

/// `C_4` layout on fresh vertices starting at `*next`.
pub fn fresh_c4_layout(hom: &EdgeBijectiveHom, next: &mut usize) -> C4Layout {
    let h = hom.len();
    let mut layout = C4Layout::default();
    for _ in 0..h {
        layout.z.push((*next, *next + 1));
        *next += 2;
    }
    for _ in 0..h {
        layout.w.push(*next);
        *next += 1;
    }
    layout
}

/// Abstract generic transformer for a connected 2-divisible `h` and `k ≥ 3`.
///
/// `C` is placed on fresh vertices `h.n()..h.n()+e(h)`; path interiors follow.
pub fn generic_transformer(h: &Graph, k: usize) -> Result<TransformerBundle, GadgetError> {
    if k < 3 {
        return Err(GadgetError::BadK(k));
    }
    check_target(h, 1)?;
    let e = h.edge_count();
    let base = h.n();
    let hom = euler_homomorphism(h)?.on_cycle(&(base..base + e).collect::<Vec<_>>());
    let mut next = base + e;
    let layout = fresh_generic_layout(&hom, k, &mut next);
    assemble_generic(h, &hom, k, &layout, next)
}

/// Abstract `C_4` transformer for a connected `C_4`-divisible `h`.
pub fn c4_transformer(h: &Graph) -> Result<TransformerBundle, GadgetError> {
    check_target(h, 4)?;
    let e = h.edge_count();
    let base = h.n();
    let hom = euler_homomorphism(h)?.on_cycle(&(base..base + e).collect::<Vec<_>>());
    let mut next = base + e;
    let layout = fresh_c4_layout(&hom, &mut next);
    assemble_c4(h, &hom, &layout, next)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_on_c8() {
        let b = generic_transformer(&Graph::cycle(8), 4).unwrap();
        assert_eq!(b.vertex_budget, 64);
        assert!(b.vertex_count() <= 64);
        assert_eq!(b.with_cycle.len(), 8);
        assert_eq!(b.with_target.len(), 8);
    }

    #[test]
    fn generic_on_k5_k3() {
        let b = generic_transformer(&Graph::complete(5), 3).unwrap();
        assert_eq!(b.vertex_budget, 2 * 3 * 10);
        b.verify().unwrap();
    }

    #[test]
    fn c4_on_c4() {
        let b = c4_transformer(&Graph::cycle(4)).unwrap();
        assert_eq!(b.vertex_count(), 20);
        b.verify().unwrap();
    }

    #[test]
    fn rejects_bad_targets() {
        assert_eq!(c4_transformer(&Graph::complete(5)).unwrap_err(), GadgetError::NotDivisible(4));
        assert_eq!(generic_transformer(&Graph::cycle(6), 2).unwrap_err(), GadgetError::BadK(2));
        let two = Graph::cycle(4).union(&Graph::cycle(4).relabelled(&[4, 5, 6, 7], 8));
        assert_eq!(generic_transformer(&two, 4).unwrap_err(), GadgetError::Disconnected);
    }
}
