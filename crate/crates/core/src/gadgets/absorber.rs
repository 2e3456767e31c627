//! Absorbers for every divisible leftover on a small vertex set.
//!
//! For each `C_{2k}`-divisible `H_i` on the universe `U` the gadget is
//! `A_i = H_i^con ∪ T_i ∪ C^i ∪ T_i' ∪ J_i`, where `T_i` transforms `H_i ∪ H_i^con`
//! into a cycle `C^i` and `T_i'` transforms `C^i` into a flower `J_i`.
//! Both `A_i` and `A_i ∪ H_i` decompose; the gadgets are pairwise edge-disjoint.

use crate::bitset::VertexSet;
use crate::decomposition::{cycle_edges, CycleDecomposition};
use crate::graph::{Bipartition, Graph};

use super::embed::Embedding;
use super::euler::{euler_homomorphism, flower_petals, make_connector, make_flower, EdgeBijectiveHom};
use super::transformer::{assemble_c4, assemble_generic, fresh_c4_layout, fresh_generic_layout, TransformerBundle};
use super::GadgetError;

/// Largest number of vertex pairs in the universe that the leftover enumeration accepts.
pub const MAX_UNIVERSE_PAIRS: usize = 21;

/// One leftover and the gadget reserved for it.
#[derive(Clone, Debug)]
pub struct AbsorberEntry {
    pub leftover: Graph,
    pub gadget: Graph,
    /// Decomposition of the gadget alone.
    pub alone: CycleDecomposition,
    /// Decomposition of gadget ∪ leftover.
    pub with_leftover: CycleDecomposition,
}

/// The union `A*` of the gadgets for every divisible leftover on `U`.
#[derive(Clone, Debug)]
pub struct AbsorberBundle {
    pub universe: Vec<usize>,
    pub cycle_length: usize,
    pub n: usize,
    pub entries: Vec<AbsorberEntry>,
}

impl AbsorberBundle {
    pub fn gadget_union(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for e in &self.entries {
            for (u, v) in e.gadget.edges() {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Distinct vertices touched by `A*`.
    pub fn vertex_count(&self) -> usize {
        self.gadget_union().support().len()
    }

    /// Check every schedule, pairwise disjointness, and that no gadget edge lies inside `U`.
    pub fn verify(&self) -> Result<(), GadgetError> {
        let u = VertexSet::from_iter(self.n, self.universe.iter().copied());
        let mut seen = Graph::new(self.n);
        for (i, e) in self.entries.iter().enumerate() {
            for (a, b) in e.gadget.edges() {
                if u.contains(a) && u.contains(b) {
                    return Err(GadgetError::Overlap(format!("gadget {i} has edge {a}-{b} inside U")));
                }
                if !seen.add_edge(a, b) {
                    return Err(GadgetError::Overlap(format!("gadgets share edge {a}-{b}")));
                }
            }
            e.alone
                .verify(&e.gadget)
                .map_err(|err| GadgetError::Schedule(format!("gadget {i} alone: {err}")))?;
            e.with_leftover
                .verify(&e.gadget.union(&e.leftover))
                .map_err(|err| GadgetError::Schedule(format!("gadget {i} with leftover: {err}")))?;
        }
        Ok(())
    }

    /// Decomposition of `A*` alone.
    pub fn decompose_alone(&self) -> CycleDecomposition {
        let mut d = CycleDecomposition::new(self.cycle_length);
        for e in &self.entries {
            d.cycles.extend(e.alone.cycles.iter().cloned());
        }
        d
    }

    /// Decomposition of `A* ∪ h` for a leftover `h` on `U`.
    pub fn absorb(&self, h: &Graph) -> Result<CycleDecomposition, GadgetError> {
        let target = h.edges();
        let idx = self
            .entries
            .iter()
            .position(|e| e.leftover.edges() == target)
            .ok_or(GadgetError::UnknownLeftover)?;
        let mut d = CycleDecomposition::new(self.cycle_length);
        for (i, e) in self.entries.iter().enumerate() {
            let part = if i == idx { &e.with_leftover } else { &e.alone };
            d.cycles.extend(part.cycles.iter().cloned());
        }
        Ok(d)
    }
}

/// Every `C_L`-divisible graph on `universe` (as graphs on `n` vertices), in a fixed order
/// starting with the empty graph. With `sides`, only edges across the bipartition are used.
pub fn divisible_graphs_on(
    universe: &[usize],
    n: usize,
    len: usize,
    sides: Option<&Bipartition>,
) -> Result<Vec<Graph>, GadgetError> {
    let mut pairs = Vec::new();
    for (i, &a) in universe.iter().enumerate() {
        for &b in &universe[i + 1..] {
            if sides.is_none_or(|p| p.side_of(a) != p.side_of(b)) {
                pairs.push((a.min(b), a.max(b)));
            }
        }
    }
    if pairs.len() > MAX_UNIVERSE_PAIRS {
        return Err(GadgetError::TooManyLeftovers {
            universe: universe.len(),
            pairs: pairs.len(),
        });
    }
    let pos = |v: usize| universe.iter().position(|&u| u == v).expect("in universe");
    let masks: Vec<u32> = pairs.iter().map(|&(a, b)| (1 << pos(a)) | (1 << pos(b))).collect();
    let mut out = Vec::new();
    for subset in 0u32..(1u32 << pairs.len()) {
        let edges = subset.count_ones() as usize;
        if edges % len != 0 {
            continue;
        }
        let mut parity = 0u32;
        let mut bits = subset;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            parity ^= masks[i];
            bits &= bits - 1;
        }
        if parity != 0 {
            continue;
        }
        let mut g = Graph::new(n);
        let mut bits = subset;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            g.add_edge(pairs[i].0, pairs[i].1);
            bits &= bits - 1;
        }
        out.push(g);
    }
    Ok(out)
}

/// Where absorber gadgets are placed.
pub enum Host {
    /// On fresh vertices numbered from `n` upwards.
    Abstract { n: usize },
    /// Inside a host graph.
    Embedded(Embedding),
}

fn transformer(
    target: &Graph,
    hom: &EdgeBijectiveHom,
    k: usize,
    next: &mut usize,
) -> Result<TransformerBundle, GadgetError> {
    if k == 2 {
        let layout = fresh_c4_layout(hom, next);
        assemble_c4(target, hom, &layout, *next)
    } else {
        let layout = fresh_generic_layout(hom, k, next);
        assemble_generic(target, hom, k, &layout, *next)
    }
}

fn graph_of_cycles(cycles: &[Vec<usize>], n: usize) -> Graph {
    let mut g = Graph::new(n);
    for c in cycles {
        for (a, b) in cycle_edges(c) {
            g.add_edge(a, b);
        }
    }
    g
}

struct Pieces {
    connector: Graph,
    connector_cycles: Vec<Vec<usize>>,
    to_cycle: TransformerBundle,
    to_flower: TransformerBundle,
    flower: Graph,
    petals: Vec<Vec<usize>>,
}

fn entry_from(h: &Graph, k: usize, p: Pieces, n: usize) -> AbsorberEntry {
    let len = 2 * k;
    let gadget = p
        .connector
        .union(&p.to_cycle.transformer)
        .union(&p.to_cycle.cycle)
        .union(&p.to_flower.transformer)
        .union(&p.flower)
        .resized(n);
    let mut alone = CycleDecomposition::new(len);
    alone.cycles.extend(p.connector_cycles.iter().cloned());
    alone.cycles.extend(p.to_cycle.with_cycle.cycles.iter().cloned());
    alone.cycles.extend(p.to_flower.with_target.cycles.iter().cloned());
    let mut with = CycleDecomposition::new(len);
    with.cycles.extend(p.to_cycle.with_target.cycles.iter().cloned());
    with.cycles.extend(p.to_flower.with_cycle.cycles.iter().cloned());
    with.cycles.extend(p.petals.iter().cloned());
    AbsorberEntry {
        leftover: h.resized(n),
        gadget,
        alone,
        with_leftover: with,
    }
}

fn abstract_entry(h: &Graph, k: usize, next: &mut usize) -> Result<(AbsorberEntry, usize), GadgetError> {
    let con = make_connector(h, k, next);
    let hp = h.resized((*next).max(h.n())).union(&con.graph);
    let e = hp.edge_count();
    let hom = euler_homomorphism(&hp)?;
    let c_ids: Vec<usize> = (*next..*next + e).collect();
    *next += e;
    let hom_c = hom.on_cycle(&c_ids);
    let petals_n = e / (2 * k);
    let flower = make_flower(petals_n, k);
    let f_ids: Vec<usize> = (*next..*next + flower.n()).collect();
    *next += flower.n();
    let flower_g = flower.relabelled(&f_ids, *next);
    let petals = flower_petals(petals_n, k).relabelled(&f_ids);
    let hom_j = euler_homomorphism(&flower_g)?.on_cycle(&c_ids);
    let to_cycle = transformer(&hp, &hom_c, k, next)?;
    let to_flower = transformer(&flower_g, &hom_j, k, next)?;
    let n = *next;
    let pieces = Pieces {
        connector: con.graph,
        connector_cycles: con.cycles.cycles,
        to_cycle,
        to_flower,
        flower: flower_g,
        petals: petals.cycles,
    };
    Ok((entry_from(h, k, pieces, n), n))
}

fn embedded_entry(h: &Graph, k: usize, emb: &mut Embedding) -> Result<AbsorberEntry, GadgetError> {
    let n = emb.n();
    let mut last = None;
    for _ in 0..emb.attempts.max(1) {
        match try_embedded_entry(h, k, emb) {
            Ok(p) => {
                let entry = entry_from(h, k, p, n);
                for (a, b) in entry.gadget.edges() {
                    emb.available.remove_edge(a, b);
                }
                return Ok(entry);
            }
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

fn try_embedded_entry(h: &Graph, k: usize, emb: &mut Embedding) -> Result<Pieces, GadgetError> {
    let n = emb.n();
    let mut avail = emb.available.clone();
    let mut busy = h.support();
    for (a, b) in h.edges() {
        avail.remove_edge(a, b);
    }
    // connector: join the first component to each other one by a 2k-cycle
    let comps = h.edge_components();
    let mut connector = Graph::new(n);
    let mut connector_cycles = Vec::new();
    for c in comps.iter().skip(1) {
        let mut done = false;
        'pick: for u in comps[0].iter() {
            for v in c.iter() {
                if let Some(p) = &emb.sides {
                    if (p.side_of(u) == p.side_of(v)) != (k % 2 == 0) {
                        continue;
                    }
                }
                let Some(p1) = emb.path(&avail, u, v, k, &busy) else { continue };
                let mut b2 = busy.clone();
                p1[1..k].iter().for_each(|&x| {
                    b2.insert(x);
                });
                let mut a2 = avail.clone();
                p1.windows(2).for_each(|w| {
                    a2.remove_edge(w[0], w[1]);
                });
                let Some(p2) = emb.path(&a2, u, v, k, &b2) else { continue };
                let mut cyc = p1[..k].to_vec();
                cyc.extend(p2[1..].iter().rev());
                for (a, b) in cycle_edges(&cyc) {
                    avail.remove_edge(a, b);
                    connector.add_edge(a, b);
                }
                cyc.iter().for_each(|&x| {
                    busy.insert(x);
                });
                connector_cycles.push(cyc);
                done = true;
                break 'pick;
            }
        }
        if !done {
            return Err(GadgetError::Embedding {
                stage: "connector".into(),
                detail: "no pair of length-k paths between components".into(),
            });
        }
    }
    let hp = h.resized(n).union(&connector);
    let e = hp.edge_count();
    let c_ids = emb.cycle(&avail, e, &busy).ok_or_else(|| GadgetError::Embedding {
        stage: "cycle".into(),
        detail: format!("no free cycle of length {e}"),
    })?;
    for (a, b) in cycle_edges(&c_ids) {
        avail.remove_edge(a, b);
    }
    c_ids.iter().for_each(|&x| {
        busy.insert(x);
    });
    let petals = emb
        .flower(&avail, e / (2 * k), k, &busy)
        .ok_or_else(|| GadgetError::Embedding {
            stage: "flower".into(),
            detail: format!("no flower with {} petals", e / (2 * k)),
        })?;
    let flower = graph_of_cycles(&petals, n);
    for (a, b) in flower.edges() {
        avail.remove_edge(a, b);
    }
    petals.iter().flatten().for_each(|&x| {
        busy.insert(x);
    });
    let hom_c = emb.align(&euler_homomorphism(&hp)?.on_cycle(&c_ids), k)?;
    let hom_j = emb.align(&euler_homomorphism(&flower)?.on_cycle(&c_ids), k)?;
    let (to_cycle, to_flower) = if k == 2 {
        let l1 = emb.c4_layout(&mut avail, &hom_c, &mut busy)?;
        let l2 = emb.c4_layout(&mut avail, &hom_j, &mut busy)?;
        (assemble_c4(&hp, &hom_c, &l1, n)?, assemble_c4(&flower, &hom_j, &l2, n)?)
    } else {
        let l1 = emb.generic_layout(&mut avail, &hom_c, k, &mut busy)?;
        let l2 = emb.generic_layout(&mut avail, &hom_j, k, &mut busy)?;
        (
            assemble_generic(&hp, &hom_c, k, &l1, n)?,
            assemble_generic(&flower, &hom_j, k, &l2, n)?,
        )
    };
    Ok(Pieces {
        connector,
        connector_cycles,
        to_cycle,
        to_flower,
        flower,
        petals,
    })
}

/// Build the absorber `A*` for the universe `U` and cycle length `2k`.
///
/// In abstract mode `universe` ids must lie below `n` and gadgets use fresh vertices.
/// In embedded mode every gadget edge is an unused host edge outside `G[U]`.
pub fn build_absorber(universe: &[usize], k: usize, host: &mut Host) -> Result<AbsorberBundle, GadgetError> {
    if k < 2 {
        return Err(GadgetError::BadK(k));
    }
    let len = 2 * k;
    match host {
        Host::Abstract { n } => {
            let leftovers = divisible_graphs_on(universe, *n, len, None)?;
            let mut next = *n;
            let mut entries = Vec::with_capacity(leftovers.len());
            for h in &leftovers {
                if h.edge_count() == 0 {
                    entries.push(AbsorberEntry {
                        leftover: h.clone(),
                        gadget: Graph::new(*n),
                        alone: CycleDecomposition::new(len),
                        with_leftover: CycleDecomposition::new(len),
                    });
                    continue;
                }
                let (entry, _) = abstract_entry(h, k, &mut next)?;
                entries.push(entry);
            }
            let total = next;
            for e in &mut entries {
                e.gadget = e.gadget.resized(total);
                e.leftover = e.leftover.resized(total);
            }
            *n = total;
            let bundle = AbsorberBundle {
                universe: universe.to_vec(),
                cycle_length: len,
                n: total,
                entries,
            };
            bundle.verify()?;
            Ok(bundle)
        }
        Host::Embedded(emb) => {
            let n = emb.n();
            for &u in universe {
                emb.reserved.insert(u);
            }
            let leftovers = divisible_graphs_on(universe, n, len, emb.sides.as_ref())?;
            let mut entries = Vec::with_capacity(leftovers.len());
            for h in &leftovers {
                if h.edge_count() == 0 {
                    entries.push(AbsorberEntry {
                        leftover: h.clone(),
                        gadget: Graph::new(n),
                        alone: CycleDecomposition::new(len),
                        with_leftover: CycleDecomposition::new(len),
                    });
                    continue;
                }
                entries.push(embedded_entry(h, k, emb)?);
            }
            let bundle = AbsorberBundle {
                universe: universe.to_vec(),
                cycle_length: len,
                n,
                entries,
            };
            bundle.verify()?;
            Ok(bundle)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisible_graphs_on_four_vertices() {
        let gs = divisible_graphs_on(&[0, 1, 2, 3], 4, 4, None).unwrap();
        assert_eq!(gs.len(), 4);
        assert_eq!(gs[0].edge_count(), 0);
        assert!(gs[1..].iter().all(|g| g.edge_count() == 4 && g.is_two_divisible()));
    }

    #[test]
    fn divisible_graphs_count_even_subgraphs() {
        // even subgraphs of K_5 form a space of dimension 6; those with 0, 4 or 8 edges
        let all: usize = divisible_graphs_on(&[0, 1, 2, 3, 4], 5, 1, None).unwrap().len();
        assert_eq!(all, 64);
    }

    #[test]
    fn abstract_absorber_on_four_vertices() {
        let mut host = Host::Abstract { n: 4 };
        let b = build_absorber(&[0, 1, 2, 3], 2, &mut host).unwrap();
        assert_eq!(b.entries.len(), 4);
        b.verify().unwrap();
        for e in &b.entries {
            let d = b.absorb(&e.leftover).unwrap();
            d.verify(&b.gadget_union().union(&e.leftover)).unwrap();
        }
        b.decompose_alone().verify(&b.gadget_union()).unwrap();
        assert!(b.vertex_count() <= 1 << 16);
    }

    #[test]
    fn abstract_absorber_with_connector() {
        // on six vertices the C_6-divisible leftovers include two disjoint triangles
        let mut host = Host::Abstract { n: 6 };
        let b = build_absorber(&[0, 1, 2, 3, 4, 5], 3, &mut host).unwrap();
        assert!(b.entries.iter().any(|e| e.leftover.edge_components().len() == 2));
        b.verify().unwrap();
    }

    #[test]
    fn embedded_absorber_in_dense_host() {
        let g = crate::generators::gen_random_min_degree(60, 0.7, 0.85, 5).unwrap().graph;
        let u: Vec<usize> = vec![0, 1, 2, 3];
        let mut reserved = VertexSet::new(60);
        u.iter().for_each(|&v| {
            reserved.insert(v);
        });
        let mut avail = g.clone();
        for &a in &u {
            for &b in &u {
                if a < b {
                    avail.remove_edge(a, b);
                }
            }
        }
        let emb = Embedding::new(avail, reserved, crate::rng::stream(5, "absorber"));
        let mut host = Host::Embedded(emb);
        let b = build_absorber(&u, 2, &mut host).unwrap();
        assert_eq!(b.entries.len(), 4);
        assert!(b.gadget_union().is_subgraph_of(&g));
    }
}
