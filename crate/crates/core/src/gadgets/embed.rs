//! Finding gadget pieces inside a host graph.

use rand::seq::SliceRandom;

use crate::bitset::VertexSet;
use crate::graph::{Bipartition, Graph};
use crate::paths::{PathQuery, DEFAULT_NODE_BUDGET};
use crate::rng::Rng;

use super::euler::EdgeBijectiveHom;
use super::transformer::{C4Layout, GenericLayout};
use super::GadgetError;

/// Vertex classes used to place cycles and transforming edges when the host is close to
/// containing a large independent set: cycles alternate between `x2` and `y2`, and the
/// second transforming vertex is sought in `y1` first.
#[derive(Clone, Debug)]
pub struct SplitGeometry {
    pub x2: VertexSet,
    pub y1: VertexSet,
    pub y2: VertexSet,
}

/// Host graph state while gadgets are embedded.
pub struct Embedding {
    /// Host edges not yet used by any gadget.
    pub available: Graph,
    /// Vertices that must not become gadget-internal (typically the absorber universe).
    pub reserved: VertexSet,
    pub sides: Option<Bipartition>,
    pub geometry: Option<SplitGeometry>,
    pub rng: Rng,
    pub budget: usize,
    /// Attempts per gadget piece before giving up.
    pub attempts: usize,
}

impl Embedding {
    pub fn new(available: Graph, reserved: VertexSet, rng: Rng) -> Self {
        Embedding {
            available,
            reserved,
            sides: None,
            geometry: None,
            rng,
            budget: DEFAULT_NODE_BUDGET,
            attempts: 24,
        }
    }

    pub fn n(&self) -> usize {
        self.available.n()
    }

    /// Vertices outside `busy` and the reserved set.
    pub fn free(&self, busy: &VertexSet) -> VertexSet {
        let mut s = VertexSet::full(self.n());
        s.difference_with(busy);
        s.difference_with(&self.reserved);
        s
    }

    fn side(&self, v: usize) -> Option<u8> {
        self.sides.as_ref().map(|p| p.side_of(v))
    }

    /// Path of length `len` in `avail` with interior in the free set.
    pub fn path(&mut self, avail: &Graph, from: usize, to: usize, len: usize, busy: &VertexSet) -> Option<Vec<usize>> {
        let free = self.free(busy);
        let q = PathQuery {
            graph: avail,
            load: None,
            budget: self.budget,
        };
        q.find_in(from, to, len, &free, &mut self.rng)
    }

    /// Cycle of length `len` on free vertices, alternating between the geometry classes
    /// when a geometry is set.
    pub fn cycle(&mut self, avail: &Graph, len: usize, busy: &VertexSet) -> Option<Vec<usize>> {
        let free = self.free(busy);
        let (even, odd) = match &self.geometry {
            Some(geo) => (geo.x2.intersection(&free), geo.y2.intersection(&free)),
            None => (free.clone(), free.clone()),
        };
        let mut starts: Vec<usize> = even.iter().filter(|&v| avail.degree(v) >= 2).collect();
        starts.shuffle(&mut self.rng);
        let q = PathQuery {
            graph: avail,
            load: None,
            budget: self.budget,
        };
        for &s in starts.iter().take(self.attempts) {
            let firsts: Vec<usize> = avail.neighbors(s).intersection(&odd).iter().collect();
            let Some(&a) = firsts.choose(&mut self.rng) else {
                continue;
            };
            // positions c_2 .. c_{len-1}: even index in `even`, odd index in `odd`
            let layers: Vec<&VertexSet> = (2..len).map(|i| if i % 2 == 0 { &even } else { &odd }).collect();
            if let Some(p) = q.find(a, s, &layers, &mut self.rng) {
                let mut c = vec![s];
                c.extend_from_slice(&p[..p.len() - 1]);
                return Some(c);
            }
        }
        None
    }

    /// Flower with `petals` cycles of length `2k` through a common centre.
    /// Returns the centre-first petal cycles.
    pub fn flower(&mut self, avail: &Graph, petals: usize, k: usize, busy: &VertexSet) -> Option<Vec<Vec<usize>>> {
        let free = self.free(busy);
        let mut centres: Vec<usize> = free.iter().filter(|&v| avail.degree_into(v, &free) >= 2 * petals).collect();
        centres.shuffle(&mut self.rng);
        'centre: for &c in centres.iter().take(self.attempts) {
            let mut local = avail.clone();
            let mut used = busy.clone();
            used.insert(c);
            let mut out = Vec::with_capacity(petals);
            for _ in 0..petals {
                let free_now = self.free(&used);
                let mut firsts: Vec<usize> = local.neighbors(c).intersection(&free_now).iter().collect();
                firsts.shuffle(&mut self.rng);
                let mut found = None;
                for &a in firsts.iter().take(8) {
                    let mut u2 = used.clone();
                    u2.insert(a);
                    if let Some(p) = self.path(&local, a, c, 2 * k - 1, &u2) {
                        found = Some(p);
                        break;
                    }
                }
                let Some(p) = found else {
                    continue 'centre;
                };
                let mut cyc = vec![c];
                cyc.extend_from_slice(&p[..p.len() - 1]);
                for i in 0..cyc.len() {
                    local.remove_edge(cyc[i], cyc[(i + 1) % cyc.len()]);
                }
                for &v in &cyc {
                    used.insert(v);
                }
                out.push(cyc);
            }
            return Some(out);
        }
        None
    }

    /// Rotate the images so that `u_0` and `φ(u_0)` sit on sides compatible with paths of
    /// length `k` between them. Needed only when a bipartition is set.
    pub fn align(&self, hom: &EdgeBijectiveHom, k: usize) -> Result<EdgeBijectiveHom, GadgetError> {
        let Some(_) = &self.sides else {
            return Ok(hom.clone());
        };
        let want = |h: &EdgeBijectiveHom, i: usize| {
            let (a, b) = (self.side(h.source_cycle[i]), self.side(h.image[i]));
            (a == b) == (k % 2 == 0)
        };
        for r in 0..2 {
            let cand = hom.shifted(r);
            if (0..cand.len()).all(|i| want(&cand, i)) {
                return Ok(cand);
            }
        }
        Err(GadgetError::Embedding {
            stage: "align".into(),
            detail: "cycle and target do not alternate sides compatibly".into(),
        })
    }

    /// Paths `P_i`, `Q_i` of the generic transformer with fresh interiors.
    pub fn generic_layout(
        &mut self,
        avail: &mut Graph,
        hom: &EdgeBijectiveHom,
        k: usize,
        busy: &mut VertexSet,
    ) -> Result<GenericLayout, GadgetError> {
        let h = hom.len();
        let mut layout = GenericLayout::default();
        for i in 0..h {
            let (ui, uj, fi) = (hom.source_cycle[i], hom.source_cycle[(i + 1) % h], hom.image[i]);
            let p = self.path(avail, ui, fi, k, busy).ok_or_else(|| embed_err("transformer path P", i))?;
            claim_path(avail, busy, &p);
            let q = self.path(avail, uj, fi, k - 1, busy).ok_or_else(|| embed_err("transformer path Q", i))?;
            claim_path(avail, busy, &q);
            layout.p.push(p);
            layout.q.push(q);
        }
        Ok(layout)
    }

    /// Transforming edges and `w` vertices of the `C_4` transformer.
    pub fn c4_layout(
        &mut self,
        avail: &mut Graph,
        hom: &EdgeBijectiveHom,
        busy: &mut VertexSet,
    ) -> Result<C4Layout, GadgetError> {
        let h = hom.len();
        let mut layout = C4Layout::default();
        for i in 0..h {
            let j = (i + 1) % h;
            let (x, fx, y, fy) = (hom.source_cycle[i], hom.image[i], hom.source_cycle[j], hom.image[j]);
            let (zx, zy) = self
                .transforming_edge(avail, x, fx, y, fy, busy)
                .ok_or_else(|| embed_err("transforming edge", i))?;
            for (a, b) in [(x, zx), (fx, zx), (y, zy), (fy, zy), (zx, zy)] {
                avail.remove_edge(a, b);
            }
            busy.insert(zx);
            busy.insert(zy);
            layout.z.push((zx, zy));
        }
        for i in 0..h {
            let prev = (i + h - 1) % h;
            let (a, b) = (layout.z[i].0, layout.z[prev].1);
            let free = self.free(busy);
            let mut cand = avail.neighbors(a).intersection(avail.neighbors(b));
            cand.intersect_with(&free);
            let opts: Vec<usize> = cand.iter().collect();
            let w = *opts.choose(&mut self.rng).ok_or_else(|| embed_err("w vertex", i))?;
            avail.remove_edge(w, a);
            avail.remove_edge(w, b);
            busy.insert(w);
            layout.w.push(w);
        }
        Ok(layout)
    }

    /// An edge `z_x z_y` with `z_x ~ x, φx` and `z_y ~ y, φy`, all edges unused and both
    /// ends free.
    pub fn transforming_edge(
        &mut self,
        avail: &Graph,
        x: usize,
        fx: usize,
        y: usize,
        fy: usize,
        busy: &VertexSet,
    ) -> Option<(usize, usize)> {
        let free = self.free(busy);
        let mut xs = avail.neighbors(x).intersection(avail.neighbors(fx));
        xs.intersect_with(&free);
        let mut ys = avail.neighbors(y).intersection(avail.neighbors(fy));
        ys.intersect_with(&free);
        let mut ys_order: Vec<usize> = ys.iter().collect();
        ys_order.shuffle(&mut self.rng);
        if let Some(geo) = &self.geometry {
            ys_order.sort_by_key(|&v| !geo.y1.contains(v));
        }
        for zy in ys_order {
            let mut opts = avail.neighbors(zy).intersection(&xs);
            opts.remove(zy);
            let opts: Vec<usize> = opts.iter().collect();
            if let Some(&zx) = opts.choose(&mut self.rng) {
                return Some((zx, zy));
            }
        }
        None
    }
}

fn claim_path(avail: &mut Graph, busy: &mut VertexSet, p: &[usize]) {
    for w in p.windows(2) {
        avail.remove_edge(w[0], w[1]);
    }
    for &v in &p[1..p.len() - 1] {
        busy.insert(v);
    }
}

fn embed_err(stage: &str, index: usize) -> GadgetError {
    GadgetError::Embedding {
        stage: stage.into(),
        detail: format!("no candidate for position {index}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;

    #[test]
    fn finds_cycles_and_flowers_in_a_clique() {
        let g = Graph::complete(30);
        let reserved = VertexSet::from_iter(30, 0..4);
        let mut emb = Embedding::new(g.clone(), reserved.clone(), stream(1, "t"));
        let busy = VertexSet::new(30);
        let c = emb.cycle(&g, 12, &busy).unwrap();
        assert_eq!(c.len(), 12);
        assert!(c.iter().all(|&v| !reserved.contains(v)));
        let f = emb.flower(&g, 2, 4, &busy).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f[0][0], f[1][0]);
        let petals: VertexSet = VertexSet::from_iter(30, f.iter().flatten().copied());
        assert_eq!(petals.len(), 15);
    }
}
