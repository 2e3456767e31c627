//! Nested random vertex sets with a per-level degree or expansion guarantee.

use rand::seq::SliceRandom;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::graph::{floor_frac, Bipartition, Graph};
use crate::rng::indexed_stream;

use super::expansion::is_expanding;

const TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum VortexFlavor {
    /// `d(x, U_i) ≥ δ|U_i|`.
    MinDegree { delta: f64 },
    /// `d(x, U_i ∩ X) ≥ δ|U_i ∩ X|` for `x` outside `X`, each side `X`.
    Bipartite { delta: f64, sides: Bipartition },
    /// `N(x, U_i)` is `ν`-expanding in `G[U_i]`.
    Expander { nu: f64 },
}

impl VortexFlavor {
    pub fn base(&self) -> f64 {
        match self {
            VortexFlavor::MinDegree { delta } | VortexFlavor::Bipartite { delta, .. } => *delta,
            VortexFlavor::Expander { nu } => *nu,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Vortex {
    /// `U_0 = V(G) ⊇ U_1 ⊇ .. ⊇ U_ℓ`.
    pub levels: Vec<VertexSet>,
    pub flavor: VortexFlavor,
    pub mu: f64,
    /// Parameter each level satisfies: the flavor's base value minus `μ`.
    pub guarantee: f64,
    /// Upper bound `m'` on the terminal size.
    pub terminal_bound: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VortexError {
    #[error("level 0 is not the whole vertex set")]
    BadRoot,
    #[error("level {level} is not nested in the previous one")]
    NotNested { level: usize },
    #[error("level {level} has size {found}, expected {expected}")]
    WrongSize { level: usize, found: usize, expected: usize },
    #[error("terminal size {size} is outside [{lo}, {hi}]")]
    Terminal { size: usize, lo: usize, hi: usize },
    #[error("vertex {vertex} fails the level {level} guarantee")]
    Guarantee { level: usize, vertex: usize },
}

impl Vortex {
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn terminal(&self) -> &VertexSet {
        self.levels.last().expect("vortex has a root level")
    }

    /// Recheck every level condition from scratch.
    pub fn validate(&self, g: &Graph) -> Result<(), VortexError> {
        let n = g.n();
        if self.levels.first().map(|u| u.len()) != Some(n) {
            return Err(VortexError::BadRoot);
        }
        for i in 1..self.levels.len() {
            let (prev, cur) = (&self.levels[i - 1], &self.levels[i]);
            if !cur.is_subset(prev) {
                return Err(VortexError::NotNested { level: i });
            }
            let sizes = level_sizes(&self.flavor, prev, self.mu);
            let found = side_sizes(&self.flavor, cur);
            if sizes != found {
                return Err(VortexError::WrongSize {
                    level: i,
                    found: found.iter().sum(),
                    expected: sizes.iter().sum(),
                });
            }
            if let Some(v) = first_failure(g, &self.flavor, self.guarantee, prev, cur) {
                return Err(VortexError::Guarantee { level: i, vertex: v });
            }
        }
        let size = self.terminal().len();
        let hi = self.terminal_bound;
        let lo = match self.flavor {
            VortexFlavor::Bipartite { .. } => 2 * floor_frac(self.mu, hi),
            _ => floor_frac(self.mu, hi),
        };
        if n > hi && !(lo..=hi).contains(&size) {
            return Err(VortexError::Terminal { size, lo, hi });
        }
        Ok(())
    }
}

fn side_sizes(flavor: &VortexFlavor, u: &VertexSet) -> Vec<usize> {
    match flavor {
        VortexFlavor::Bipartite { sides, .. } => vec![u.intersection_len(&sides.left), u.intersection_len(&sides.right)],
        _ => vec![u.len()],
    }
}

fn level_sizes(flavor: &VortexFlavor, prev: &VertexSet, mu: f64) -> Vec<usize> {
    side_sizes(flavor, prev).into_iter().map(|s| floor_frac(mu, s)).collect()
}

/// First vertex of `prev` violating the level guarantee for `cur`.
pub fn first_failure(g: &Graph, flavor: &VortexFlavor, param: f64, prev: &VertexSet, cur: &VertexSet) -> Option<usize> {
    match flavor {
        VortexFlavor::MinDegree { .. } => {
            let need = param * cur.len() as f64 - TOL;
            prev.iter().find(|&x| (g.degree_into(x, cur) as f64) < need)
        }
        VortexFlavor::Bipartite { sides, .. } => {
            let parts = [cur.intersection(&sides.left), cur.intersection(&sides.right)];
            prev.iter().find(|&x| {
                // x sits on side s; its guarantee is towards the other side
                let other = &parts[1 - sides.side_of(x) as usize];
                (g.degree_into(x, other) as f64) < param * other.len() as f64 - TOL
            })
        }
        VortexFlavor::Expander { .. } => {
            let (sub, ids) = g.induced(cur);
            let mut pos = vec![usize::MAX; g.n()];
            for (i, &v) in ids.iter().enumerate() {
                pos[v] = i;
            }
            prev.iter().find(|&x| {
                let s = VertexSet::from_iter(sub.n(), g.neighbors(x).intersection(cur).iter().map(|v| pos[v]));
                !is_expanding(&sub, &s, param)
            })
        }
    }
}

/// Sample a vortex level by level, stopping at the first level of size at most `m`
/// (total size). A level violating its guarantee is resampled whole, up to `retry_cap`
/// times; `None` when the cap is exhausted.
pub fn vortex_sample(
    g: &Graph,
    flavor: VortexFlavor,
    mu: f64,
    m: usize,
    seed: u64,
    retry_cap: usize,
) -> Option<Vortex> {
    assert!(mu > 0.0 && mu < 1.0, "mu must lie in (0, 1)");
    let n = g.n();
    let guarantee = flavor.base() - mu;
    let mut levels = vec![VertexSet::full(n)];
    while levels.last().expect("root").len() > m {
        let prev = levels.last().expect("root").clone();
        let depth = levels.len() as u64;
        let sizes = level_sizes(&flavor, &prev, mu);
        if sizes.iter().sum::<usize>() == prev.len() {
            return None;
        }
        let mut found = None;
        for attempt in 0..retry_cap.max(1) {
            let mut rng = indexed_stream(seed, "vortex", depth << 32 | attempt as u64);
            let cur = match &flavor {
                VortexFlavor::Bipartite { sides, .. } => {
                    let mut a = prev.intersection(&sides.left).to_vec();
                    let mut b = prev.intersection(&sides.right).to_vec();
                    a.shuffle(&mut rng);
                    b.shuffle(&mut rng);
                    VertexSet::from_iter(n, a[..sizes[0]].iter().chain(&b[..sizes[1]]).copied())
                }
                _ => {
                    let mut all = prev.to_vec();
                    all.shuffle(&mut rng);
                    VertexSet::from_iter(n, all[..sizes[0]].iter().copied())
                }
            };
            if first_failure(g, &flavor, guarantee, &prev, &cur).is_none() {
                found = Some(cur);
                break;
            }
        }
        levels.push(found?);
    }
    Some(Vortex {
        levels,
        flavor,
        mu,
        guarantee,
        terminal_bound: m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_random_min_degree;

    #[test]
    fn complete_graph_vortex() {
        let g = Graph::complete(200);
        let v = vortex_sample(&g, VortexFlavor::MinDegree { delta: 0.9 }, 0.3, 10, 1, 5).unwrap();
        assert_eq!(v.levels[1].len(), 60);
        assert!(v.terminal().len() <= 10 && v.terminal().len() >= 3);
        v.validate(&g).unwrap();
    }

    #[test]
    fn random_graph_vortex() {
        let g = gen_random_min_degree(300, 0.0, 0.75, 4).unwrap().graph;
        let v = vortex_sample(&g, VortexFlavor::MinDegree { delta: 0.6 }, 0.25, 12, 9, 50).unwrap();
        v.validate(&g).unwrap();
        let e = vortex_sample(&g, VortexFlavor::Expander { nu: 0.3 }, 0.25, 12, 9, 50).unwrap();
        e.validate(&g).unwrap();
    }

    #[test]
    fn bipartite_vortex_respects_sides() {
        let g = Graph::complete_bipartite(40, 40);
        let sides = Bipartition::split_at(40, 80);
        let v = vortex_sample(&g, VortexFlavor::Bipartite { delta: 0.9, sides: sides.clone() }, 0.5, 10, 2, 3).unwrap();
        v.validate(&g).unwrap();
        for u in &v.levels {
            assert_eq!(u.intersection_len(&sides.left), u.intersection_len(&sides.right));
        }
    }

    #[test]
    fn validator_rejects_tampering() {
        let g = Graph::complete(50);
        let mut v = vortex_sample(&g, VortexFlavor::MinDegree { delta: 0.9 }, 0.5, 10, 1, 5).unwrap();
        let first = v.levels[1].first().unwrap();
        v.levels[1].remove(first);
        assert!(v.validate(&g).is_err());
    }
}
