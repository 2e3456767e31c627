//! Top-level dispatch: divisibility screening, exact search for small inputs and the
//! structural pipelines for large ones.

use std::fmt;

use crate::analysis::{classify, find_m_extremal, vortex_sample, ExtremalType, Search, StructureKind, Vortex, VortexFlavor};
use crate::decomposition::CycleDecomposition;
use crate::gadgets::{build_absorber, AbsorberBundle, Embedding, Host};
use crate::graph::{Bipartition, Graph};
use crate::oracle::{count_certificate, exact_decompose, CountCertificate, ExactOutcome};
use crate::rng::{derive_seed, stream};
use crate::VertexSet;

use super::coverdown::near_optimal;
use super::cover::CoverFlavor;
use super::{absorb, bipartite_like, c4, cliques, diag, CoverLedger, Diagnostic, EngineConfig, EngineError};

/// Why no decomposition exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Nonexistence {
    OddDegree { vertex: usize, degree: usize },
    EdgeCount { edges: usize, cycle_length: usize },
    Components(CountCertificate),
    /// The exact search exhausted every branch.
    Exhaustive,
}

impl Nonexistence {
    pub fn kind(&self) -> &'static str {
        match self {
            Nonexistence::OddDegree { .. } => "odd_degree",
            Nonexistence::EdgeCount { .. } => "edge_count",
            Nonexistence::Components(_) => "component_edge_count",
            Nonexistence::Exhaustive => "exhaustive_search",
        }
    }
}

impl fmt::Display for Nonexistence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nonexistence::OddDegree { vertex, degree } => write!(f, "vertex {vertex} has odd degree {degree}"),
            Nonexistence::EdgeCount { edges, cycle_length } => {
                write!(f, "{edges} edges is not a multiple of {cycle_length}")
            }
            Nonexistence::Components(c) => write!(
                f,
                "component edge counts {:?} are not all multiples of {}",
                c.component_edge_counts, c.cycle_length
            ),
            Nonexistence::Exhaustive => write!(f, "exhaustive search found no decomposition"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Certificate(CycleDecomposition),
    Nonexistence(Nonexistence),
    Diagnostic(Diagnostic),
}

impl Outcome {
    pub fn kind(&self) -> &'static str {
        match self {
            Outcome::Certificate(_) => "certificate",
            Outcome::Nonexistence(_) => "nonexistence",
            Outcome::Diagnostic(_) => "diagnostic",
        }
    }
}

/// Outcome together with the notes the stages recorded.
#[derive(Clone, Debug)]
pub struct Run {
    pub outcome: Outcome,
    pub log: Vec<String>,
}

/// Recursion depth and stage notes of one run.
pub(crate) struct Trace {
    pub depth: usize,
    pub log: Vec<String>,
}

impl Trace {
    pub fn note(&mut self, msg: impl Into<String>) {
        let pad = "  ".repeat(self.depth);
        self.log.push(format!("{pad}{}", msg.into()));
    }
}

fn screen(g: &Graph, len: usize) -> Option<Outcome> {
    if g.edge_count() == 0 {
        return Some(Outcome::Certificate(CycleDecomposition::new(len)));
    }
    if let Some(&v) = g.odd_vertices().first() {
        return Some(Outcome::Nonexistence(Nonexistence::OddDegree {
            vertex: v,
            degree: g.degree(v),
        }));
    }
    if g.edge_count() % len != 0 {
        return Some(Outcome::Nonexistence(Nonexistence::EdgeCount {
            edges: g.edge_count(),
            cycle_length: len,
        }));
    }
    count_certificate(g, len).map(|c| Outcome::Nonexistence(Nonexistence::Components(c)))
}

fn bad_k(k: usize) -> Outcome {
    Outcome::Diagnostic(Diagnostic {
        stage: "input".into(),
        procedure: "parameter check".into(),
        object: format!("k = {k}; cycle length 2k needs k >= 2"),
    })
}

fn exact(h: &Graph, len: usize, cfg: &EngineConfig, trace: &mut Trace) -> Outcome {
    trace.note(format!("exact search on {} vertices, {} edges", h.n(), h.edge_count()));
    match exact_decompose(h, len, cfg.budget) {
        ExactOutcome::Found(d) => Outcome::Certificate(d),
        ExactOutcome::NoneExists => Outcome::Nonexistence(Nonexistence::Exhaustive),
        ExactOutcome::BudgetExceeded => Outcome::Diagnostic(Diagnostic {
            stage: "exact search".into(),
            procedure: "exhaustive decomposition search".into(),
            object: format!("node budget {} exhausted", cfg.budget),
        }),
    }
}

fn finish(h: &Graph, result: Result<CycleDecomposition, EngineError>) -> Outcome {
    match result {
        Ok(d) => match d.verify(h) {
            Ok(()) => Outcome::Certificate(d),
            Err(e) => Outcome::Diagnostic(Diagnostic {
                stage: "final verification".into(),
                procedure: "certificate check".into(),
                object: e.to_string(),
            }),
        },
        Err(e) => Outcome::Diagnostic(e.to_diagnostic()),
    }
}

/// Decompose `g` into cycles of length `2k`.
///
/// Divisibility is screened first. Each edge component is then handled on its own: small
/// ones by exact search, larger ones by the structural pipelines. Certificates are verified
/// before they are returned.
pub fn decompose(g: &Graph, k: usize, cfg: &EngineConfig) -> Run {
    let mut trace = Trace { depth: 0, log: Vec::new() };
    let outcome = decompose_at(g, k, cfg, &mut trace);
    Run { outcome, log: trace.log }
}

pub(crate) fn decompose_at(g: &Graph, k: usize, cfg: &EngineConfig, trace: &mut Trace) -> Outcome {
    if k < 2 {
        return bad_k(k);
    }
    let len = 2 * k;
    if let Some(o) = screen(g, len) {
        return o;
    }
    let mut total = CycleDecomposition::new(len);
    for comp in g.edge_components() {
        let (h, ids) = g.induced(&comp);
        match solve_connected(&h, k, cfg, trace) {
            Outcome::Certificate(d) => total.extend(d.relabelled(&ids)),
            other => return other,
        }
    }
    finish(g, Ok(total))
}

fn solve_connected(h: &Graph, k: usize, cfg: &EngineConfig, trace: &mut Trace) -> Outcome {
    let len = 2 * k;
    if h.n() <= cfg.oracle_cutoff {
        return exact(h, len, cfg, trace);
    }
    if trace.depth > cfg.max_depth {
        return Outcome::Diagnostic(Diagnostic {
            stage: "dispatch".into(),
            procedure: "delegation".into(),
            object: format!("nesting depth {} exceeded", cfg.max_depth),
        });
    }
    let result = match k {
        2 => match find_m_extremal(h, cfg.m1) {
            Some(w) if w.kind == ExtremalType::Type1 => {
                trace.note("extremal of type 1: running the type-1 pipeline");
                c4::type1_at(h, &w, cfg, trace)
            }
            Some(w) => {
                trace.note("extremal of type 2: running the type-2 pipeline");
                c4::type2_at(h, &w, cfg, trace)
            }
            None => {
                trace.note("not extremal: running the vortex and absorber pipeline for C_4");
                c4_absorber_pipeline(h, cfg, trace)
            }
        },
        3 => Err(diag(
            "dispatch",
            "C_6 decomposition",
            format!("graph on {} vertices is above the exact-search cutoff", h.n()),
        )),
        _ => {
            let report = classify(h, cfg.nu, cfg.epsilon, Search::Auto { seed: cfg.seed });
            trace.note(format!("classified as {}", report.kind.as_str()));
            match report.kind {
                StructureKind::Expander => expander_pipeline(h, k, cfg, trace),
                StructureKind::CloseTwoCliques => cliques::two_cliques_at(h, k, &report.witness[0], cfg, trace),
                StructureKind::CloseBipartite => bipartite_like::bipartite_like_at(h, k, &report.witness[0], cfg, trace),
                _ => Err(diag("dispatch", "structure classification", "no structural case applies")),
            }
        }
    };
    finish(h, result)
}

/// Decompose a subgraph on the same vertex set; anything but a certificate becomes a
/// diagnostic of the calling stage.
pub(crate) fn delegate(
    piece: &Graph,
    k: usize,
    cfg: &EngineConfig,
    trace: &mut Trace,
    stage: &str,
) -> Result<CycleDecomposition, EngineError> {
    trace.depth += 1;
    trace.note(format!("{stage}: delegating {} edges", piece.edge_count()));
    let out = decompose_at(piece, k, cfg, trace);
    trace.depth -= 1;
    delegated(out, stage)
}

pub(crate) fn delegate_bipartite(
    piece: &Graph,
    sides: &Bipartition,
    k: usize,
    cfg: &EngineConfig,
    trace: &mut Trace,
    stage: &str,
) -> Result<CycleDecomposition, EngineError> {
    trace.depth += 1;
    trace.note(format!("{stage}: delegating {} bipartite edges", piece.edge_count()));
    let out = bipartite_at(piece, sides, k, cfg, trace);
    trace.depth -= 1;
    delegated(out, stage)
}

fn delegated(out: Outcome, stage: &str) -> Result<CycleDecomposition, EngineError> {
    match out {
        Outcome::Certificate(d) => Ok(d),
        Outcome::Nonexistence(r) => Err(diag(stage, "dense-piece decomposition", format!("piece has no decomposition: {r}"))),
        Outcome::Diagnostic(d) => Err(EngineError::Stage(d).in_stage(stage)),
    }
}

/// Cover `h - A*` down to the terminal level and absorb the leftover.
fn finish_with_absorber(
    h: &Graph,
    vortex: &Vortex,
    bundle: &AbsorberBundle,
    flavor: &CoverFlavor,
    len: usize,
    cfg: &EngineConfig,
    trace: &mut Trace,
) -> Result<CycleDecomposition, EngineError> {
    let star = h.minus(&bundle.gadget_union()).map_err(|e| EngineError::Internal(e.to_string()))?;
    let mut ledger = CoverLedger::new(&star, len);
    let mut rng = stream(cfg.seed, "engine/near-optimal");
    let result = near_optimal(&star, vortex, len, flavor, cfg, &mut ledger, &mut rng);
    for s in ledger.stages.drain(..) {
        trace.note(s);
    }
    let leftover = result?;
    trace.note(format!("leftover on the terminal level: {} edges", leftover.edge_count()));
    let absorbed = bundle
        .absorb(&leftover)
        .map_err(|e| diag("absorption", "absorber lookup", format!("leftover with {} edges: {e}", leftover.edge_count())))?;
    let mut d = ledger.into_decomposition()?;
    d.extend(absorbed);
    Ok(d)
}

fn sample(h: &Graph, flavor: VortexFlavor, m: usize, cfg: &EngineConfig, what: &str) -> Result<Vortex, EngineError> {
    vortex_sample(h, flavor, cfg.mu, m, derive_seed(cfg.seed, what), cfg.retry_cap)
        .ok_or_else(|| diag("vortex", what, format!("no level passed within {} retries", cfg.retry_cap)))
}

fn embedded_absorber(
    h: &Graph,
    vortex: &Vortex,
    k: usize,
    sides: Option<&Bipartition>,
    cfg: &EngineConfig,
) -> Result<AbsorberBundle, EngineError> {
    let u1 = &vortex.levels[1];
    let avail = h.minus(&h.restricted_to(u1)).map_err(|e| EngineError::Internal(e.to_string()))?;
    let mut emb = Embedding::new(avail, VertexSet::new(h.n()), stream(cfg.seed, "engine/absorber"));
    emb.sides = sides.cloned();
    let mut host = Host::Embedded(emb);
    build_absorber(&vortex.terminal().to_vec(), k, &mut host).map_err(|e| diag("absorber", "gadget embedding", e.to_string()))
}

fn expander_pipeline(h: &Graph, k: usize, cfg: &EngineConfig, trace: &mut Trace) -> Result<CycleDecomposition, EngineError> {
    let vortex = sample(h, VortexFlavor::Expander { nu: cfg.nu }, cfg.m_for(k), cfg, "expander vortex sampling")?;
    trace.note(format!("expander vortex with {} levels, terminal size {}", vortex.depth(), vortex.terminal().len()));
    if vortex.depth() == 0 {
        return Err(diag("vortex", "expander vortex sampling", "graph is already below the terminal size"));
    }
    let bundle = embedded_absorber(h, &vortex, k, None, cfg)?;
    trace.note(format!("absorber with {} entries", bundle.entries.len()));
    finish_with_absorber(h, &vortex, &bundle, &CoverFlavor::Expander { nu: cfg.nu }, 2 * k, cfg, trace)
}

fn c4_absorber_pipeline(h: &Graph, cfg: &EngineConfig, trace: &mut Trace) -> Result<CycleDecomposition, EngineError> {
    let n = h.n();
    let delta = h.min_degree() as f64 / n as f64;
    let vortex = sample(h, VortexFlavor::MinDegree { delta }, cfg.m3_for(2), cfg, "vortex sampling")?;
    let depth = vortex.depth();
    if depth == 0 {
        return Err(diag("vortex", "vortex sampling", "graph is already below the terminal size"));
    }
    let l0 = cfg
        .l0
        .unwrap_or_else(|| ((cfg.m2 as f64 / n as f64).ln() / cfg.mu.ln()).ceil() as usize + 1)
        .clamp(1, depth);
    trace.note(format!("vortex with {depth} levels, terminal size {}, withholding level {l0}", vortex.terminal().len()));
    let host = h.minus(&h.restricted_to(&vortex.levels[l0])).map_err(|e| EngineError::Internal(e.to_string()))?;
    let bundle = absorb::build_c4_absorber(&host, &vortex.terminal().to_vec(), cfg, stream(cfg.seed, "engine/c4-absorber"))?;
    trace.note(format!("absorber with {} entries", bundle.entries.len()));
    finish_with_absorber(h, &vortex, &bundle, &CoverFlavor::MinDegree, 4, cfg, trace)
}

/// Decompose a bipartite graph with the given sides into cycles of length `2k`.
pub fn decompose_bipartite(g: &Graph, sides: &Bipartition, k: usize, cfg: &EngineConfig) -> Run {
    let mut trace = Trace { depth: 0, log: Vec::new() };
    let outcome = bipartite_at(g, sides, k, cfg, &mut trace);
    Run { outcome, log: trace.log }
}

pub(crate) fn bipartite_at(g: &Graph, sides: &Bipartition, k: usize, cfg: &EngineConfig, trace: &mut Trace) -> Outcome {
    if k < 2 {
        return bad_k(k);
    }
    if let Err(e) = sides.check_cover(g.n()).and_then(|_| g.check_bipartition(sides)) {
        return Outcome::Diagnostic(Diagnostic {
            stage: "input".into(),
            procedure: "bipartition check".into(),
            object: e.to_string(),
        });
    }
    let len = 2 * k;
    if let Some(o) = screen(g, len) {
        return o;
    }
    let mut total = CycleDecomposition::new(len);
    for comp in g.edge_components() {
        let (h, ids) = g.induced(&comp);
        let left = VertexSet::from_iter(h.n(), (0..h.n()).filter(|&i| sides.side_of(ids[i]) == 0));
        let local = Bipartition::new(left.clone(), left.complement(h.n()));
        let out = if h.n() <= cfg.oracle_cutoff {
            exact(&h, len, cfg, trace)
        } else {
            finish(&h, bipartite_pipeline(&h, &local, k, cfg, trace))
        };
        match out {
            Outcome::Certificate(d) => total.extend(d.relabelled(&ids)),
            other => return other,
        }
    }
    finish(g, Ok(total))
}

fn bipartite_pipeline(
    h: &Graph,
    sides: &Bipartition,
    k: usize,
    cfg: &EngineConfig,
    trace: &mut Trace,
) -> Result<CycleDecomposition, EngineError> {
    let delta = h.bipartite_min_degree(sides).map_err(|e| EngineError::Internal(e.to_string()))?.to_f64();
    let flavor = VortexFlavor::Bipartite { delta, sides: sides.clone() };
    let vortex = sample(h, flavor, cfg.m_for(k), cfg, "bipartite vortex sampling")?;
    trace.note(format!("bipartite vortex with {} levels, terminal size {}", vortex.depth(), vortex.terminal().len()));
    if vortex.depth() == 0 {
        return Err(diag("vortex", "bipartite vortex sampling", "graph is already below the terminal size"));
    }
    let bundle = embedded_absorber(h, &vortex, k, Some(sides), cfg)?;
    trace.note(format!("absorber with {} entries", bundle.entries.len()));
    finish_with_absorber(h, &vortex, &bundle, &CoverFlavor::Bipartite(sides.clone()), 2 * k, cfg, trace)
}
