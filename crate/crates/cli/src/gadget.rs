//! `gadget <kind>`: transformers, flowers and absorbers written as graph/schedule pairs.
//!
//! Every schedule is written next to the graph it decomposes, so that `verify X.el X.cert`
//! checks it.

use std::path::{Path, PathBuf};

use clap::{Args, Subcommand};
use cycledecomp::gadgets::{
    build_absorber, c4_transformer, flower_petals, generic_transformer, make_flower, Embedding, GadgetError, Host,
};
use cycledecomp::rng::stream;
use cycledecomp::{CycleDecomposition, Graph, VertexSet};

use crate::error::{exit, CliError};
use crate::files;
use crate::Io;

#[derive(Debug, Args)]
pub struct GadgetArgs {
    #[command(subcommand)]
    pub kind: Kind,
}

#[derive(Debug, Subcommand)]
pub enum Kind {
    /// (C, H)-transformer for a connected 2-divisible graph H.
    Transformer {
        /// Edge list of H.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// i cycles of length 2k through one vertex.
    Flower {
        #[arg(long)]
        i: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Absorber for every divisible leftover on a universe of the given size.
    Absorber {
        #[arg(long)]
        universe: usize,
        #[arg(long)]
        k: usize,
        /// Embed into this host graph instead of using fresh vertices; the universe is
        /// vertices 0..universe of the host.
        #[arg(long)]
        host: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

fn pair(dir: &Path, stem: &str, g: &Graph, d: &CycleDecomposition) -> Result<(), CliError> {
    files::write_graph(&dir.join(format!("{stem}.el")), g)?;
    files::write_cert(&dir.join(format!("{stem}.cert")), d)
}

fn gadget_failure(io: &mut Io<'_>, e: GadgetError) -> Result<i32, CliError> {
    match e {
        GadgetError::Embedding { .. } => {
            let _ = writeln!(io.out, "diagnostic: {e}");
            Ok(exit::DIAGNOSTIC)
        }
        GadgetError::Schedule(_) | GadgetError::Overlap(_) => Err(CliError::Internal(e.to_string())),
        other => Err(CliError::Usage(other.to_string())),
    }
}

pub fn run(a: &GadgetArgs, io: &mut Io<'_>) -> Result<i32, CliError> {
    match &a.kind {
        Kind::Transformer { input, k, out_dir } => {
            let h = files::read_graph(input)?;
            let built = if *k == 2 { c4_transformer(&h) } else { generic_transformer(&h, *k) };
            let t = match built.and_then(|t| t.verify().map(|()| t)) {
                Ok(t) => t,
                Err(e) => return gadget_failure(io, e),
            };
            let n = t.transformer.n().max(t.cycle.n()).max(t.target.n());
            let fit = |g: &Graph| if g.n() == n { g.clone() } else { g.resized(n) };
            let (tr, c, hh) = (fit(&t.transformer), fit(&t.cycle), fit(&t.target));
            files::write_graph(&out_dir.join("transformer.el"), &tr)?;
            files::write_graph(&out_dir.join("cycle.el"), &c)?;
            files::write_graph(&out_dir.join("target.el"), &hh)?;
            pair(out_dir, "with_cycle", &tr.union(&c), &t.with_cycle)?;
            pair(out_dir, "with_target", &tr.union(&hh), &t.with_target)?;
            let _ = writeln!(
                io.out,
                "transformer: {} vertices, {} edges, cycle length {}",
                t.vertex_count(),
                t.transformer.edge_count(),
                t.cycle_length
            );
            Ok(exit::OK)
        }
        Kind::Flower { i, k, out_dir } => {
            if *k < 2 || *i == 0 {
                return Err(CliError::Usage("flower needs i >= 1 and k >= 2".into()));
            }
            let g = make_flower(*i, *k);
            pair(out_dir, "flower", &g, &flower_petals(*i, *k))?;
            let _ = writeln!(io.out, "flower: {} vertices, {} edges", g.n(), g.edge_count());
            Ok(exit::OK)
        }
        Kind::Absorber {
            universe,
            k,
            host,
            seed,
            out_dir,
        } => {
            let mut place = match host {
                None => Host::Abstract { n: *universe },
                Some(p) => {
                    let g = files::read_graph(p)?;
                    if g.n() < *universe {
                        return Err(files::parse_error(p, "host has fewer vertices than the universe"));
                    }
                    let reserved = VertexSet::from_iter(g.n(), 0..*universe);
                    Host::Embedded(Embedding::new(g, reserved, stream(*seed, "cli/absorber")))
                }
            };
            let u: Vec<usize> = (0..*universe).collect();
            let bundle = match build_absorber(&u, *k, &mut place).and_then(|b| b.verify().map(|()| b)) {
                Ok(b) => b,
                Err(e) => return gadget_failure(io, e),
            };
            for (i, e) in bundle.entries.iter().enumerate() {
                files::write_graph(&out_dir.join(format!("entry{i}.leftover.el")), &e.leftover)?;
                pair(out_dir, &format!("entry{i}.alone"), &e.gadget, &e.alone)?;
                pair(out_dir, &format!("entry{i}.with_leftover"), &e.gadget.union(&e.leftover), &e.with_leftover)?;
            }
            let _ = writeln!(
                io.out,
                "absorber: {} leftovers, {} vertices, {} edges",
                bundle.entries.len(),
                bundle.vertex_count(),
                bundle.gadget_union().edge_count()
            );
            Ok(exit::OK)
        }
    }
}
