//! `generate <family>`.

use std::path::PathBuf;

use clap::{Args, Subcommand};
use cycledecomp::generators::{
    gen_c2k_bip_extremal, gen_c4_bip_extremal, gen_c4_extremal, gen_perturbed, gen_random_min_degree, gen_two_cliques,
    make_divisible, GeneratorOutput, Shape,
};
use cycledecomp::rng::derive_seed;

use crate::certs;
use crate::error::{exit, CliError};
use crate::files;
use crate::Io;

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(subcommand)]
    pub family: Family,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// Edge-list output.
    #[arg(short = 'o', long = "output")]
    pub output: PathBuf,
    /// Write the family's nonexistence certificate here.
    #[arg(long)]
    pub emit_certificate: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Family {
    /// Dense graph of minimum degree 2n/3 - 2 with no C_4-decomposition.
    C4Extremal {
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Two disjoint cliques with no C_2k-decomposition.
    TwoCliques {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        j: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Bipartite C_6 blow-up with no C_4-decomposition.
    C4BipExtremal {
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Balanced bipartite graph with no C_2k-decomposition.
    C2kBipExtremal {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[command(flatten)]
        out: Output,
    },
    /// G(n, p) topped up to minimum degree delta*n.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        /// Delete short cycles until the graph is C_L-divisible.
        #[arg(long)]
        divisible: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Two cliques, complete bipartite or complete tripartite, with random pairs toggled.
    Perturbed {
        #[arg(long)]
        shape: Shape,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
        #[command(flatten)]
        out: Output,
    },
}

fn bad(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

pub fn run(a: &GenerateArgs, io: &mut Io<'_>) -> Result<i32, CliError> {
    let (made, out) = match &a.family {
        Family::C4Extremal { m, out } => (gen_c4_extremal(*m).map_err(bad)?, out),
        Family::TwoCliques { k, j, out } => (gen_two_cliques(*k, *j).map_err(bad)?, out),
        Family::C4BipExtremal { m, out } => (gen_c4_bip_extremal(*m).map_err(bad)?, out),
        Family::C2kBipExtremal { k, index, out } => (gen_c2k_bip_extremal(*k, *index).map_err(bad)?, out),
        Family::Random {
            n,
            delta,
            p,
            divisible,
            out,
        } => {
            let mut made = gen_random_min_degree(*n, *delta, *p, out.seed).map_err(bad)?;
            if let Some(len) = divisible {
                if *len < 3 {
                    return Err(CliError::Usage("--divisible needs a cycle length of at least 3".into()));
                }
                make_divisible(&mut made.graph, *len, derive_seed(out.seed, "cli/divisible")).map_err(bad)?;
            }
            (made, out)
        }
        Family::Perturbed { shape, n, noise, out } => (gen_perturbed(*shape, *n, *noise, out.seed).map_err(bad)?, out),
    };
    write(&made, out)?;
    let g = &made.graph;
    let _ = writeln!(io.out, "wrote {} vertices, {} edges, min degree {}", g.n(), g.edge_count(), g.min_degree());
    Ok(exit::OK)
}

fn write(made: &GeneratorOutput, out: &Output) -> Result<(), CliError> {
    let cert = match &out.emit_certificate {
        None => None,
        Some(path) => {
            let text = match (&made.parity, &made.count) {
                (Some(p), _) => certs::write_parity(p),
                (None, Some(c)) => certs::write_count(c),
                (None, None) => return Err(CliError::Usage("this family carries no nonexistence certificate".into())),
            };
            Some((path, text))
        }
    };
    files::write_graph(&out.output, &made.graph)?;
    if let Some((path, text)) = cert {
        files::write(path, &text)?;
    }
    Ok(())
}
