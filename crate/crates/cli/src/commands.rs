//! `decompose`, `verify` and `classify`.

use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use cycledecomp::analysis::{classify as classify_graph, closeness, extremal_report, Objective, Search};
use cycledecomp::engine::{decompose as run_engine, Outcome};
use cycledecomp::oracle::{check_count_certificate, check_parity_certificate};
use cycledecomp::verify_decomposition;

use crate::certs::{self, Nonexistence};
use crate::error::{exit, CliError};
use crate::files;
use crate::record::{OutcomeRecord, RunRecord};
use crate::{EngineArgs, Io};

fn emit(io: &mut Io<'_>, text: &str) -> Result<(), CliError> {
    io.out
        .write_all(text.as_bytes())
        .map_err(|e| CliError::Internal(format!("cannot write output: {e}")))
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    /// Half the cycle length.
    #[arg(long)]
    pub k: usize,
    /// Edge-list input.
    #[arg(long)]
    pub input: PathBuf,
    /// Where to write the certificate when one is found.
    #[arg(long)]
    pub cert: PathBuf,
    /// Also write the run record here.
    #[arg(long)]
    pub record: Option<PathBuf>,
    #[command(flatten)]
    pub engine: EngineArgs,
}

pub fn decompose(a: &DecomposeArgs, args: &[String], io: &mut Io<'_>) -> Result<i32, CliError> {
    if a.k < 2 {
        return Err(CliError::Usage(format!("--k must be at least 2, got {}", a.k)));
    }
    let cfg = a.engine.config()?;
    let g = files::read_graph(&a.input)?;
    let start = Instant::now();
    let run = run_engine(&g, a.k, &cfg);
    let elapsed = start.elapsed();
    let code = match &run.outcome {
        Outcome::Certificate(d) => {
            verify_decomposition(&g, d).map_err(|e| CliError::Internal(format!("engine returned a bad certificate: {e}")))?;
            files::write_cert(&a.cert, d)?;
            exit::OK
        }
        Outcome::Nonexistence(_) => exit::NONEXISTENCE,
        Outcome::Diagnostic(_) => exit::DIAGNOSTIC,
    };
    let record = RunRecord {
        command: "decompose".into(),
        args: args.to_vec(),
        seed: cfg.seed,
        config: cfg,
        outcome: OutcomeRecord::of(&run.outcome),
        timing_ms: a.engine.timings.then(|| elapsed.as_secs_f64() * 1e3),
        log: run.log,
    };
    let json = record.to_json();
    if let Some(p) = &a.record {
        files::write(p, &json)?;
    }
    emit(io, &json)?;
    Ok(code)
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Edge-list graph.
    pub graph: PathBuf,
    /// Cycle certificate, or a `parity` / `count` nonexistence certificate.
    pub cert: PathBuf,
}

pub fn verify(a: &VerifyArgs, io: &mut Io<'_>) -> Result<i32, CliError> {
    let g = files::read_graph(&a.graph)?;
    let text = files::read(&a.cert)?;
    let verdict = if certs::is_nonexistence(&text) {
        match certs::parse(&text, g.n()).map_err(|e| files::parse_error(&a.cert, e))? {
            Nonexistence::Parity(c) => check_parity_certificate(&g, &c)
                .map(|()| format!("valid parity certificate: no C_{} decomposition\n", c.cycle_length))
                .map_err(|e| e.to_string()),
            Nonexistence::Count(c) => check_count_certificate(&g, &c)
                .map(|()| format!("valid count certificate: no C_{} decomposition\n", c.cycle_length))
                .map_err(|e| e.to_string()),
        }
    } else {
        let d = cycledecomp::io::parse_certificate(&text).map_err(|e| files::parse_error(&a.cert, e))?;
        verify_decomposition(&g, &d)
            .map(|()| format!("valid decomposition: {} cycles of length {}\n", d.len(), d.cycle_length))
            .map_err(|e| e.to_string())
    };
    match verdict {
        Ok(msg) => {
            emit(io, &msg)?;
            Ok(exit::OK)
        }
        Err(why) => {
            emit(io, &format!("rejected: {why}\n"))?;
            Ok(exit::REJECTED)
        }
    }
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Edge-list input.
    #[arg(long)]
    pub input: PathBuf,
    /// Expansion parameter; defaults to the config value.
    #[arg(long)]
    pub nu: Option<f64>,
    /// Closeness parameter; defaults to the config value.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Use exhaustive bisection search at any size.
    #[arg(long)]
    pub exact: bool,
    /// Also test for an m-extremal witness with this m.
    #[arg(long)]
    pub extremal: Option<usize>,
    #[command(flatten)]
    pub engine: EngineArgs,
}

pub fn classify(a: &ClassifyArgs, io: &mut Io<'_>) -> Result<i32, CliError> {
    let cfg = a.engine.config()?;
    let nu = a.nu.unwrap_or(cfg.nu);
    let epsilon = a.epsilon.unwrap_or(cfg.epsilon);
    for (name, v) in [("nu", nu), ("epsilon", epsilon)] {
        if !(v > 0.0 && v < 1.0) {
            return Err(CliError::Usage(format!("--{name} must lie in (0, 1), got {v}")));
        }
    }
    let g = files::read_graph(&a.input)?;
    if g.n() < 2 {
        return Err(files::parse_error(&a.input, "classification needs at least two vertices"));
    }
    let search = if a.exact { Search::Exact } else { Search::Auto { seed: cfg.seed } };
    let start = Instant::now();
    let report = classify_graph(&g, nu, epsilon, search);
    let sizes: Vec<String> = report.witness.iter().map(|s| s.len().to_string()).collect();
    let n2 = g.n() * g.n();
    let mut out = String::new();
    out += &format!("n {}\nedges {}\nmin_degree {}\n", g.n(), g.edge_count(), g.min_degree());
    out += &format!("nu {nu}\nepsilon {epsilon}\n");
    out += &format!("kind {}\nparameter {}\nexact {}\n", report.kind.as_str(), report.parameter, report.exact);
    out += &format!("witness_sizes {}\n", sizes.join(" ").trim());
    for (name, objective) in [("closeness_two_cliques", Objective::Cut), ("closeness_bipartite", Objective::Inside)] {
        let c = closeness(&g, objective, search);
        out += &format!("{name} {}/{n2} exact={}\n", c.edges, c.exact);
    }
    if let Some(m) = a.extremal {
        match extremal_report(&g, m) {
            Some(r) => {
                let sizes: Vec<String> = r.witness.iter().map(|s| s.len().to_string()).collect();
                out += &format!("extremal {} m={m} witness_sizes {}\n", r.kind.as_str(), sizes.join(" "));
            }
            None => out += &format!("extremal none m={m}\n"),
        }
    }
    if a.engine.timings {
        out += &format!("timing_ms {:.3}\n", start.elapsed().as_secs_f64() * 1e3);
    }
    emit(io, &out)?;
    Ok(exit::OK)
}
