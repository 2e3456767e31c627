//! `bench`: decompose random instances over an `(n, δ)` grid.
//!
//! Cells run in parallel, each from its own derived seed; rows are sorted before writing.

use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use cycledecomp::engine::{decompose, EngineConfig, Outcome};
use cycledecomp::generators::{gen_random_min_degree, make_divisible};
use cycledecomp::rng::derive_seed;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{exit, CliError};
use crate::files;
use crate::{EngineArgs, Io};

pub const SCHEMA: &str = "# cycledecomp-bench schema 1";

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub k: usize,
    /// Vertex counts as `lo..hi` (inclusive) or a single value.
    #[arg(long)]
    pub n: String,
    #[arg(long, default_value_t = 100)]
    pub n_step: usize,
    /// Minimum-degree fractions as `lo..hi` (inclusive) or a single value.
    #[arg(long)]
    pub delta: String,
    #[arg(long, default_value_t = 0.1)]
    pub delta_step: f64,
    /// Edge probability of the random base graph.
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    /// Instances per grid cell.
    #[arg(long, default_value_t = 1)]
    pub repeats: usize,
    /// CSV output.
    #[arg(short = 'o', long = "output")]
    pub output: PathBuf,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Serialize)]
struct Row {
    n: usize,
    delta: String,
    k: usize,
    repeat: usize,
    edges: usize,
    min_degree: usize,
    outcome: &'static str,
    cycles: usize,
    remainder_edges: usize,
    detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    millis: Option<String>,
}

fn split_range(s: &str) -> (&str, &str) {
    match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s.trim(), s.trim()),
    }
}

fn n_grid(spec: &str, step: usize) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Usage(format!("bad --n range `{spec}`"));
    let (a, b) = split_range(spec);
    let (lo, hi): (usize, usize) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
    if lo > hi || step == 0 {
        return Err(bad());
    }
    Ok((lo..=hi).step_by(step).collect())
}

/// Grid points as exact multiples of the step, rendered with four decimals.
fn delta_grid(spec: &str, step: f64) -> Result<Vec<(f64, String)>, CliError> {
    let bad = || CliError::Usage(format!("bad --delta range `{spec}`"));
    let (a, b) = split_range(spec);
    let (lo, hi): (f64, f64) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
    if !(0.0..=1.0).contains(&lo) || !(lo..=1.0).contains(&hi) || !(step > 0.0) {
        return Err(bad());
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    Ok((0..count)
        .map(|i| {
            let d = lo + i as f64 * step;
            (d, format!("{d:.4}"))
        })
        .collect())
}

fn cell(n: usize, delta: &(f64, String), repeat: usize, a: &BenchArgs, cfg: &EngineConfig) -> Row {
    let len = 2 * a.k;
    let seed = derive_seed(cfg.seed, &format!("bench/{n}/{}/{repeat}", delta.1));
    let start = Instant::now();
    let mut row = Row {
        n,
        delta: delta.1.clone(),
        k: a.k,
        repeat,
        edges: 0,
        min_degree: 0,
        outcome: "generator_error",
        cycles: 0,
        remainder_edges: 0,
        detail: String::new(),
        millis: None,
    };
    let made = gen_random_min_degree(n, delta.0, a.p, seed).and_then(|mut m| {
        make_divisible(&mut m.graph, len, derive_seed(seed, "divisible")).map(|()| m)
    });
    match made {
        Err(e) => row.detail = e.to_string(),
        Ok(m) => {
            let g = m.graph;
            row.edges = g.edge_count();
            row.min_degree = g.min_degree();
            let cell_cfg = EngineConfig { seed, ..cfg.clone() };
            let run = decompose(&g, a.k, &cell_cfg);
            row.outcome = run.outcome.kind();
            match &run.outcome {
                Outcome::Certificate(d) => row.cycles = d.len(),
                Outcome::Nonexistence(why) => {
                    row.remainder_edges = g.edge_count();
                    row.detail = why.kind().to_string();
                }
                Outcome::Diagnostic(d) => {
                    row.remainder_edges = g.edge_count();
                    row.detail = d.stage.clone();
                }
            }
        }
    }
    if a.engine.timings {
        row.millis = Some(format!("{:.1}", start.elapsed().as_secs_f64() * 1e3));
    }
    row
}

pub fn run(a: &BenchArgs, io: &mut Io<'_>) -> Result<i32, CliError> {
    if a.k < 2 {
        return Err(CliError::Usage(format!("--k must be at least 2, got {}", a.k)));
    }
    if !(0.0..=1.0).contains(&a.p) {
        return Err(CliError::Usage("--p must lie in [0, 1]".into()));
    }
    let cfg = a.engine.config()?;
    let ns = n_grid(&a.n, a.n_step)?;
    let deltas = delta_grid(&a.delta, a.delta_step)?;
    let mut cells = Vec::new();
    for (ni, &n) in ns.iter().enumerate() {
        for (di, d) in deltas.iter().enumerate() {
            for r in 0..a.repeats {
                cells.push((ni, di, r, n, d));
            }
        }
    }
    let mut rows: Vec<((usize, usize, usize), Row)> = cells
        .par_iter()
        .map(|&(ni, di, r, n, d)| ((ni, di, r), cell(n, d, r, a, &cfg)))
        .collect();
    rows.sort_by_key(|(key, _)| *key);
    let mut w = csv::Writer::from_writer(Vec::new());
    for (_, row) in &rows {
        w.serialize(row).map_err(|e| CliError::Internal(e.to_string()))?;
    }
    let body = w.into_inner().map_err(|e| CliError::Internal(e.to_string()))?;
    let mut text = format!("{SCHEMA}\n");
    text += &String::from_utf8(body).map_err(|e| CliError::Internal(e.to_string()))?;
    files::write(&a.output, &text)?;
    let certified = rows.iter().filter(|(_, r)| r.outcome == "certificate").count();
    let _ = writeln!(io.out, "{} cells, {certified} certified", rows.len());
    Ok(exit::OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_include_both_ends() {
        assert_eq!(n_grid("200..400", 100).unwrap(), vec![200, 300, 400]);
        let d: Vec<String> = delta_grid("0.50..0.70", 0.1).unwrap().into_iter().map(|x| x.1).collect();
        assert_eq!(d, vec!["0.5000", "0.6000", "0.7000"]);
        assert_eq!(n_grid("30", 10).unwrap(), vec![30]);
        assert!(n_grid("40..30", 10).is_err());
    }
}
