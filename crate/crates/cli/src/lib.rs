//! Command-line front end for the `cycledecomp` library.
//!
//! [`run`] parses an argument vector, executes one subcommand and returns the exit code.
//! Everything a command prints or writes depends only on its arguments, the config and the
//! seed; wall-clock timings appear only with `--timings`.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use cycledecomp::engine::{EngineConfig, CONFIG_ENV};

pub mod bench;
pub mod certs;
pub mod commands;
pub mod error;
pub mod files;
pub mod gadget;
pub mod generate;
pub mod record;

pub use error::{exit, CliError};

#[derive(Debug, Parser)]
#[command(name = "cycledecomp", version, about = "Decompose dense graphs into cycles of length 2k")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find a C_2k-decomposition, prove none exists, or report where the pipeline stopped.
    Decompose(commands::DecomposeArgs),
    /// Check a cycle certificate or a nonexistence certificate against a graph.
    Verify(commands::VerifyArgs),
    /// Report the structure class of a graph.
    Classify(commands::ClassifyArgs),
    /// Write a graph from one of the built-in families.
    Generate(generate::GenerateArgs),
    /// Build a gadget and write it with its decomposition schedules.
    Gadget(gadget::GadgetArgs),
    /// Run the decomposer over a grid of random instances and write a CSV.
    Bench(bench::BenchArgs),
}

/// Options shared by commands that run the engine.
#[derive(Debug, Clone, Args)]
pub struct EngineArgs {
    /// Master seed; every random choice derives from it.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// TOML config file; defaults to the file named by CYCLEDECOMP_CONFIG.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Include wall-clock timings in the output.
    #[arg(long)]
    pub timings: bool,
}

impl EngineArgs {
    /// Config from `--config`, else from the environment, else defaults; the seed is
    /// overridden by `--seed`.
    pub fn config(&self) -> Result<EngineConfig, CliError> {
        let path = self
            .config
            .clone()
            .or_else(|| std::env::var_os(CONFIG_ENV).filter(|p| !p.is_empty()).map(PathBuf::from));
        let mut cfg = match path {
            Some(p) => load_config(&p)?,
            None => EngineConfig::default(),
        };
        cfg.seed = self.seed;
        Ok(cfg)
    }
}

fn load_config(path: &Path) -> Result<EngineConfig, CliError> {
    let text = files::read(path)?;
    EngineConfig::from_toml(&text).map_err(|e| files::parse_error(path, e))
}

/// Output streams of one invocation.
pub struct Io<'a> {
    pub out: &'a mut dyn std::io::Write,
    pub err: &'a mut dyn std::io::Write,
}

/// Parse `argv` (including the program name) and run the command.
pub fn run<I, T>(argv: I, io: &mut Io<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let text = e.render().to_string();
            let sink = if e.use_stderr() { &mut *io.err } else { &mut *io.out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let args: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let result = match &cli.command {
        Command::Decompose(a) => commands::decompose(a, &args, io),
        Command::Verify(a) => commands::verify(a, io),
        Command::Classify(a) => commands::classify(a, io),
        Command::Generate(a) => generate::run(a, io),
        Command::Gadget(a) => gadget::run(a, io),
        Command::Bench(a) => bench::run(a, io),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            e.code()
        }
    }
}
