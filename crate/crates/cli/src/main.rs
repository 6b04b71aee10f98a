mod commands;
mod config;
mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::CmdError;
use config::{parse_types, Format, RunConfig};

#[derive(Parser)]
#[command(name = "zcenter", version, about = "Block, GKM and center dimension checks for affine Weyl group combinatorics")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Opts {
    /// Cartan type such as A2 or G2; comma separated where a command takes several.
    #[arg(long = "type", global = true, value_delimiter = ',')]
    types: Vec<String>,
    /// Values of ell, comma separated.
    #[arg(long, global = true, value_delimiter = ',', allow_negative_numbers = true)]
    ell: Vec<i64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Allow values of ell outside the admissible range.
    #[arg(long, global = true)]
    force: bool,
    #[arg(long, global = true, env = "ZCENTER_THREADS")]
    threads: Option<usize>,
    /// Flat key=value file with the same settings as the flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Window bound for GKM checks, or radius for class counts.
    #[arg(long, global = true)]
    radius: Option<i64>,
    /// Truncation order N of the quiver algebra (h^N = 0).
    #[arg(long, global = true)]
    truncation: Option<u32>,
    /// Vertex bound K of the quiver algebra.
    #[arg(long = "quiver-k", global = true)]
    quiver_k: Option<i64>,
    /// Record wall-clock runtimes in reports; output is then no longer reproducible.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Invariants of a root datum.
    Info,
    /// Lattice points of the closed shifted alcove.
    Blocks,
    /// Closed form, subsystem formula and block sum.
    #[command(alias = "verify")]
    VerifyDim,
    /// GKM and center graph partitions on a guarded window.
    VerifyGkm,
    /// Distinct cell classes and alcove regions.
    SpringerClasses,
    /// Center of the rank-one quiver algebra.
    RankoneCenter,
    /// Polynomial fits of facet-type counts.
    Ehrhart,
    /// Full check suite as a report.
    Report,
}

impl Command {
    fn default_format(self) -> Format {
        match self {
            Command::VerifyDim | Command::Report => Format::Json,
            _ => Format::Table,
        }
    }
}

fn settings(opts: Opts) -> Result<RunConfig, String> {
    let from_flags = RunConfig {
        types: parse_types(&opts.types)?,
        ells: opts.ell,
        radius: opts.radius,
        truncation: opts.truncation,
        quiver_k: opts.quiver_k,
        threads: opts.threads,
        format: opts.format,
        output: opts.output,
        force: opts.force,
        timing: opts.timing,
    };
    let base = match &opts.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    let cfg = base.overlay(from_flags);
    cfg.validate()?;
    Ok(cfg)
}

fn run(command: Command, cfg: &RunConfig) -> Result<ExitCode, CmdError> {
    let format = cfg.format.unwrap_or(command.default_format());
    let out = match command {
        Command::Info => commands::info(cfg),
        Command::Blocks => commands::blocks(cfg),
        Command::VerifyDim => commands::verify_dim(cfg),
        Command::VerifyGkm => commands::verify_gkm(cfg),
        Command::SpringerClasses => commands::springer_classes(cfg),
        Command::RankoneCenter => commands::rankone_center(cfg),
        Command::Ehrhart => commands::ehrhart(cfg),
        Command::Report => commands::report(cfg, format),
    }?;
    let text = out.render(format).map_err(CmdError::Invalid)?;
    match &cfg.output {
        Some(path) => fs::write(path, text).map_err(|e| CmdError::Invalid(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(if out.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = cli.command;
    let cfg = match settings(cli.opts) {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if let Some(n) = cfg.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(command, &cfg) {
        Ok(code) => code,
        Err(CmdError::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CmdError::Failed(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
    }
}
