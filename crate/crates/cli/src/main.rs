use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use triad::experiment::{run_experiment, ExperimentConfig, Mode, KEYS};

#[derive(Parser)]
#[command(name = "triad", version, about = "Wedge picking streams and rest-and-run dense subgraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Clean an edge-event file and print it as `u v t op`.
    Ingest(Common),
    /// Generate a seeded graph and a model trace.
    Simulate(Common),
    /// Estimate p, q, r and the fit quality from a stream.
    Learn(Common),
    /// Maintain an approximate densest subgraph with rest-and-run.
    Densest(Common),
    /// Maintain an approximate tri-densest subgraph with rest-and-run.
    Tridensest(Common),
    /// Exact densest and tri-densest values of the final graph.
    Oracle(Common),
    /// Batched and per-event processing on the same events.
    Compare(Common),
    /// Run-time table over one or more inputs.
    Bench(Common),
}

#[derive(Args)]
struct Common {
    /// Flat `key = value` config file.
    #[arg(short, long)]
    config: Option<PathBuf>,
    /// Override a config key; repeatable.
    #[arg(short = 's', long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Input event file; repeatable for bench. Omit for a synthetic stream.
    #[arg(short, long)]
    input: Vec<PathBuf>,
    /// Artifact path (default: stdout).
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    eps: Option<f64>,
    /// none, all, count:K or time:T.
    #[arg(long)]
    split: Option<String>,
    /// Skip the JSON summary on stderr.
    #[arg(long)]
    quiet: bool,
}

impl Command {
    fn parts(&self) -> (Mode, &Common) {
        match self {
            Command::Ingest(c) => (Mode::Ingest, c),
            Command::Simulate(c) => (Mode::Simulate, c),
            Command::Learn(c) => (Mode::Learn, c),
            Command::Densest(c) => (Mode::Densest, c),
            Command::Tridensest(c) => (Mode::TriDensest, c),
            Command::Oracle(c) => (Mode::Oracle, c),
            Command::Compare(c) => (Mode::Compare, c),
            Command::Bench(c) => (Mode::Bench, c),
        }
    }
}

fn config(mode: Mode, args: &Common) -> Result<ExperimentConfig> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            ExperimentConfig::from_text(mode, &text)?
        }
        None => ExperimentConfig::new(mode),
    };
    // The subcommand names the mode even if the file says otherwise.
    cfg.mode = mode;
    cfg.apply(args.set.iter().map(String::as_str))
        .with_context(|| format!("valid keys: {}", KEYS.join(", ")))?;
    if !args.input.is_empty() {
        cfg.input = args.input.clone();
    }
    if let Some(o) = &args.output {
        cfg.output = Some(o.clone());
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(e) = args.eps {
        cfg.eps = e;
    }
    if let Some(s) = &args.split {
        cfg.set("split", s)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let (mode, args) = cli.command.parts();
    let cfg = config(mode, args)?;
    let mut stdout = std::io::stdout().lock();
    let summary = run_experiment(&cfg, &mut stdout)?;
    if !args.quiet {
        eprintln!("{summary:#}");
    }
    Ok(())
}
