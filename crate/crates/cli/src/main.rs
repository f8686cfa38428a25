use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use newswire::synth::SynthConfig;
use newswire_cli::stages::{self, Ctx};
use newswire_cli::{CliError, CliResult, PipelineConfig};

/// Reconstructs a deduplicated, georeferenced, entity-linked newswire archive
/// from digitized local newspaper articles.
#[derive(Debug, Parser)]
#[command(name = "newswire", version)]
struct Cli {
    /// Pipeline configuration (TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Override a config field, e.g. `--set dedup.sim_threshold=0.9`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    overrides: Vec<String>,

    /// Worker threads (0 = available parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Candidate generation for dedup: `all` or `lsh`.
    #[arg(long, global = true, value_parser = ["all", "lsh"])]
    method: Option<String>,

    /// Embedding provider: `baseline` or `file:<path>`.
    #[arg(long, global = true, value_name = "PROVIDER")]
    embeddings: Option<String>,

    /// Log progress to stderr (repeat for more detail).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normalize the article file and record rejected lines.
    Ingest,
    /// Embed articles, person mentions and KB templates.
    Embed,
    /// Cluster reproduced articles.
    Dedup {
        /// Similarity threshold; disables `tune.auto_dedup`.
        #[arg(long)]
        threshold: Option<f32>,
        #[arg(long)]
        window_days: Option<u32>,
    },
    /// Keep wire clusters and pick canonical articles.
    Filter,
    /// Resolve wire-cluster datelines.
    Georef,
    /// Coreference person mentions and link them to the KB.
    Link,
    /// Score outputs against gold files.
    Eval,
    /// Write corpus tables and the per-cluster dataset file.
    Report,
    /// Fit the dedup similarity threshold on labeled pairs.
    TuneDedup,
    /// Fit the no-match threshold on gold links.
    TuneNomatch,
    /// Run every stage in order.
    Pipeline,
    /// Write a synthetic corpus and a config for it.
    Synth {
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// Number of planted wire sources.
        #[arg(long)]
        sources: Option<usize>,
    },
}

impl Command {
    fn stage(&self) -> &'static str {
        match self {
            Command::Ingest => "ingest",
            Command::Embed => "embed",
            Command::Dedup { .. } => "dedup",
            Command::Filter => "filter",
            Command::Georef => "georef",
            Command::Link => "link",
            Command::Eval => "eval",
            Command::Report => "report",
            Command::TuneDedup => "tune-dedup",
            Command::TuneNomatch => "tune-nomatch",
            Command::Pipeline => "pipeline",
            Command::Synth { .. } => "synth",
        }
    }
}

fn load_config(cli: &Cli) -> CliResult<PipelineConfig> {
    let mut overrides = cli.overrides.clone();
    if let Some(m) = &cli.method {
        overrides.push(format!("dedup.method={m}"));
    }
    if let Some(w) = cli.workers {
        overrides.push(format!("workers={w}"));
    }
    if let Command::Dedup { threshold, window_days } = &cli.command {
        if let Some(t) = threshold {
            overrides.push(format!("dedup.sim_threshold={t}"));
            overrides.push("tune.auto_dedup=false".into());
        }
        if let Some(w) = window_days {
            overrides.push(format!("dedup.block_window_days={w}"));
        }
    }
    let mut cfg = PipelineConfig::load(cli.config.as_deref(), &overrides)?;
    if let Some(e) = &cli.embeddings {
        cfg.embeddings.provider = e.clone();
        cfg.validate()?;
    }
    Ok(cfg)
}

fn run(cli: Cli) -> CliResult<()> {
    if let Command::Synth { out, seed, sources } = &cli.command {
        let mut config = SynthConfig::default();
        if let Some(s) = seed {
            config.seed = *s;
        }
        if let Some(n) = sources {
            config.sources = *n;
        }
        return newswire_cli::synth::write_corpus(out, &config);
    }
    let cfg = load_config(&cli)?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build_global()
        .map_err(|e| CliError::Internal(format!("thread pool: {e}")))?;
    let ctx = Ctx::new(cfg)?;
    match cli.command.stage() {
        "pipeline" => stages::pipeline(&ctx),
        stage => stages::run_stage(&ctx, stage),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    let stage = cli.command.stage();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("newswire {stage}: {e}");
            e.exit_code()
        }
    }
}
