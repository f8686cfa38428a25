//! One function per subcommand. Stages talk only through files in the output
//! directory, so any of them can be rerun on its own.

mod dedup;
mod eval;
mod georef;
mod ingest;
mod link;

use std::path::PathBuf;

use newswire::corpus::ArticleRecord;
use newswire::embed::{EmbeddingProvider, FileProvider, HashedNgramEmbedder};

use crate::config::{PipelineConfig, Provider};
use crate::error::{CliError, CliResult};
use crate::manifest::{io_err, read_jsonl};

pub use dedup::{dedup, filter, tune_dedup};
pub use eval::{eval, report};
pub use georef::georef;
pub use ingest::{embed, ingest};
pub use link::{link, tune_nomatch};

/// Names of the files stages write into the output directory.
pub mod files {
    pub const ARTICLES: &str = "ingested_articles.jsonl";
    pub const REJECTIONS: &str = "ingest_rejections.jsonl";
    pub const ARTICLE_EMBEDDINGS: &str = "article_embeddings.nwemb";
    pub const MENTIONS: &str = "mentions.jsonl";
    pub const MENTION_EMBEDDINGS: &str = "mention_embeddings.nwemb";
    pub const KB_PRUNED: &str = "kb_pruned.jsonl";
    pub const KB_EMBEDDINGS: &str = "kb_embeddings.nwemb";
    pub const DEDUP_TUNING: &str = "dedup_tuning.json";
    pub const CLUSTERS: &str = "clusters.jsonl";
    pub const WIRE_CLUSTERS: &str = "wire_clusters.jsonl";
    pub const DATELINES: &str = "datelines.jsonl";
    pub const MENTION_CLUSTERS: &str = "mention_clusters.jsonl";
    pub const LINKS: &str = "links.jsonl";
    pub const NOMATCH_TUNING: &str = "nomatch_tuning.json";
    pub const METRICS: &str = "metrics.json";
    pub const NEWSWIRE: &str = "newswire.jsonl";
}

/// Subcommands in `pipeline` order.
pub const PIPELINE_STAGES: [&str; 9] = [
    "ingest", "embed", "tune-dedup", "dedup", "filter", "georef", "link", "eval", "report",
];

pub struct Ctx {
    pub cfg: PipelineConfig,
    pub out: PathBuf,
    pub hash: String,
}

impl Ctx {
    pub fn new(cfg: PipelineConfig) -> CliResult<Self> {
        let out = cfg.output_dir()?.to_path_buf();
        std::fs::create_dir_all(&out).map_err(|e| io_err(&out, e))?;
        let hash = cfg.parameter_hash();
        Ok(Self { cfg, out, hash })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.out.join(name)
    }

    /// An upstream stage's output, which must already exist.
    pub fn upstream(&self, name: &str, producer: &str) -> CliResult<PathBuf> {
        let p = self.path(name);
        if !p.exists() {
            return Err(CliError::Input(format!(
                "{} is missing; run `{producer}` first",
                p.display()
            )));
        }
        Ok(p)
    }

    pub fn provider(&self) -> CliResult<Box<dyn EmbeddingProvider>> {
        Ok(match self.cfg.provider()? {
            Provider::Baseline => Box::new(HashedNgramEmbedder::new(self.cfg.embeddings.ngram)?),
            Provider::File(p) => {
                if !p.exists() {
                    return Err(CliError::Config(format!(
                        "embeddings.provider: file not found: {}",
                        p.display()
                    )));
                }
                Box::new(FileProvider::open(&p)?)
            }
        })
    }

    pub fn ingested_articles(&self) -> CliResult<(PathBuf, Vec<ArticleRecord>)> {
        let p = self.upstream(files::ARTICLES, "ingest")?;
        let articles = read_jsonl(&p)?;
        Ok((p, articles))
    }
}

pub fn run_stage(ctx: &Ctx, stage: &str) -> CliResult<()> {
    log::info!("stage {stage}");
    let r = match stage {
        "ingest" => ingest(ctx),
        "embed" => embed(ctx),
        "tune-dedup" => tune_dedup(ctx),
        "dedup" => dedup(ctx),
        "filter" => filter(ctx),
        "georef" => georef(ctx),
        "link" => link(ctx),
        "tune-nomatch" => tune_nomatch(ctx),
        "eval" => eval(ctx),
        "report" => report(ctx),
        other => Err(CliError::Internal(format!("unknown stage {other}"))),
    };
    r.map_err(|e| e.in_stage(stage))
}

/// Runs every stage in order. `tune-dedup` runs only when `tune.auto_dedup`
/// is set, and `eval` only when some gold file is configured.
pub fn pipeline(ctx: &Ctx) -> CliResult<()> {
    for stage in PIPELINE_STAGES {
        let skip = match stage {
            "tune-dedup" => !ctx.cfg.tune.auto_dedup,
            "eval" => ctx.cfg.paths.gold_groups.is_none() && ctx.cfg.paths.gold_links.is_none(),
            _ => false,
        };
        if skip {
            log::info!("skipping {stage}");
            continue;
        }
        run_stage(ctx, stage)?;
    }
    Ok(())
}
