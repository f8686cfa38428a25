use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use newswire::corpus::{ArticleRecord, ClusterRecord};
use newswire::dedup::{cluster_articles, tune_sim_threshold, LabeledPair, Method, ThresholdFit};
use newswire::ingest::{load_dictionary, load_scores, read_embeddings};
use newswire::wirefilter::{filter_clusters, FilterInputs};

use super::{files, Ctx};
use crate::config::{optional, required};
use crate::error::{CliError, CliResult};
use crate::manifest::{read_json, read_jsonl, write_json, write_jsonl, ManifestBuilder};

#[derive(Debug, Deserialize)]
struct PairRow {
    a: String,
    b: String,
    same_source: String,
}

fn parse_flag(s: &str) -> Option<bool> {
    match s.trim() {
        "1" | "true" | "yes" => Some(true),
        "0" | "false" | "no" => Some(false),
        _ => None,
    }
}

pub(crate) fn load_labeled_pairs(path: &Path) -> CliResult<Vec<LabeledPair>> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    reader
        .deserialize::<PairRow>()
        .enumerate()
        .map(|(i, row)| {
            let row = row.map_err(|e| CliError::Input(format!("{}: row {}: {e}", path.display(), i + 1)))?;
            let same_source = parse_flag(&row.same_source).ok_or_else(|| {
                CliError::Input(format!("{}: row {}: same_source must be 0 or 1", path.display(), i + 1))
            })?;
            Ok(LabeledPair { a: row.a, b: row.b, same_source })
        })
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DedupTuning {
    pub fit: ThresholdFit,
    pub pairs: usize,
    pub positives: usize,
}

/// Picks the similarity threshold with the best F1 on labeled article pairs.
pub fn tune_dedup(ctx: &Ctx) -> CliResult<()> {
    let pairs_path = required("labeled_pairs", &ctx.cfg.paths.labeled_pairs)?;
    let emb_path = ctx.upstream(files::ARTICLE_EMBEDDINGS, "embed")?;
    let pairs = load_labeled_pairs(pairs_path)?;
    let table = read_embeddings(&emb_path)?;
    let fit = tune_sim_threshold(&pairs, &table)?;
    let tuning = DedupTuning {
        fit,
        pairs: pairs.len(),
        positives: pairs.iter().filter(|p| p.same_source).count(),
    };
    log::info!("tuned dedup threshold {} (F1 {:.4})", fit.threshold, fit.f1);
    let out = ctx.path(files::DEDUP_TUNING);
    write_json(&out, &tuning)?;
    ManifestBuilder::new("tune-dedup", &ctx.hash)
        .input(pairs_path)
        .input(&emb_path)
        .output(&out)
        .count("pairs", tuning.pairs)
        .count("positives", tuning.positives)
        .param("threshold", fit.threshold)
        .write(&ctx.out)?;
    Ok(())
}

/// Clusters articles. With `tune.auto_dedup` the threshold comes from
/// `dedup_tuning.json` rather than `dedup.sim_threshold`.
pub fn dedup(ctx: &Ctx) -> CliResult<()> {
    let (articles_path, articles) = ctx.ingested_articles()?;
    let mut config = ctx.cfg.dedup;
    let mut manifest = ManifestBuilder::new("dedup", &ctx.hash);
    manifest.input(&articles_path);

    if ctx.cfg.tune.auto_dedup && config.method == Method::All {
        let p = ctx.upstream(files::DEDUP_TUNING, "tune-dedup")?;
        let tuning: DedupTuning = read_json(&p)?;
        config.sim_threshold = tuning.fit.threshold;
        config
            .validate()
            .map_err(|e| CliError::Input(format!("{}: tuned threshold unusable: {e}", p.display())))?;
        manifest.input(&p);
    }
    let embeddings = match config.method {
        Method::All => {
            let p = ctx.upstream(files::ARTICLE_EMBEDDINGS, "embed")?;
            manifest.input(&p);
            Some(read_embeddings(&p)?)
        }
        Method::Lsh => None,
    };
    let outcome = cluster_articles(&articles, &config, embeddings.as_ref())?;
    let out = ctx.path(files::CLUSTERS);
    write_jsonl(&out, &outcome.clusters)?;
    let method = match config.method {
        Method::All => "all",
        Method::Lsh => "lsh",
    };
    manifest
        .output(&out)
        .count("articles", articles.len())
        .count("clusters", outcome.clusters.len())
        .count("multi_member_clusters", outcome.clusters.iter().filter(|c| c.size > 1).count())
        .count("blocks", outcome.blocks)
        .count("candidate_pairs", outcome.candidate_pairs)
        .param("method", method)
        .param("sim_threshold", config.sim_threshold)
        .write(&ctx.out)?;
    Ok(())
}

pub(crate) fn index_articles(articles: &[ArticleRecord]) -> HashMap<&str, &ArticleRecord> {
    articles.iter().map(|a| (a.article_id.as_str(), a)).collect()
}

/// Applies the size floor, template rules and classifier gate, and picks a
/// canonical article per surviving cluster.
pub fn filter(ctx: &Ctx) -> CliResult<()> {
    let (articles_path, articles) = ctx.ingested_articles()?;
    let clusters_path = ctx.upstream(files::CLUSTERS, "dedup")?;
    let clusters: Vec<ClusterRecord> = read_jsonl(&clusters_path)?;
    let dict_path = required("dictionary", &ctx.cfg.paths.dictionary)?;
    let dictionary = load_dictionary(dict_path)?;
    let weather_path = optional("weather_scores", &ctx.cfg.paths.weather_scores)?;
    let nonwire_path = optional("nonwire_scores", &ctx.cfg.paths.nonwire_scores)?;
    let weather = weather_path.map(load_scores).transpose()?;
    let nonwire = nonwire_path.map(load_scores).transpose()?;

    let by_id = index_articles(&articles);
    let inputs = FilterInputs {
        articles: &by_id,
        weather: weather.as_ref(),
        nonwire: nonwire.as_ref(),
        dictionary: &dictionary,
    };
    let (decisions, counts) = filter_clusters(&clusters, &inputs, &ctx.cfg.filter)?;
    let out = ctx.path(files::WIRE_CLUSTERS);
    write_jsonl(&out, &decisions)?;

    let mut manifest = ManifestBuilder::new("filter", &ctx.hash);
    manifest.input(&articles_path).input(&clusters_path).input(dict_path);
    for p in weather_path.into_iter().chain(nonwire_path) {
        manifest.input(p);
    }
    manifest
        .output(&out)
        .count("input_clusters", counts.input_clusters)
        .count("too_small", counts.too_small)
        .count("template", counts.template)
        .count("weather", counts.weather)
        .count("nonwire", counts.nonwire)
        .count("wire", counts.wire)
        .count("unscored", decisions.iter().filter(|d| d.unscored).count())
        .write(&ctx.out)?;
    Ok(())
}
