use std::collections::{BTreeMap, HashMap, HashSet};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use newswire::entitylink::{
    coref_cluster, link as link_cluster, tune_nomatch_threshold, FlatIndex, LinkReason, LinkResult, MentionCluster,
    NomatchFit, PersonMention,
};
use newswire::ingest::{load_qrank, read_embeddings, KbRecord, RankTable};

use super::georef::wire_clusters;
use super::{files, Ctx};
use crate::config::{optional, required};
use crate::error::{CliError, CliResult};
use crate::manifest::{read_jsonl, write_json, write_jsonl, ManifestBuilder};

#[derive(Debug, Deserialize)]
struct GoldLinkRow {
    mention_id: String,
    #[serde(default)]
    qid: String,
}

/// `mention_id -> gold qid`; an empty qid in the file means "not in the KB".
pub(crate) fn load_gold_links(path: &Path) -> CliResult<BTreeMap<String, Option<String>>> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let mut out = BTreeMap::new();
    for (i, row) in reader.deserialize::<GoldLinkRow>().enumerate() {
        let row = row.map_err(|e| CliError::Input(format!("{}: row {}: {e}", path.display(), i + 1)))?;
        let qid = row.qid.trim();
        out.insert(row.mention_id, (!qid.is_empty()).then(|| qid.to_string()));
    }
    Ok(out)
}

/// Coreference over mentions in canonical wire articles, then linking of each
/// mention cluster against the pruned KB.
pub fn link(ctx: &Ctx) -> CliResult<()> {
    let (wire_inputs, wire) = wire_clusters(ctx)?;
    let canonical: HashSet<&str> = wire.iter().map(|(d, _)| d.canonical_id.as_str()).collect();

    let mentions_path = ctx.upstream(files::MENTIONS, "embed")?;
    let mention_emb_path = ctx.upstream(files::MENTION_EMBEDDINGS, "embed")?;
    let kb_path = ctx.upstream(files::KB_PRUNED, "embed (with paths.kb set)")?;
    let kb_emb_path = ctx.upstream(files::KB_EMBEDDINGS, "embed (with paths.kb set)")?;
    let qrank_path = optional("qrank", &ctx.cfg.paths.qrank)?;

    let mentions: Vec<PersonMention> = read_jsonl(&mentions_path)?;
    let mentions: Vec<PersonMention> =
        mentions.into_iter().filter(|m| canonical.contains(m.article_id.as_str())).collect();
    let mention_table = read_embeddings(&mention_emb_path)?;
    let kb: Vec<KbRecord> = read_jsonl(&kb_path)?;
    let kb_ids: HashSet<&str> = kb.iter().map(|r| r.qid.as_str()).collect();
    let kb_table = read_embeddings(&kb_emb_path)?;
    let ranks = match qrank_path {
        Some(p) => load_qrank(p)?.0,
        None => RankTable::default(),
    };

    let config = ctx.cfg.link;
    let clusters = coref_cluster(&mentions, &mention_table, config.coref_threshold)?;
    let index = FlatIndex::from_table(&kb_table, |id| kb_ids.contains(id))?;
    let links: Vec<LinkResult> = clusters
        .par_iter()
        .map(|c| link_cluster(&c.cluster_id, &c.prototype, &index, &ranks, &config))
        .collect::<newswire::Result<_>>()?;

    let clusters_out = ctx.path(files::MENTION_CLUSTERS);
    let links_out = ctx.path(files::LINKS);
    write_jsonl(&clusters_out, &clusters)?;
    write_jsonl(&links_out, &links)?;

    let mut manifest = ManifestBuilder::new("link", &ctx.hash);
    for p in &wire_inputs {
        manifest.input(p);
    }
    manifest.input(&mentions_path).input(&mention_emb_path).input(&kb_path).input(&kb_emb_path);
    if let Some(p) = qrank_path {
        manifest.input(p);
    }
    let reason = |r: LinkReason| links.iter().filter(|l| l.reason == r).count();
    manifest
        .output(&clusters_out)
        .output(&links_out)
        .count("mentions", mentions.len())
        .count("mention_clusters", clusters.len())
        .count("kb_index_size", index.len())
        .count("linked", reason(LinkReason::Linked))
        .count("below_threshold", reason(LinkReason::BelowThreshold))
        .count("empty_index", reason(LinkReason::EmptyIndex))
        .write(&ctx.out)?;
    Ok(())
}

/// The link decision each mention inherits from its cluster.
pub(crate) fn links_by_mention<'a>(
    clusters: &'a [MentionCluster],
    links: &'a [LinkResult],
) -> CliResult<HashMap<&'a str, &'a LinkResult>> {
    let by_cluster: HashMap<&str, &LinkResult> = links.iter().map(|l| (l.cluster_id.as_str(), l)).collect();
    let mut out = HashMap::new();
    for c in clusters {
        let l = by_cluster
            .get(c.cluster_id.as_str())
            .ok_or_else(|| CliError::Input(format!("no link result for mention cluster {}", c.cluster_id)))?;
        for m in &c.members {
            out.insert(m.as_str(), *l);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NomatchTuning {
    pub fit: NomatchFit,
    pub annotated: usize,
    pub correct: usize,
}

/// Fits the no-match threshold on gold-annotated mentions: each contributes
/// its cluster's nearest similarity and whether the band winner is correct.
pub fn tune_nomatch(ctx: &Ctx) -> CliResult<()> {
    let gold_path = required("gold_links", &ctx.cfg.paths.gold_links)?;
    let clusters_path = ctx.upstream(files::MENTION_CLUSTERS, "link")?;
    let links_path = ctx.upstream(files::LINKS, "link")?;
    let gold = load_gold_links(gold_path)?;
    let clusters: Vec<MentionCluster> = read_jsonl(&clusters_path)?;
    let links: Vec<LinkResult> = read_jsonl(&links_path)?;
    let by_mention = links_by_mention(&clusters, &links)?;

    let annotated: Vec<(f32, bool)> = gold
        .iter()
        .filter_map(|(m, g)| {
            let l = by_mention.get(m.as_str())?;
            let sim = l.best_similarity?;
            Some((sim, l.candidate.is_some() && l.candidate == *g))
        })
        .collect();
    let fit = tune_nomatch_threshold(&annotated)?;
    let tuning = NomatchTuning {
        fit,
        annotated: annotated.len(),
        correct: annotated.iter().filter(|a| a.1).count(),
    };
    let out = ctx.path(files::NOMATCH_TUNING);
    write_json(&out, &tuning)?;
    ManifestBuilder::new("tune-nomatch", &ctx.hash)
        .input(gold_path)
        .input(&clusters_path)
        .input(&links_path)
        .output(&out)
        .count("annotated", tuning.annotated)
        .count("correct", tuning.correct)
        .param("threshold", fit.threshold)
        .write(&ctx.out)?;
    Ok(())
}
