use rayon::prelude::*;

use newswire::corpus::normalize_tokens;
use newswire::embed::{EmbeddingProvider, EmbeddingTable};
use newswire::entitylink::{extract_person_mentions, prune_kb, PersonMention};
use newswire::ingest::{load_articles, load_kb, write_articles, write_embeddings, Rejection};

use super::{files, Ctx};
use crate::config::required;
use crate::error::{CliError, CliResult};
use crate::manifest::{write_jsonl, ManifestBuilder};

/// Normalizes the article file. Malformed lines, duplicate ids and records
/// with no word tokens are rejected with a reason instead of aborting.
pub fn ingest(ctx: &Ctx) -> CliResult<()> {
    let src = required("articles", &ctx.cfg.paths.articles)?;
    let dst = ctx.path(files::ARTICLES);
    if src.canonicalize().ok() == dst.canonicalize().ok() {
        return Err(CliError::Config(format!(
            "paths.articles: {} would be overwritten by ingest output",
            src.display()
        )));
    }
    let loaded = load_articles(src)?;
    let mut rejections = loaded.rejections;
    let mut articles = Vec::with_capacity(loaded.articles.len());
    for a in loaded.articles {
        if normalize_tokens(&a.text).is_empty() {
            rejections.push(Rejection {
                line: 0,
                reason: format!("article {:?} has no word tokens", a.article_id),
            });
        } else {
            articles.push(a);
        }
    }
    if articles.is_empty() {
        return Err(CliError::Input(format!("{}: no usable articles", src.display())));
    }
    write_articles(&dst, &articles)?;
    let rej_path = ctx.path(files::REJECTIONS);
    write_jsonl(&rej_path, &rejections)?;
    for r in rejections.iter().take(5) {
        log::warn!("rejected line {}: {}", r.line, r.reason);
    }
    ManifestBuilder::new("ingest", &ctx.hash)
        .input(src)
        .output(&dst)
        .output(&rej_path)
        .count("articles", articles.len())
        .count("rejected", rejections.len())
        .write(&ctx.out)?;
    Ok(())
}

fn embed_all<'a>(
    provider: &dyn EmbeddingProvider,
    items: impl IntoParallelIterator<Item = (&'a str, &'a str)>,
) -> CliResult<Vec<Vec<f32>>> {
    items
        .into_par_iter()
        .map(|(id, text)| {
            provider
                .embed(id, text)
                .map_err(|e| CliError::Input(format!("embedding {id:?}: {e}")))
        })
        .collect()
}

fn table(dim: usize, ids: impl Iterator<Item = String>, vectors: Vec<Vec<f32>>) -> CliResult<EmbeddingTable> {
    let mut t = EmbeddingTable::new(dim, true);
    for (id, v) in ids.zip(vectors) {
        t.insert(id, &v)?;
    }
    Ok(t)
}

/// Embeds articles, person mentions and (when a KB is configured) the pruned
/// KB templates. The baseline provider embeds a mention's surface form; file
/// providers look vectors up by id.
pub fn embed(ctx: &Ctx) -> CliResult<()> {
    let (articles_path, articles) = ctx.ingested_articles()?;
    let provider = ctx.provider()?;
    let provider = provider.as_ref();
    let dim = provider.dim();
    let mut manifest = ManifestBuilder::new("embed", &ctx.hash);
    manifest.input(&articles_path).param("provider", provider.name());

    let vectors = embed_all(provider, articles.par_iter().map(|a| (a.article_id.as_str(), a.text.as_str())))?;
    let article_table = table(dim, articles.iter().map(|a| a.article_id.clone()), vectors)?;
    let article_path = ctx.path(files::ARTICLE_EMBEDDINGS);
    write_embeddings(&article_path, &article_table)?;
    manifest.output(&article_path).count("articles", article_table.len());

    let mut mentions: Vec<PersonMention> = Vec::new();
    let mut untagged = 0;
    for a in &articles {
        let found = extract_person_mentions(a)?;
        untagged += found.untagged as usize;
        mentions.extend(found.mentions);
    }
    let before = mentions.len();
    mentions.retain(|m| !normalize_tokens(&m.surface).is_empty());
    let vectors = embed_all(provider, mentions.par_iter().map(|m| (m.mention_id.as_str(), m.surface.as_str())))?;
    let mention_table = table(dim, mentions.iter().map(|m| m.mention_id.clone()), vectors)?;
    let mentions_path = ctx.path(files::MENTIONS);
    let mention_emb_path = ctx.path(files::MENTION_EMBEDDINGS);
    write_jsonl(&mentions_path, &mentions)?;
    write_embeddings(&mention_emb_path, &mention_table)?;
    manifest
        .output(&mentions_path)
        .output(&mention_emb_path)
        .count("mentions", mentions.len())
        .count("mentions_without_text", before - mentions.len())
        .count("untagged_articles", untagged);

    if ctx.cfg.paths.kb.is_some() {
        let kb_path = required("kb", &ctx.cfg.paths.kb)?;
        let loaded = load_kb(kb_path)?;
        let raw = loaded.items.len();
        let kb = prune_kb(loaded.items);
        let vectors = embed_all(provider, kb.par_iter().map(|r| (r.qid.as_str(), r.template.as_str())))?;
        let kb_table = table(dim, kb.iter().map(|r| r.qid.clone()), vectors)?;
        let pruned_path = ctx.path(files::KB_PRUNED);
        let kb_emb_path = ctx.path(files::KB_EMBEDDINGS);
        write_jsonl(&pruned_path, &kb)?;
        write_embeddings(&kb_emb_path, &kb_table)?;
        manifest
            .input(kb_path)
            .output(&pruned_path)
            .output(&kb_emb_path)
            .count("kb_records", raw)
            .count("kb_rejected", loaded.rejections.len())
            .count("kb_pruned", kb.len());
    }
    manifest.write(&ctx.out)?;
    Ok(())
}
