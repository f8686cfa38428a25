use std::collections::{BTreeMap, HashMap};

use chrono::Datelike;
use serde::{Deserialize, Serialize};

use newswire::corpus::{format_date, ArticleRecord, ClusterRecord, Partition};
use newswire::entitylink::{people_by_article, LinkResult, MentionCluster, PersonEntry, PersonMention};
use newswire::eval::{
    adjusted_rand_index, corpus_report, link_metrics, pairwise_prf, CorpusReport, LinkAnnotation, LinkMetrics,
    PairwiseScores, WireCluster,
};
use newswire::georef::DatelineRecord;
use newswire::ingest::KbRecord;

use super::georef::wire_clusters;
use super::link::{links_by_mention, load_gold_links};
use super::{files, Ctx};
use crate::config::optional;
use crate::error::{CliError, CliResult};
use crate::manifest::{read_jsonl, write_json, write_jsonl, ManifestBuilder};

/// Expected dateline of a gold group; empty strings for absent fields.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct GoldDateline {
    pub city: String,
    pub state: String,
    pub country: String,
    pub note: String,
}

impl GoldDateline {
    pub fn matches(&self, r: &DatelineRecord) -> bool {
        if !self.note.is_empty() {
            return r.wire_location_notes == self.note && r.wire_coordinates.is_none();
        }
        r.wire_location_notes.is_empty()
            && r.wire_city == self.city
            && r.wire_state == self.state
            && r.wire_country == self.country
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct GoldGroupRow {
    pub group_id: String,
    pub members: Vec<String>,
    #[serde(default)]
    pub dateline: Option<GoldDateline>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DedupEval {
    pub ari: f64,
    pub pairwise: PairwiseScores,
    pub predicted_clusters: usize,
    pub gold_groups: usize,
    /// Gold ids absent from the ingested articles; left out of scoring.
    pub gold_ids_not_ingested: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeorefEval {
    pub evaluated: usize,
    pub exact: usize,
    pub accuracy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorefEval {
    pub mentions: usize,
    pub ari: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dedup: Option<DedupEval>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub georef: Option<GeorefEval>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coref: Option<CorefEval>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub link: Option<LinkMetrics>,
}

fn dedup_eval(articles: &[ArticleRecord], clusters: &[ClusterRecord], gold: &[GoldGroupRow]) -> CliResult<DedupEval> {
    let ingested: HashMap<&str, ()> = articles.iter().map(|a| (a.article_id.as_str(), ())).collect();
    let mut covered: std::collections::HashSet<String> = std::collections::HashSet::new();
    let mut missing = 0;
    let mut groups: Vec<Vec<String>> = Vec::new();
    for g in gold {
        let kept: Vec<String> = g
            .members
            .iter()
            .filter(|m| {
                let ok = ingested.contains_key(m.as_str());
                missing += !ok as usize;
                ok
            })
            .cloned()
            .collect();
        covered.extend(kept.iter().cloned());
        if !kept.is_empty() {
            groups.push(kept);
        }
    }
    for a in articles {
        if !covered.contains(&a.article_id) {
            groups.push(vec![a.article_id.clone()]);
        }
    }
    let gold_groups = groups.len();
    let gold = Partition::from_groups(groups).map_err(|e| CliError::Input(format!("gold groups: {e}")))?;
    let pred = Partition::from_groups(clusters.iter().map(|c| c.member_ids.clone()).collect())?;
    Ok(DedupEval {
        ari: adjusted_rand_index(&pred, &gold)?,
        pairwise: pairwise_prf(&pred, &gold)?,
        predicted_clusters: clusters.len(),
        gold_groups,
        gold_ids_not_ingested: missing,
    })
}

/// Each evaluated cluster is compared with the gold group holding most of its
/// members (ties to the smaller group id).
fn georef_eval(
    wire: &[(newswire::wirefilter::WireDecision, ClusterRecord)],
    datelines: &[DatelineRecord],
    gold: &[GoldGroupRow],
) -> GeorefEval {
    let group_of: HashMap<&str, usize> = gold
        .iter()
        .enumerate()
        .flat_map(|(i, g)| g.members.iter().map(move |m| (m.as_str(), i)))
        .collect();
    let members: HashMap<&str, &ClusterRecord> = wire.iter().map(|(_, c)| (c.cluster_id.as_str(), c)).collect();
    let (mut evaluated, mut exact) = (0, 0);
    for r in datelines {
        let Some(c) = members.get(r.cluster_id.as_str()) else { continue };
        let mut votes: BTreeMap<usize, usize> = BTreeMap::new();
        for m in &c.member_ids {
            if let Some(&g) = group_of.get(m.as_str()) {
                *votes.entry(g).or_insert(0) += 1;
            }
        }
        let best = votes
            .iter()
            .max_by(|a, b| a.1.cmp(b.1).then_with(|| gold[*b.0].group_id.cmp(&gold[*a.0].group_id)))
            .map(|(g, _)| *g);
        let Some(expected) = best.and_then(|g| gold[g].dateline.as_ref()) else { continue };
        evaluated += 1;
        exact += expected.matches(r) as usize;
    }
    GeorefEval {
        evaluated,
        exact,
        accuracy: (evaluated > 0).then(|| exact as f64 / evaluated as f64),
    }
}

/// Scores every stage that has gold data configured.
pub fn eval(ctx: &Ctx) -> CliResult<()> {
    let gold_groups_path = optional("gold_groups", &ctx.cfg.paths.gold_groups)?;
    let gold_links_path = optional("gold_links", &ctx.cfg.paths.gold_links)?;
    if gold_groups_path.is_none() && gold_links_path.is_none() {
        return Err(CliError::Config("eval needs paths.gold_groups or paths.gold_links".into()));
    }
    let mut manifest = ManifestBuilder::new("eval", &ctx.hash);
    let mut metrics = Metrics::default();

    if let Some(gp) = gold_groups_path {
        let gold: Vec<GoldGroupRow> = read_jsonl(gp)?;
        let (articles_path, articles) = ctx.ingested_articles()?;
        let clusters_path = ctx.upstream(files::CLUSTERS, "dedup")?;
        let clusters: Vec<ClusterRecord> = read_jsonl(&clusters_path)?;
        let d = dedup_eval(&articles, &clusters, &gold)?;
        manifest.input(gp).input(&articles_path).input(&clusters_path).count("gold_groups", gold.len());
        metrics.dedup = Some(d);

        if gold.iter().any(|g| g.dateline.is_some()) {
            let (wire_inputs, wire) = wire_clusters(ctx)?;
            let dl_path = ctx.upstream(files::DATELINES, "georef")?;
            let datelines: Vec<DatelineRecord> = read_jsonl(&dl_path)?;
            let g = georef_eval(&wire, &datelines, &gold);
            for p in &wire_inputs {
                manifest.input(p);
            }
            manifest.input(&dl_path).count("georef_evaluated", g.evaluated);
            metrics.georef = Some(g);
        }
    }

    if let Some(lp) = gold_links_path {
        let gold = load_gold_links(lp)?;
        let clusters_path = ctx.upstream(files::MENTION_CLUSTERS, "link")?;
        let links_path = ctx.upstream(files::LINKS, "link")?;
        let clusters: Vec<MentionCluster> = read_jsonl(&clusters_path)?;
        let links: Vec<LinkResult> = read_jsonl(&links_path)?;
        let by_mention = links_by_mention(&clusters, &links)?;

        let cluster_of: HashMap<&str, &MentionCluster> =
            clusters.iter().flat_map(|c| c.members.iter().map(move |m| (m.as_str(), c))).collect();
        let mut ids = Vec::new();
        let mut pred_labels = Vec::new();
        let mut gold_labels = Vec::new();
        let mut annotations = Vec::new();
        for (m, g) in &gold {
            let Some(l) = by_mention.get(m.as_str()) else { continue };
            annotations.push(LinkAnnotation { predicted: l.qid.clone(), gold: g.clone() });
            if let (Some(q), Some(c)) = (g, cluster_of.get(m.as_str())) {
                ids.push(m.clone());
                pred_labels.push(c.cluster_id.clone());
                gold_labels.push(format!("{}/{q}", c.date));
            }
        }
        if !ids.is_empty() {
            let pred = Partition::from_labels(&ids, &pred_labels)?;
            let goldp = Partition::from_labels(&ids, &gold_labels)?;
            metrics.coref = Some(CorefEval { mentions: ids.len(), ari: adjusted_rand_index(&pred, &goldp)? });
        }
        if !annotations.is_empty() {
            metrics.link = Some(link_metrics(&annotations)?);
        }
        manifest
            .input(lp)
            .input(&clusters_path)
            .input(&links_path)
            .count("gold_links", gold.len())
            .count("link_cases", annotations.len());
    }

    let out = ctx.path(files::METRICS);
    write_json(&out, &metrics)?;
    manifest.output(&out).write(&ctx.out)?;
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
struct Newspaper<'a> {
    lccn: &'a str,
    newspaper_title: &'a str,
    newspaper_city: &'a str,
    newspaper_state: &'a str,
}

/// One line of `newswire.jsonl`, named after the published dataset's fields.
#[derive(Debug, Clone, Serialize)]
struct NewswireRecord<'a> {
    cluster_id: &'a str,
    article_id: &'a str,
    year: i32,
    dates: Vec<String>,
    article: &'a str,
    byline: &'a str,
    newspaper_metadata: Vec<Newspaper<'a>>,
    ca_topic: &'a str,
    wire_city: &'a str,
    wire_state: &'a str,
    wire_country: &'a str,
    wire_coordinates: Option<[f64; 2]>,
    wire_location_notes: &'a str,
    people_mentioned: &'a [PersonEntry],
    cluster_size: usize,
}

fn read_optional<T: serde::de::DeserializeOwned>(ctx: &Ctx, name: &str) -> CliResult<Option<(std::path::PathBuf, Vec<T>)>> {
    let p = ctx.path(name);
    if !p.exists() {
        return Ok(None);
    }
    let rows = read_jsonl(&p)?;
    Ok(Some((p, rows)))
}

/// Corpus tables and the per-cluster dataset file.
pub fn report(ctx: &Ctx) -> CliResult<()> {
    let (articles_path, articles) = ctx.ingested_articles()?;
    let (wire_inputs, wire) = wire_clusters(ctx)?;
    let dl_path = ctx.upstream(files::DATELINES, "georef")?;
    let datelines: Vec<DatelineRecord> = read_jsonl(&dl_path)?;
    let dateline_of: HashMap<&str, &DatelineRecord> = datelines.iter().map(|d| (d.cluster_id.as_str(), d)).collect();
    let labels: HashMap<String, String> = datelines.iter().map(|d| (d.cluster_id.clone(), d.location_label())).collect();

    let wire_view: Vec<WireCluster<'_>> = wire
        .iter()
        .map(|(d, c)| WireCluster {
            cluster_id: &c.cluster_id,
            member_ids: &c.member_ids,
            canonical_id: &d.canonical_id,
        })
        .collect();
    let report = corpus_report(&articles, &wire_view, &labels)?;
    report.write(&ctx.out)?;

    let mut manifest = ManifestBuilder::new("report", &ctx.hash);
    manifest.input(&articles_path).input(&dl_path);
    for p in &wire_inputs {
        manifest.input(p);
    }

    // People per canonical article, when the link stage has run.
    let mentions: Option<(_, Vec<PersonMention>)> = read_optional(ctx, files::MENTIONS)?;
    let mention_clusters: Option<(_, Vec<MentionCluster>)> = read_optional(ctx, files::MENTION_CLUSTERS)?;
    let links: Option<(_, Vec<LinkResult>)> = read_optional(ctx, files::LINKS)?;
    let kb: Option<(_, Vec<KbRecord>)> = read_optional(ctx, files::KB_PRUNED)?;
    let people = match (&mentions, &mention_clusters, &links, &kb) {
        (Some((p1, m)), Some((p2, c)), Some((p3, l)), Some((p4, k))) => {
            for p in [p1, p2, p3, p4] {
                manifest.input(p);
            }
            let kb_by_id: HashMap<&str, &KbRecord> = k.iter().map(|r| (r.qid.as_str(), r)).collect();
            people_by_article(m, c, l, &kb_by_id)
        }
        _ => {
            log::warn!("link outputs missing; people_mentioned left empty");
            HashMap::new()
        }
    };

    let by_id: HashMap<&str, &ArticleRecord> = articles.iter().map(|a| (a.article_id.as_str(), a)).collect();
    let empty = DatelineRecord::new("", &Default::default());
    let mut records = Vec::with_capacity(wire.len());
    for (d, c) in &wire {
        let canon = by_id
            .get(d.canonical_id.as_str())
            .ok_or_else(|| CliError::Input(format!("canonical article {} not ingested", d.canonical_id)))?;
        let members: Vec<&ArticleRecord> = c
            .member_ids
            .iter()
            .map(|id| by_id.get(id.as_str()).copied().ok_or_else(|| CliError::Input(format!("article {id} not ingested"))))
            .collect::<CliResult<_>>()?;
        let mut dates: Vec<_> = members.iter().map(|a| a.date).collect();
        dates.sort();
        dates.dedup();
        let dl = dateline_of.get(c.cluster_id.as_str()).copied().unwrap_or(&empty);
        records.push(NewswireRecord {
            cluster_id: &c.cluster_id,
            article_id: &canon.article_id,
            year: dates[0].year(),
            dates: dates.into_iter().map(format_date).collect(),
            article: &canon.text,
            byline: canon.byline_raw.as_deref().unwrap_or(""),
            newspaper_metadata: members
                .iter()
                .map(|a| match &a.newspaper {
                    Some(n) => Newspaper {
                        lccn: &a.newspaper_lccn,
                        newspaper_title: &n.title,
                        newspaper_city: &n.city,
                        newspaper_state: &n.state,
                    },
                    None => Newspaper { lccn: &a.newspaper_lccn, newspaper_title: "", newspaper_city: "", newspaper_state: "" },
                })
                .collect(),
            ca_topic: canon.topic.as_deref().unwrap_or(""),
            wire_city: &dl.wire_city,
            wire_state: &dl.wire_state,
            wire_country: &dl.wire_country,
            wire_coordinates: dl.wire_coordinates,
            wire_location_notes: &dl.wire_location_notes,
            people_mentioned: people.get(&canon.article_id).map(Vec::as_slice).unwrap_or(&[]),
            cluster_size: c.size,
        });
    }
    let newswire_path = ctx.path(files::NEWSWIRE);
    write_jsonl(&newswire_path, &records)?;

    for f in CorpusReport::FILES {
        manifest.output(&ctx.path(f));
    }
    let sum = |f: fn(&newswire::eval::YearCounts) -> usize| report.counts_by_year.iter().map(f).sum::<usize>();
    manifest
        .output(&newswire_path)
        .count("articles", articles.len())
        .count("wire_clusters", wire.len())
        .count("wire_reproductions", wire.iter().map(|(_, c)| c.size).sum())
        .count("report_total_articles", sum(|y| y.total_articles))
        .count("report_wire_reproductions", sum(|y| y.wire_reproductions))
        .count("report_unique_wire_articles", sum(|y| y.unique_wire_articles))
        .count("clusters_with_people", records.iter().filter(|r| !r.people_mentioned.is_empty()).count())
        .write(&ctx.out)?;
    Ok(())
}
