use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use chrono::Datelike;
use serde::{Deserialize, Serialize};

use crate::corpus::{ArticleRecord, EntityType};
use crate::entitylink::entity_counts;
use crate::error::{Error, Result};

/// Placeholder key for clusters with no dateline or topic.
pub const NONE_KEY: &str = "(none)";
/// Year label of the all-years rows.
pub const ALL_YEARS: &str = "all";

/// A wire cluster as the report sees it.
#[derive(Debug, Clone)]
pub struct WireCluster<'a> {
    pub cluster_id: &'a str,
    pub member_ids: &'a [String],
    pub canonical_id: &'a str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct YearCounts {
    pub year: i32,
    pub total_articles: usize,
    pub wire_reproductions: usize,
    pub unique_wire_articles: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShareRow {
    pub year: String,
    pub key: String,
    pub count: usize,
    pub share: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CorpusReport {
    pub counts_by_year: Vec<YearCounts>,
    /// Dateline locations weighted by reproductions.
    pub datelines: Vec<ShareRow>,
    /// Canonical-article topics, one count per wire cluster.
    pub topics: Vec<ShareRow>,
    /// Entity spans in canonical articles, by type.
    pub entity_types: Vec<ShareRow>,
}

fn share_rows(tallies: BTreeMap<i32, BTreeMap<String, usize>>) -> Vec<ShareRow> {
    let mut all: BTreeMap<String, usize> = BTreeMap::new();
    let mut out = Vec::new();
    let emit = |year: String, counts: &BTreeMap<String, usize>, out: &mut Vec<ShareRow>| {
        let total: usize = counts.values().sum();
        if total == 0 {
            return;
        }
        for (key, &count) in counts {
            out.push(ShareRow { year: year.clone(), key: key.clone(), count, share: count as f64 / total as f64 });
        }
    };
    for (year, counts) in &tallies {
        for (k, c) in counts {
            *all.entry(k.clone()).or_insert(0) += c;
        }
        emit(year.to_string(), counts, &mut out);
    }
    emit(ALL_YEARS.to_string(), &all, &mut out);
    out
}

/// Builds the report tables. A cluster's year is the year of its earliest
/// member; `datelines` maps cluster ids to location labels.
pub fn corpus_report(
    articles: &[ArticleRecord],
    wire: &[WireCluster<'_>],
    datelines: &HashMap<String, String>,
) -> Result<CorpusReport> {
    let by_id: HashMap<&str, &ArticleRecord> = articles.iter().map(|a| (a.article_id.as_str(), a)).collect();
    let article = |id: &str| {
        by_id
            .get(id)
            .copied()
            .ok_or_else(|| Error::Config(format!("report: unknown article id {id:?}")))
    };

    let mut years: BTreeMap<i32, YearCounts> = BTreeMap::new();
    for a in articles {
        let y = a.date.year();
        years
            .entry(y)
            .or_insert(YearCounts { year: y, total_articles: 0, wire_reproductions: 0, unique_wire_articles: 0 })
            .total_articles += 1;
    }

    let mut dateline_tally: BTreeMap<i32, BTreeMap<String, usize>> = BTreeMap::new();
    let mut topic_tally: BTreeMap<i32, BTreeMap<String, usize>> = BTreeMap::new();
    let mut entity_tally: BTreeMap<i32, BTreeMap<String, usize>> = BTreeMap::new();
    for c in wire {
        let members = c.member_ids.iter().map(|id| article(id)).collect::<Result<Vec<_>>>()?;
        let year = members
            .iter()
            .map(|a| a.date)
            .min()
            .ok_or_else(|| Error::InvalidPartition(format!("cluster {} is empty", c.cluster_id)))?
            .year();
        for a in &members {
            years.get_mut(&a.date.year()).expect("counted above").wire_reproductions += 1;
        }
        years.get_mut(&year).expect("member year").unique_wire_articles += 1;

        let place = datelines
            .get(c.cluster_id)
            .filter(|s| !s.is_empty())
            .cloned()
            .unwrap_or_else(|| NONE_KEY.to_string());
        *dateline_tally.entry(year).or_default().entry(place).or_insert(0) += members.len();

        let canonical = article(c.canonical_id)?;
        let topic = canonical
            .topic
            .clone()
            .filter(|t| !t.is_empty())
            .unwrap_or_else(|| NONE_KEY.to_string());
        *topic_tally.entry(year).or_default().entry(topic).or_insert(0) += 1;

        let counts = entity_counts(canonical);
        let row = entity_tally.entry(year).or_default();
        for (t, n) in EntityType::ALL.iter().zip(counts) {
            *row.entry(t.as_str().to_string()).or_insert(0) += n;
        }
    }

    Ok(CorpusReport {
        counts_by_year: years.into_values().collect(),
        datelines: share_rows(dateline_tally),
        topics: share_rows(topic_tally),
        entity_types: share_rows(entity_tally),
    })
}

fn write_csv<T: Serialize>(path: &Path, rows: &[T], header: &[&str]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_path(path)
        .map_err(|e| Error::csv(path, e))?;
    w.write_record(header).map_err(|e| Error::csv(path, e))?;
    for r in rows {
        w.serialize(r).map_err(|e| Error::csv(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

impl CorpusReport {
    /// File names written by [`CorpusReport::write`].
    pub const FILES: [&'static str; 4] = [
        "counts_by_year.csv",
        "datelines.csv",
        "topic_shares.csv",
        "entity_type_shares.csv",
    ];

    pub fn write(&self, dir: &Path) -> Result<()> {
        write_csv(
            &dir.join(Self::FILES[0]),
            &self.counts_by_year,
            &["year", "total_articles", "wire_reproductions", "unique_wire_articles"],
        )?;
        write_csv(&dir.join(Self::FILES[1]), &self.datelines, &["year", "location", "reproductions", "share"])?;
        write_csv(&dir.join(Self::FILES[2]), &self.topics, &["year", "topic", "clusters", "share"])?;
        write_csv(&dir.join(Self::FILES[3]), &self.entity_types, &["year", "entity_type", "mentions", "share"])?;
        Ok(())
    }
}
