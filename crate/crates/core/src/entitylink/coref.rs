use std::collections::BTreeMap;

use chrono::NaiveDate;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::PersonMention;
use crate::corpus::{date_serde, Partition};
use crate::embed::{cosine, mean_direction, EmbeddingTable};
use crate::error::{Error, Result};

/// Default merge threshold on average cosine distance.
pub const COREF_THRESHOLD: f64 = 0.15;

/// Average-linkage agglomerative clustering on cosine distance. Merges the
/// closest pair of clusters while their average distance is at most
/// `threshold`. Ties go to the pair whose smallest members come first.
/// Returns groups of indexes into `vectors`, ordered by smallest member.
pub fn average_linkage(vectors: &[&[f32]], threshold: f64) -> Result<Vec<Vec<usize>>> {
    let n = vectors.len();
    let mut dist = vec![0f64; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let d = 1.0 - cosine(vectors[i], vectors[j])? as f64;
            dist[i * n + j] = d;
            dist[j * n + i] = d;
        }
    }

    let mut members: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    let mut active = vec![true; n];
    // Nearest active cluster with a larger index, per row.
    let row_best = |i: usize, dist: &[f64], active: &[bool]| -> Option<(f64, usize)> {
        let mut best: Option<(f64, usize)> = None;
        for j in i + 1..n {
            if active[j] && best.is_none_or(|(d, _)| dist[i * n + j] < d) {
                best = Some((dist[i * n + j], j));
            }
        }
        best
    };
    let mut best: Vec<Option<(f64, usize)>> = (0..n).map(|i| row_best(i, &dist, &active)).collect();

    loop {
        let mut pick: Option<(f64, usize, usize)> = None;
        for i in (0..n).filter(|&i| active[i]) {
            if let Some((d, j)) = best[i] {
                if pick.is_none_or(|(pd, _, _)| d < pd) {
                    pick = Some((d, i, j));
                }
            }
        }
        let Some((d, a, b)) = pick else { break };
        if d > threshold {
            break;
        }

        let (na, nb) = (members[a].len() as f64, members[b].len() as f64);
        for k in (0..n).filter(|&k| active[k] && k != a && k != b) {
            let merged = (na * dist[a * n + k] + nb * dist[b * n + k]) / (na + nb);
            dist[a * n + k] = merged;
            dist[k * n + a] = merged;
        }
        active[b] = false;
        let moved = std::mem::take(&mut members[b]);
        members[a].extend(moved);
        best[b] = None;

        for k in (0..n).filter(|&k| active[k]) {
            if k == a || best[k].is_some_and(|(_, j)| j == a || j == b) {
                best[k] = row_best(k, &dist, &active);
            } else if k < a && best[k].is_some_and(|(bd, bj)| dist[k * n + a] < bd || (dist[k * n + a] == bd && a < bj)) {
                best[k] = Some((dist[k * n + a], a));
            }
        }
    }

    let mut groups: Vec<Vec<usize>> = members
        .into_iter()
        .filter(|g| !g.is_empty())
        .map(|mut g| {
            g.sort_unstable();
            g
        })
        .collect();
    groups.sort_by_key(|g| g[0]);
    Ok(groups)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MentionCluster {
    pub cluster_id: String,
    #[serde(with = "date_serde")]
    pub date: NaiveDate,
    pub members: Vec<String>,
    #[serde(skip)]
    pub prototype: Vec<f32>,
}

/// Clusters mentions within each date; mentions on different dates never
/// share a cluster. Output is ordered by date, then smallest member id.
pub fn coref_cluster(
    mentions: &[PersonMention],
    embeddings: &EmbeddingTable,
    threshold: f64,
) -> Result<Vec<MentionCluster>> {
    let mut by_date: BTreeMap<NaiveDate, Vec<&PersonMention>> = BTreeMap::new();
    for m in mentions {
        by_date.entry(m.date).or_default().push(m);
    }
    let per_date: Vec<Result<Vec<MentionCluster>>> = by_date
        .into_par_iter()
        .map(|(date, mut ms)| {
            ms.sort_by(|a, b| a.mention_id.cmp(&b.mention_id));
            let vectors = ms
                .iter()
                .map(|m| embeddings.require(&m.mention_id))
                .collect::<Result<Vec<_>>>()?;
            let groups = average_linkage(&vectors, threshold)?;
            Ok(groups
                .into_iter()
                .enumerate()
                .map(|(k, g)| MentionCluster {
                    cluster_id: format!("{}/p{k:04}", date.format("%Y-%m-%d")),
                    date,
                    members: g.iter().map(|&i| ms[i].mention_id.clone()).collect(),
                    prototype: mean_direction(g.iter().map(|&i| vectors[i]), embeddings.dim()),
                })
                .collect())
        })
        .collect();
    let mut out = Vec::new();
    for r in per_date {
        out.extend(r?);
    }
    Ok(out)
}

/// Coreference clusters as a partition of mention ids.
pub fn clusters_to_partition(clusters: &[MentionCluster]) -> Result<Partition> {
    Partition::from_groups(clusters.iter().map(|c| c.members.clone()).collect())
}

pub(crate) fn check_threshold(threshold: f64) -> Result<()> {
    if !(0.0..=2.0).contains(&threshold) {
        return Err(Error::Config("coref threshold must lie in [0, 2]".into()));
    }
    Ok(())
}
