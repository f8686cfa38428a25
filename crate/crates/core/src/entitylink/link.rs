use serde::{Deserialize, Serialize};

use super::FlatIndex;
use crate::error::{Error, Result};
use crate::ingest::RankTable;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LinkConfig {
    /// Minimum nearest-neighbor similarity for a link.
    pub nomatch_threshold: f32,
    /// Neighbors within this cosine distance of the nearest are reranked by popularity.
    pub band_width: f32,
    pub top_k: usize,
    /// Average cosine distance up to which mentions are merged.
    pub coref_threshold: f64,
}

impl Default for LinkConfig {
    fn default() -> Self {
        Self {
            nomatch_threshold: 0.5,
            band_width: 0.01,
            top_k: 10,
            coref_threshold: super::COREF_THRESHOLD,
        }
    }
}

impl LinkConfig {
    pub fn validate(&self) -> Result<()> {
        if !(-1.0..=1.0).contains(&self.nomatch_threshold) {
            return Err(Error::Config("link.nomatch_threshold must lie in [-1, 1]".into()));
        }
        if !(0.0..=2.0).contains(&self.band_width) {
            return Err(Error::Config("link.band_width must lie in [0, 2]".into()));
        }
        if self.top_k == 0 {
            return Err(Error::Config("link.top_k must be positive".into()));
        }
        super::coref::check_threshold(self.coref_threshold)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LinkReason {
    Linked,
    BelowThreshold,
    EmptyIndex,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandEntry {
    pub qid: String,
    pub similarity: f32,
    pub rank_score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkResult {
    pub cluster_id: String,
    pub qid: Option<String>,
    /// Band winner before the no-match test.
    pub candidate: Option<String>,
    /// Nearest-neighbor similarity; absent for an empty index.
    pub best_similarity: Option<f32>,
    pub band: Vec<BandEntry>,
    pub reason: LinkReason,
}

/// Retrieves the nearest KB entries for a prototype, reranks the band of
/// near-ties by popularity, and links if the nearest similarity clears the
/// no-match threshold.
pub fn link(
    cluster_id: &str,
    prototype: &[f32],
    index: &FlatIndex,
    ranks: &RankTable,
    config: &LinkConfig,
) -> Result<LinkResult> {
    let neighbors = index.search(prototype, config.top_k)?;
    let Some(nearest) = neighbors.first() else {
        return Ok(LinkResult {
            cluster_id: cluster_id.to_string(),
            qid: None,
            candidate: None,
            best_similarity: None,
            band: Vec::new(),
            reason: LinkReason::EmptyIndex,
        });
    };
    let best = nearest.similarity;
    let d_best = 1.0 - best as f64;
    let band: Vec<BandEntry> = neighbors
        .iter()
        .filter(|n| (1.0 - n.similarity as f64) - d_best <= config.band_width as f64 + 1e-9)
        .map(|n| BandEntry {
            qid: n.id.clone(),
            similarity: n.similarity,
            rank_score: ranks.score(&n.id),
        })
        .collect();
    let winner = band
        .iter()
        .max_by(|a, b| {
            a.rank_score
                .total_cmp(&b.rank_score)
                .then_with(|| a.similarity.total_cmp(&b.similarity))
                .then_with(|| b.qid.cmp(&a.qid))
        })
        .expect("band holds the nearest neighbor");
    let linked = best >= config.nomatch_threshold;
    Ok(LinkResult {
        cluster_id: cluster_id.to_string(),
        qid: linked.then(|| winner.qid.clone()),
        candidate: Some(winner.qid.clone()),
        best_similarity: Some(best),
        reason: if linked { LinkReason::Linked } else { LinkReason::BelowThreshold },
        band,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NomatchFit {
    pub threshold: f32,
    pub precision: f64,
    pub recall: f64,
}

/// Picks, among observed similarities, the threshold maximizing the
/// precision of "link iff similarity >= threshold" on annotated outputs.
/// Ties go to the smallest threshold.
pub fn tune_nomatch_threshold(annotated: &[(f32, bool)]) -> Result<NomatchFit> {
    let positives = annotated.iter().filter(|(_, ok)| *ok).count();
    if positives == 0 || positives == annotated.len() {
        return Err(Error::DegenerateLabels("need both correct and incorrect links"));
    }
    let mut sorted: Vec<(f32, bool)> = annotated.to_vec();
    if sorted.iter().any(|(s, _)| !s.is_finite()) {
        return Err(Error::Config("non-finite similarity".into()));
    }
    sorted.sort_by(|a, b| b.0.total_cmp(&a.0));

    let mut best: Option<NomatchFit> = None;
    let (mut tp, mut taken) = (0usize, 0usize);
    let mut i = 0;
    while i < sorted.len() {
        let tau = sorted[i].0;
        while i < sorted.len() && sorted[i].0 == tau {
            taken += 1;
            tp += sorted[i].1 as usize;
            i += 1;
        }
        let fit = NomatchFit {
            threshold: tau,
            precision: tp as f64 / taken as f64,
            recall: tp as f64 / positives as f64,
        };
        // Scanning downward, so >= keeps the smallest tau among ties.
        if best.is_none_or(|b| fit.precision >= b.precision) {
            best = Some(fit);
        }
    }
    Ok(best.expect("non-empty"))
}
