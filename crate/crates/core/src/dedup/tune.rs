use serde::{Deserialize, Serialize};

use crate::embed::{cosine, EmbeddingTable};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdFit {
    pub threshold: f32,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledPair {
    pub a: String,
    pub b: String,
    pub same_source: bool,
}

/// Picks the observed similarity that maximizes pairwise F1 of
/// `predict same iff sim >= t`. Ties go to the larger threshold.
pub fn best_f1_threshold(scored: &[(f32, bool)]) -> Result<ThresholdFit> {
    let positives = scored.iter().filter(|(_, y)| *y).count();
    if positives == 0 {
        return Err(Error::DegenerateLabels("no positive pairs"));
    }
    if positives == scored.len() {
        return Err(Error::DegenerateLabels("no negative pairs"));
    }
    let mut sorted: Vec<(f32, bool)> = scored.to_vec();
    sorted.sort_by(|a, b| b.0.total_cmp(&a.0));

    // Sweep thresholds from high to low; at each distinct value every pair with
    // sim >= value is predicted positive.
    let mut best: Option<ThresholdFit> = None;
    let (mut tp, mut fp) = (0usize, 0usize);
    let mut i = 0;
    while i < sorted.len() {
        let t = sorted[i].0;
        while i < sorted.len() && sorted[i].0 == t {
            if sorted[i].1 {
                tp += 1;
            } else {
                fp += 1;
            }
            i += 1;
        }
        let precision = tp as f64 / (tp + fp) as f64;
        let recall = tp as f64 / positives as f64;
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        if best.map_or(true, |b| f1 > b.f1) {
            best = Some(ThresholdFit {
                threshold: t,
                precision,
                recall,
                f1,
            });
        }
    }
    Ok(best.expect("non-empty input"))
}

/// Tunes the duplicate-similarity cut from hand-labeled article pairs.
pub fn tune_sim_threshold(pairs: &[LabeledPair], embeddings: &EmbeddingTable) -> Result<ThresholdFit> {
    let scored = pairs
        .iter()
        .map(|p| {
            let sim = cosine(embeddings.require(&p.a)?, embeddings.require(&p.b)?)?;
            Ok((sim, p.same_source))
        })
        .collect::<Result<Vec<_>>>()?;
    best_f1_threshold(&scored)
}
