use std::collections::HashSet;

use crate::corpus::normalize_tokens;
use crate::ingest::KbRecord;

/// People born in or after this year are dropped.
pub const BIRTH_YEAR_CUTOFF: i32 = 1970;

/// Label/title pairs further apart than this (and sharing no token) are dropped.
pub const MAX_TITLE_DISTANCE: f64 = 0.5;

/// Normalized Levenshtein distance on lowercased strings, in [0, 1].
pub fn title_distance(label: &str, title: &str) -> f64 {
    1.0 - strsim::normalized_levenshtein(&label.to_lowercase(), &title.to_lowercase())
}

fn shares_token(label: &str, title: &str) -> bool {
    let a: HashSet<String> = normalize_tokens(label).into_iter().collect();
    normalize_tokens(title).iter().any(|t| a.contains(t))
}

/// Whether a KB record survives pruning: it has a birth or death year, was
/// not born after the cutoff, and its label plausibly names its Wikipedia
/// page. Records without a page title skip the last test.
pub fn keep_kb_record(r: &KbRecord) -> bool {
    let dated = r.birth_year.is_some() || r.death_year.is_some();
    let old_enough = r.birth_year.is_none_or(|y| y < BIRTH_YEAR_CUTOFF);
    let title = r.wikipedia_title.trim();
    let mismatched = !title.is_empty()
        && !shares_token(&r.label, title)
        && title_distance(&r.label, title) > MAX_TITLE_DISTANCE;
    dated && old_enough && !mismatched
}

pub fn prune_kb(records: Vec<KbRecord>) -> Vec<KbRecord> {
    records.into_iter().filter(keep_kb_record).collect()
}
