//! Person mentions, per-date coreference, KB pruning, retrieval and linking.
//!
//! Mentions are decoded from the NER tags, clustered per date by average
//! linkage, and each cluster's prototype (renormalized mean embedding) is
//! matched against an exact inner-product index of KB template embeddings.
//! Near-ties within `band_width` of the nearest neighbor are reranked by
//! popularity; the nearest similarity decides between a link and no-match.

mod coref;
mod index;
mod kb;
mod link;
mod mentions;

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::ingest::KbRecord;

pub use coref::{average_linkage, clusters_to_partition, coref_cluster, MentionCluster, COREF_THRESHOLD};
pub use index::{FlatIndex, Neighbor};
pub use kb::{keep_kb_record, prune_kb, title_distance, BIRTH_YEAR_CUTOFF, MAX_TITLE_DISTANCE};
pub use link::{link, tune_nomatch_threshold, BandEntry, LinkConfig, LinkReason, LinkResult, NomatchFit};
pub use mentions::{decode_bio, entity_counts, extract_person_mentions, ArticleMentions, EntitySpan, PersonMention};

/// One `people_mentioned` entry, with the dataset's field names.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PersonEntry {
    pub wikidata_id: String,
    pub person_name: String,
    pub person_gender: String,
    pub person_occupation: String,
}

impl PersonEntry {
    pub fn from_kb(r: &KbRecord) -> Self {
        Self {
            wikidata_id: r.qid.clone(),
            person_name: r.display_name().to_string(),
            person_gender: r.gender.clone().unwrap_or_default(),
            person_occupation: r.occupations.first().cloned().unwrap_or_default(),
        }
    }
}

/// Linked people per article: each mention inherits its cluster's link.
/// Entries are deduplicated and sorted by qid.
pub fn people_by_article(
    mentions: &[PersonMention],
    clusters: &[MentionCluster],
    links: &[LinkResult],
    kb: &HashMap<&str, &KbRecord>,
) -> HashMap<String, Vec<PersonEntry>> {
    let qid_of_cluster: HashMap<&str, &str> = links
        .iter()
        .filter_map(|l| l.qid.as_deref().map(|q| (l.cluster_id.as_str(), q)))
        .collect();
    let mut qid_of_mention: HashMap<&str, &str> = HashMap::new();
    for c in clusters {
        if let Some(q) = qid_of_cluster.get(c.cluster_id.as_str()) {
            for m in &c.members {
                qid_of_mention.insert(m, q);
            }
        }
    }
    let mut out: HashMap<String, BTreeSet<&str>> = HashMap::new();
    for m in mentions {
        if let Some(q) = qid_of_mention.get(m.mention_id.as_str()) {
            out.entry(m.article_id.clone()).or_default().insert(q);
        }
    }
    out.into_iter()
        .map(|(a, qs)| {
            let people = qs.into_iter().filter_map(|q| kb.get(q)).map(|r| PersonEntry::from_kb(r)).collect();
            (a, people)
        })
        .collect()
}
