//! Near-duplicate detection: date blocking, candidate pairs (dense embeddings
//! or MinHash LSH), and single-linkage clustering into article clusters.

mod blocking;
mod linkage;
pub mod lsh;
mod tune;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{ArticleRecord, ClusterRecord, Partition};
use crate::embed::{dot, normalize, EmbeddingTable};
use crate::error::{Error, Result};

pub use blocking::{block_by_date, Block};
pub use linkage::{components, single_linkage, UnionFind};
pub use lsh::{LshConfig, MinHasher};
pub use tune::{best_f1_threshold, tune_sim_threshold, LabeledPair, ThresholdFit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Every intra-block pair scored by embedding cosine.
    All,
    /// MinHash LSH over word shingles.
    Lsh,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Method::All),
            "lsh" => Ok(Method::Lsh),
            other => Err(Error::Config(format!("unknown dedup method {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DedupConfig {
    pub sim_threshold: f32,
    pub block_window_days: u32,
    pub method: Method,
    pub lsh: LshConfig,
}

impl Default for DedupConfig {
    fn default() -> Self {
        Self {
            sim_threshold: 0.92,
            block_window_days: 2,
            method: Method::All,
            lsh: LshConfig::default(),
        }
    }
}

impl DedupConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.sim_threshold > 0.0 && self.sim_threshold < 1.0) {
            return Err(Error::Config(format!(
                "dedup.sim_threshold must lie in (0, 1), got {}",
                self.sim_threshold
            )));
        }
        if self.block_window_days == 0 {
            return Err(Error::Config("dedup.block_window_days must be positive".into()));
        }
        self.lsh.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidatePair {
    pub a: usize,
    pub b: usize,
    pub similarity: f32,
}

/// Dense vectors aligned with the article slice, unit-normalized.
pub struct DenseVectors {
    dim: usize,
    data: Vec<f32>,
}

impl DenseVectors {
    pub fn gather(articles: &[ArticleRecord], table: &EmbeddingTable) -> Result<Self> {
        let dim = table.dim();
        let mut data = Vec::with_capacity(articles.len() * dim);
        for a in articles {
            let start = data.len();
            data.extend_from_slice(table.require(&a.article_id)?);
            normalize(&mut data[start..]);
        }
        Ok(Self { dim, data })
    }

    fn row(&self, i: usize) -> &[f32] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }
}

/// Pairs of articles in `block` whose embedding cosine reaches `threshold`.
pub fn dense_candidates(block: &Block, vectors: &DenseVectors, threshold: f32) -> Vec<CandidatePair> {
    block
        .pairs()
        .filter_map(|(a, b)| {
            let sim = dot(vectors.row(a), vectors.row(b));
            (sim >= threshold).then_some(CandidatePair {
                a: a.min(b),
                b: a.max(b),
                similarity: sim,
            })
        })
        .collect()
}

/// Pairs in `block` sharing an LSH bucket whose estimated Jaccard reaches the floor.
pub fn lsh_candidates(
    block: &Block,
    hasher: &MinHasher,
    signatures: &[Option<Vec<u64>>],
) -> Vec<CandidatePair> {
    let members: Vec<usize> = block.members().collect();
    let sigs: Vec<Option<&[u64]>> = members.iter().map(|&i| signatures[i].as_deref()).collect();
    let floor = hasher.config().jaccard_floor;
    lsh::bucket_pairs(hasher, &sigs, |x, _| block.is_anchor(x))
        .into_iter()
        .filter_map(|(x, y)| {
            let (a, b) = (members[x], members[y]);
            let est = lsh::estimated_jaccard(sigs[x]?, sigs[y]?);
            (est >= floor).then_some(CandidatePair {
                a: a.min(b),
                b: a.max(b),
                similarity: est as f32,
            })
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct DedupOutcome {
    pub partition: Partition,
    pub clusters: Vec<ClusterRecord>,
    pub blocks: usize,
    pub candidate_pairs: usize,
}

/// Clusters `articles` into reproduced-content groups.
///
/// Candidate generation runs in parallel per block; merges are applied in
/// block order afterwards, so the result does not depend on thread count.
pub fn cluster_articles(
    articles: &[ArticleRecord],
    config: &DedupConfig,
    embeddings: Option<&EmbeddingTable>,
) -> Result<DedupOutcome> {
    config.validate()?;
    let dates: Vec<_> = articles.iter().map(|a| a.date).collect();
    let blocks = block_by_date(&dates, config.block_window_days);

    let per_block: Vec<Vec<CandidatePair>> = match config.method {
        Method::All => {
            let table = embeddings
                .ok_or_else(|| Error::Config("dedup method `all` needs embeddings".into()))?;
            let vectors = DenseVectors::gather(articles, table)?;
            blocks
                .par_iter()
                .map(|b| dense_candidates(b, &vectors, config.sim_threshold))
                .collect()
        }
        Method::Lsh => {
            let hasher = MinHasher::new(config.lsh)?;
            let signatures: Vec<Option<Vec<u64>>> =
                articles.par_iter().map(|a| hasher.signature(&a.text)).collect();
            blocks
                .par_iter()
                .map(|b| lsh_candidates(b, &hasher, &signatures))
                .collect()
        }
    };

    let candidate_pairs = per_block.iter().map(Vec::len).sum();
    let labels = components(
        articles.len(),
        per_block.iter().flatten().map(|p| (p.a, p.b)),
    );
    let ids: Vec<String> = articles.iter().map(|a| a.article_id.clone()).collect();
    let partition = Partition::from_labels(&ids, &labels)?;
    partition.validate(&ids)?;

    let clusters = clusters_from_partition(articles, &partition);
    Ok(DedupOutcome {
        partition,
        clusters,
        blocks: blocks.len(),
        candidate_pairs,
    })
}

/// One [`ClusterRecord`] per group, ordered by smallest member id and numbered
/// `c000000`, `c000001`, ...
pub fn clusters_from_partition(articles: &[ArticleRecord], partition: &Partition) -> Vec<ClusterRecord> {
    let by_id: std::collections::HashMap<&str, &ArticleRecord> =
        articles.iter().map(|a| (a.article_id.as_str(), a)).collect();
    let mut groups: Vec<Vec<&ArticleRecord>> = partition
        .groups()
        .iter()
        .map(|g| g.iter().filter_map(|id| by_id.get(id.as_str()).copied()).collect())
        .collect();
    for g in &mut groups {
        g.sort_by(|a, b| a.article_id.cmp(&b.article_id));
    }
    groups.sort_by(|a, b| a[0].article_id.cmp(&b[0].article_id));
    groups
        .iter()
        .enumerate()
        .map(|(i, g)| ClusterRecord::from_members(format!("c{i:06}"), g))
        .collect()
}
