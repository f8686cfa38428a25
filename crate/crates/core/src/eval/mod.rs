//! Clustering and linking metrics, and corpus statistics tables.

mod metrics;
mod report;

pub use metrics::{adjusted_rand_index, link_metrics, pairwise_prf, LinkAnnotation, LinkMetrics, PairwiseScores};
pub use report::{corpus_report, CorpusReport, ShareRow, WireCluster, YearCounts, ALL_YEARS, NONE_KEY};
