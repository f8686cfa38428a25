//! Decides which reproduced clusters are newswire content and picks each
//! cluster's canonical text.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{count_paragraphs, normalize_meta, normalize_tokens, ArticleRecord, ClusterRecord};
use crate::error::{Error, Result};
use crate::ingest::ScoreFile;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FilterConfig {
    pub min_reproductions: usize,
    pub max_date_span_days: i64,
    pub weather_threshold: f64,
    pub nonwire_threshold: f64,
}

impl Default for FilterConfig {
    fn default() -> Self {
        Self {
            min_reproductions: 4,
            max_date_span_days: 3,
            weather_threshold: 0.5,
            nonwire_threshold: 0.5,
        }
    }
}

impl FilterConfig {
    pub fn validate(&self) -> Result<()> {
        if self.min_reproductions == 0 {
            return Err(Error::Config("filter.min_reproductions must be >= 1".into()));
        }
        if self.max_date_span_days < 0 {
            return Err(Error::Config("filter.max_date_span_days must be >= 0".into()));
        }
        for (name, t) in [
            ("weather_threshold", self.weather_threshold),
            ("nonwire_threshold", self.nonwire_threshold),
        ] {
            if !(0.0..=1.0).contains(&t) {
                return Err(Error::Config(format!("filter.{name} must lie in [0, 1]")));
            }
        }
        Ok(())
    }
}

/// Clusters with at least `min_reproductions` members, and the number dropped.
pub fn size_filter(clusters: &[ClusterRecord], min_reproductions: usize) -> (Vec<&ClusterRecord>, usize) {
    let kept: Vec<&ClusterRecord> = clusters
        .iter()
        .filter(|c| c.size >= min_reproductions)
        .collect();
    let dropped = clusters.len() - kept.len();
    (kept, dropped)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TemplateReason {
    SamePaper,
    DateDiversity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplateVerdict {
    pub wire_like: bool,
    pub reasons: Vec<TemplateReason>,
}

/// Local templates recur over many days or repeat within one newspaper.
pub fn template_rule(cluster: &ClusterRecord, max_date_span_days: i64) -> TemplateVerdict {
    let mut reasons = Vec::new();
    let distinct: HashSet<String> = cluster.lccns.iter().map(|l| normalize_meta(l)).collect();
    if distinct.len() < cluster.lccns.len() {
        reasons.push(TemplateReason::SamePaper);
    }
    if let (Some(min), Some(max)) = (cluster.dates.iter().min(), cluster.dates.iter().max()) {
        if (*max - *min).num_days() > max_date_span_days {
            reasons.push(TemplateReason::DateDiversity);
        }
    }
    TemplateVerdict {
        wire_like: reasons.is_empty(),
        reasons,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ContentClass {
    Wire,
    Weather,
    Nonwire,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateVerdict {
    pub class: ContentClass,
    pub unscored: bool,
}

/// Applies classifier scores: weather first, then non-wire. Missing scores
/// never fire and set the `unscored` flag.
pub fn score_gate(weather: Option<f64>, nonwire: Option<f64>, config: &FilterConfig) -> GateVerdict {
    let unscored = weather.is_none() || nonwire.is_none();
    let class = if weather.is_some_and(|s| s >= config.weather_threshold) {
        ContentClass::Weather
    } else if nonwire.is_some_and(|s| s >= config.nonwire_threshold) {
        ContentClass::Nonwire
    } else {
        ContentClass::Wire
    };
    GateVerdict { class, unscored }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NonWordRate {
    pub rate: f64,
    /// No tokens at all; the rate is pinned to 1.
    pub degenerate: bool,
}

pub fn non_word_rate(text: &str, dictionary: &HashSet<String>) -> NonWordRate {
    let tokens = normalize_tokens(text);
    if tokens.is_empty() {
        return NonWordRate {
            rate: 1.0,
            degenerate: true,
        };
    }
    let missing = tokens.iter().filter(|t| !dictionary.contains(*t)).count();
    NonWordRate {
        rate: missing as f64 / tokens.len() as f64,
        degenerate: false,
    }
}

/// Picks the copy to publish: among members whose paragraph count is modal
/// (all modal counts when several tie), the lowest non-word rate, then the
/// smallest article id.
pub fn select_canonical<'a>(members: &[(&'a str, &str)], dictionary: &HashSet<String>) -> Option<&'a str> {
    let scored: Vec<(&str, usize, f64)> = members
        .iter()
        .map(|(id, text)| (*id, count_paragraphs(text), non_word_rate(text, dictionary).rate))
        .collect();
    let mut freq: HashMap<usize, usize> = HashMap::new();
    for (_, n, _) in &scored {
        *freq.entry(*n).or_default() += 1;
    }
    let top = freq.values().copied().max()?;
    scored
        .into_iter()
        .filter(|(_, n, _)| freq[n] == top)
        .min_by(|a, b| a.2.total_cmp(&b.2).then_with(|| a.0.cmp(b.0)))
        .map(|(id, _, _)| id)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Wire,
    Template,
    Weather,
    Nonwire,
}

/// One line of `wire_clusters.jsonl`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WireDecision {
    pub cluster_id: String,
    pub size: usize,
    pub verdict: Verdict,
    pub reasons: Vec<String>,
    pub canonical_id: String,
    pub unscored: bool,
    pub weather_score: Option<f64>,
    pub nonwire_score: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterCounts {
    pub input_clusters: usize,
    pub too_small: usize,
    pub template: usize,
    pub weather: usize,
    pub nonwire: usize,
    pub wire: usize,
}

/// Cluster-level score: the cluster's own entry, else the mean over members
/// that have one.
pub fn cluster_score(scores: &ScoreFile, cluster: &ClusterRecord) -> Option<f64> {
    if let Some(s) = scores.get(&cluster.cluster_id) {
        return Some(s);
    }
    let member: Vec<f64> = cluster.member_ids.iter().filter_map(|id| scores.get(id)).collect();
    (!member.is_empty()).then(|| member.iter().sum::<f64>() / member.len() as f64)
}

pub struct FilterInputs<'a> {
    pub articles: &'a HashMap<&'a str, &'a ArticleRecord>,
    pub weather: Option<&'a ScoreFile>,
    pub nonwire: Option<&'a ScoreFile>,
    pub dictionary: &'a HashSet<String>,
}

/// Runs size floor, template rules and score gate over every cluster. Clusters
/// below the size floor are only counted; all others get a decision.
pub fn filter_clusters(
    clusters: &[ClusterRecord],
    inputs: &FilterInputs<'_>,
    config: &FilterConfig,
) -> Result<(Vec<WireDecision>, FilterCounts)> {
    config.validate()?;
    let (kept, too_small) = size_filter(clusters, config.min_reproductions);
    let decisions: Vec<WireDecision> = kept
        .par_iter()
        .map(|c| decide(c, inputs, config))
        .collect::<Result<_>>()?;
    let mut counts = FilterCounts {
        input_clusters: clusters.len(),
        too_small,
        ..Default::default()
    };
    for d in &decisions {
        match d.verdict {
            Verdict::Wire => counts.wire += 1,
            Verdict::Template => counts.template += 1,
            Verdict::Weather => counts.weather += 1,
            Verdict::Nonwire => counts.nonwire += 1,
        }
    }
    Ok((decisions, counts))
}

fn decide(cluster: &ClusterRecord, inputs: &FilterInputs<'_>, config: &FilterConfig) -> Result<WireDecision> {
    let members: Vec<(&str, &str)> = cluster
        .member_ids
        .iter()
        .map(|id| {
            inputs
                .articles
                .get(id.as_str())
                .map(|a| (a.article_id.as_str(), a.text.as_str()))
                .ok_or_else(|| Error::Config(format!("cluster {} references unknown article {id}", cluster.cluster_id)))
        })
        .collect::<Result<_>>()?;
    let canonical_id = select_canonical(&members, inputs.dictionary)
        .expect("clusters are non-empty")
        .to_string();

    let template = template_rule(cluster, config.max_date_span_days);
    let weather_score = inputs.weather.and_then(|s| cluster_score(s, cluster));
    let nonwire_score = inputs.nonwire.and_then(|s| cluster_score(s, cluster));
    let gate = score_gate(weather_score, nonwire_score, config);

    let mut reasons: Vec<String> = template
        .reasons
        .iter()
        .map(|r| match r {
            TemplateReason::SamePaper => "same-paper".to_string(),
            TemplateReason::DateDiversity => "date-diversity".to_string(),
        })
        .collect();
    let verdict = if !template.wire_like {
        Verdict::Template
    } else {
        match gate.class {
            ContentClass::Wire => Verdict::Wire,
            ContentClass::Weather => {
                reasons.push("weather-classifier".into());
                Verdict::Weather
            }
            ContentClass::Nonwire => {
                reasons.push("nonwire-classifier".into());
                Verdict::Nonwire
            }
        }
    };
    Ok(WireDecision {
        cluster_id: cluster.cluster_id.clone(),
        size: cluster.size,
        verdict,
        reasons,
        canonical_id,
        unscored: gate.unscored,
        weather_score,
        nonwire_score,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::NaiveDate;

    fn cluster(days: &[u32], lccns: &[&str]) -> ClusterRecord {
        ClusterRecord {
            cluster_id: "c".into(),
            member_ids: (0..days.len()).map(|i| format!("a{i}")).collect(),
            dates: days
                .iter()
                .map(|d| NaiveDate::from_ymd_opt(1900, 1, *d).unwrap())
                .collect(),
            lccns: lccns.iter().map(|s| s.to_string()).collect(),
            size: days.len(),
        }
    }

    fn dict(words: &[&str]) -> HashSet<String> {
        words.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn size_floor_boundary() {
        let four = cluster(&[1, 1, 1, 1], &["a", "b", "c", "d"]);
        let three = cluster(&[1, 1, 1], &["a", "b", "c"]);
        let input = vec![four.clone(), three];
        let (kept, dropped) = size_filter(&input, 4);
        assert_eq!(kept, vec![&four]);
        assert_eq!(dropped, 1);
        assert!(size_filter(&[], 4).0.is_empty());
    }

    #[test]
    fn template_rules() {
        let wire = template_rule(&cluster(&[1, 2, 2], &["a", "b", "c"]), 3);
        assert!(wire.wire_like);
        let same = template_rule(&cluster(&[1, 1, 1], &["a", " A ", "c"]), 3);
        assert_eq!(same.reasons, vec![TemplateReason::SamePaper]);
        let span = template_rule(&cluster(&[1, 31], &["a", "b"]), 3);
        assert_eq!(span.reasons, vec![TemplateReason::DateDiversity]);
        assert!(template_rule(&cluster(&[1, 4], &["a", "b"]), 3).wire_like);
    }

    #[test]
    fn gate_order_and_fallback() {
        let cfg = FilterConfig::default();
        assert_eq!(score_gate(Some(0.99), Some(0.9), &cfg).class, ContentClass::Weather);
        assert_eq!(score_gate(Some(0.1), Some(0.9), &cfg).class, ContentClass::Nonwire);
        let both_zero = score_gate(Some(0.0), Some(0.0), &cfg);
        assert_eq!(both_zero.class, ContentClass::Wire);
        assert!(!both_zero.unscored);
        let none = score_gate(None, None, &cfg);
        assert_eq!(none.class, ContentClass::Wire);
        assert!(none.unscored);
    }

    #[test]
    fn non_word_rate_examples() {
        let d = dict(&["the", "cat", "sat"]);
        assert!((non_word_rate("teh cat sat", &d).rate - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(non_word_rate("The cat sat.", &d).rate, 0.0);
        let empty = non_word_rate("12 -- 34", &d);
        assert!(empty.degenerate);
        assert_eq!(empty.rate, 1.0);
    }

    #[test]
    fn canonical_prefers_modal_paragraph_count_then_rate() {
        let d = dict(&["a", "b", "c", "d", "e", "f", "g", "h", "i", "j"]);
        // counts {3, 3, 5}; rates {0.5, 0.25, 0.0}
        let m = [
            ("m1", "a\nzz\nb c"),
            ("m2", "a b c\nzz\nd"),
            ("m3", "a\nb\nc\nd\ne"),
        ];
        assert_eq!(select_canonical(&m, &d), Some("m2"));
        assert_eq!(select_canonical(&m[..1], &d), Some("m1"));
    }

    #[test]
    fn canonical_bimodal_uses_union_of_modes() {
        let d = dict(&["a", "b", "c", "d", "e", "f", "g", "h", "i", "j"]);
        // counts {2, 2, 3, 3}; rates {.2, .1, .3, .05} via 20-token texts
        let text = |paras: usize, bad: usize| -> String {
            let mut toks: Vec<&str> = vec!["a"; 20 - bad];
            toks.extend(std::iter::repeat("zz").take(bad));
            toks.chunks(20usize.div_ceil(paras)).map(|c| c.join(" ")).collect::<Vec<_>>().join("\n")
        };
        let texts = [text(2, 4), text(2, 2), text(3, 6), text(3, 1)];
        let m: Vec<(&str, &str)> = ["m1", "m2", "m3", "m4"].into_iter().zip(texts.iter().map(String::as_str)).collect();
        let rates: Vec<f64> = texts.iter().map(|t| non_word_rate(t, &d).rate).collect();
        assert_eq!(rates, vec![0.2, 0.1, 0.3, 0.05]);
        assert_eq!(select_canonical(&m, &d), Some("m4"));
    }

    #[test]
    fn canonical_ties_break_on_id() {
        let d = dict(&["a"]);
        assert_eq!(select_canonical(&[("z", "a"), ("b", "a"), ("k", "a")], &d), Some("b"));
    }

    proptest::proptest! {
        #[test]
        fn same_paper_fires_iff_lccns_repeat(lccns in proptest::collection::vec(0u8..5, 1..8)) {
            let names: Vec<String> = lccns.iter().map(|l| format!("sn{l}")).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let c = cluster(&vec![1; refs.len()], &refs);
            let distinct: HashSet<&u8> = lccns.iter().collect();
            let v = template_rule(&c, 3);
            proptest::prop_assert_eq!(v.reasons.contains(&TemplateReason::SamePaper), distinct.len() < lccns.len());
        }
    }
}
