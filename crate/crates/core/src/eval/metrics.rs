use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::corpus::{symmetric_difference, Partition};
use crate::error::{Error, Result};

fn pairs(n: usize) -> f64 {
    (n as f64) * (n.saturating_sub(1) as f64) / 2.0
}

fn check_universes(pred: &Partition, gold: &Partition) -> Result<()> {
    let left: HashSet<&str> = pred.ids().map(String::as_str).collect();
    let diff = symmetric_difference(&left, gold.ids().map(String::as_str));
    if diff.is_empty() {
        Ok(())
    } else {
        Err(Error::UniverseMismatch(diff))
    }
}

/// Pair counts shared by ARI and pairwise scores: (same in both, same in
/// pred, same in gold, total pairs).
fn pair_counts(pred: &Partition, gold: &Partition) -> Result<(f64, f64, f64, f64)> {
    check_universes(pred, gold)?;
    let mut cells: HashMap<(usize, usize), usize> = HashMap::new();
    for id in pred.ids() {
        let g = gold.group_of(id).expect("universes checked");
        let p = pred.group_of(id).expect("own id");
        *cells.entry((p, g)).or_insert(0) += 1;
    }
    let both = cells.values().map(|&c| pairs(c)).sum();
    let in_pred = pred.groups().iter().map(|g| pairs(g.len())).sum();
    let in_gold = gold.groups().iter().map(|g| pairs(g.len())).sum();
    Ok((both, in_pred, in_gold, pairs(pred.num_ids())))
}

/// Adjusted Rand index. Two partitions that are both all-singletons or
/// both a single group score 1.
pub fn adjusted_rand_index(pred: &Partition, gold: &Partition) -> Result<f64> {
    let (index, a, b, total) = pair_counts(pred, gold)?;
    if total == 0.0 {
        return Ok(1.0);
    }
    let expected = a * b / total;
    let max = (a + b) / 2.0;
    if max == expected {
        return Ok(1.0);
    }
    Ok((index - expected) / (max - expected))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairwiseScores {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub true_pairs: u64,
    pub predicted_pairs: u64,
    pub gold_pairs: u64,
}

/// Precision, recall and F1 over unordered same-group pairs. With no
/// predicted (gold) pairs, precision (recall) is 1.
pub fn pairwise_prf(pred: &Partition, gold: &Partition) -> Result<PairwiseScores> {
    let (tp, p, g, _) = pair_counts(pred, gold)?;
    let precision = if p == 0.0 { 1.0 } else { tp / p };
    let recall = if g == 0.0 { 1.0 } else { tp / g };
    let f1 = if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    Ok(PairwiseScores {
        precision,
        recall,
        f1,
        true_pairs: tp as u64,
        predicted_pairs: p as u64,
        gold_pairs: g as u64,
    })
}

/// A link decision next to its gold answer; `None` means no-match.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkAnnotation {
    pub predicted: Option<String>,
    pub gold: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkMetrics {
    pub overall_accuracy: f64,
    /// `None` when no links were made.
    pub precision_when_linked: Option<f64>,
    /// `None` when no case is gold-absent.
    pub nomatch_specificity: Option<f64>,
    pub cases: usize,
    pub links_made: usize,
    pub gold_absent: usize,
}

pub fn link_metrics(annotations: &[LinkAnnotation]) -> Result<LinkMetrics> {
    if annotations.is_empty() {
        return Err(Error::EmptyInput("link annotations"));
    }
    let correct = annotations.iter().filter(|a| a.predicted == a.gold).count();
    let linked: Vec<&LinkAnnotation> = annotations.iter().filter(|a| a.predicted.is_some()).collect();
    let absent: Vec<&LinkAnnotation> = annotations.iter().filter(|a| a.gold.is_none()).collect();
    let ratio = |num: usize, den: usize| (den > 0).then(|| num as f64 / den as f64);
    Ok(LinkMetrics {
        overall_accuracy: correct as f64 / annotations.len() as f64,
        precision_when_linked: ratio(linked.iter().filter(|a| a.predicted == a.gold).count(), linked.len()),
        nomatch_specificity: ratio(absent.iter().filter(|a| a.predicted.is_none()).count(), absent.len()),
        cases: annotations.len(),
        links_made: linked.len(),
        gold_absent: absent.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(groups: &[&[&str]]) -> Partition {
        Partition::from_groups(groups.iter().map(|g| g.iter().map(|s| s.to_string()).collect()).collect()).unwrap()
    }

    #[test]
    fn identical_and_null() {
        let a = part(&[&["a", "b"], &["c"], &["d"]]);
        assert_eq!(adjusted_rand_index(&a, &a).unwrap(), 1.0);
        let s = part(&[&["a"], &["b"], &["c"], &["d"]]);
        let one = part(&[&["a", "b", "c", "d"]]);
        assert_eq!(adjusted_rand_index(&s, &one).unwrap(), 0.0);
        let p = pairwise_prf(&a, &a).unwrap();
        assert_eq!((p.precision, p.recall, p.f1), (1.0, 1.0, 1.0));
        let p = pairwise_prf(&s, &a).unwrap();
        assert_eq!((p.precision, p.recall, p.f1), (1.0, 0.0, 0.0));
    }

    #[test]
    fn universe_mismatch_lists_difference() {
        let a = part(&[&["a", "b"]]);
        let b = part(&[&["a", "c"]]);
        match adjusted_rand_index(&a, &b) {
            Err(Error::UniverseMismatch(d)) => assert_eq!(d, vec!["b", "c"]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn link_metric_cases() {
        let ann = |p: Option<&str>, g: Option<&str>| LinkAnnotation {
            predicted: p.map(String::from),
            gold: g.map(String::from),
        };
        let m = link_metrics(&[ann(Some("Q1"), Some("Q1")), ann(Some("Q2"), Some("Q2"))]).unwrap();
        assert_eq!((m.overall_accuracy, m.precision_when_linked, m.nomatch_specificity), (1.0, Some(1.0), None));
        let m = link_metrics(&[ann(None, None), ann(None, None), ann(Some("Q1"), Some("Q1"))]).unwrap();
        assert_eq!(m.nomatch_specificity, Some(1.0));
        // 10 crafted cases: 4 correct links, 1 wrong link, 1 link where gold absent,
        // 2 correct no-matches, 2 missed links.
        let mut cases = vec![ann(Some("Q1"), Some("Q1")); 4];
        cases.push(ann(Some("Q2"), Some("Q3")));
        cases.push(ann(Some("Q4"), None));
        cases.extend(vec![ann(None, None); 2]);
        cases.extend(vec![ann(None, Some("Q5")); 2]);
        let m = link_metrics(&cases).unwrap();
        assert_eq!(m.overall_accuracy, 6.0 / 10.0);
        assert_eq!(m.precision_when_linked, Some(4.0 / 6.0));
        assert_eq!(m.nomatch_specificity, Some(2.0 / 3.0));
        assert!(link_metrics(&[]).is_err());
    }
}
