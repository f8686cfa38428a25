use std::collections::BTreeMap;

use chrono::NaiveDate;

/// Articles compared together. Every block is anchored on one calendar day:
/// `anchors` carry that date and `tail` carries dates up to `window` days
/// later. Candidate pairs are anchor×anchor and anchor×tail, so each pair of
/// articles at most `window` days apart is compared in exactly one block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub anchor_date: NaiveDate,
    pub anchors: Vec<usize>,
    pub tail: Vec<usize>,
}

impl Block {
    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.anchors.iter().chain(&self.tail).copied()
    }

    pub fn len(&self) -> usize {
        self.anchors.len() + self.tail.len()
    }

    pub fn is_empty(&self) -> bool {
        self.anchors.is_empty()
    }

    pub fn is_anchor(&self, pos: usize) -> bool {
        pos < self.anchors.len()
    }

    /// Pairs `(a, b)` of article indices this block is responsible for.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.anchors.iter().enumerate().flat_map(move |(i, &a)| {
            self.anchors[i + 1..]
                .iter()
                .chain(&self.tail)
                .map(move |&b| (a, b))
        })
    }
}

/// Groups article indices into date-anchored blocks.
pub fn block_by_date(dates: &[NaiveDate], window_days: u32) -> Vec<Block> {
    let mut by_day: BTreeMap<NaiveDate, Vec<usize>> = BTreeMap::new();
    for (i, d) in dates.iter().enumerate() {
        by_day.entry(*d).or_default().push(i);
    }
    let days: Vec<(&NaiveDate, &Vec<usize>)> = by_day.iter().collect();
    let mut blocks = Vec::with_capacity(days.len());
    for (pos, (day, anchors)) in days.iter().enumerate() {
        let limit = **day + chrono::Duration::days(window_days as i64);
        let tail: Vec<usize> = days[pos + 1..]
            .iter()
            .take_while(|(d, _)| **d <= limit)
            .flat_map(|(_, ix)| ix.iter().copied())
            .collect();
        blocks.push(Block {
            anchor_date: **day,
            anchors: (*anchors).clone(),
            tail,
        });
    }
    blocks
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use std::collections::HashSet;

    fn day(n: i64) -> NaiveDate {
        NaiveDate::from_ymd_opt(1900, 1, 1).unwrap() + chrono::Duration::days(n)
    }

    fn co_blocked(blocks: &[Block]) -> HashSet<(usize, usize)> {
        let mut out = HashSet::new();
        for b in blocks {
            let m: Vec<usize> = b.members().collect();
            for (i, &x) in m.iter().enumerate() {
                for &y in &m[i + 1..] {
                    out.insert((x.min(y), x.max(y)));
                }
            }
        }
        out
    }

    #[test]
    fn adjacent_days_share_a_block() {
        assert!(co_blocked(&block_by_date(&[day(0), day(1)], 2)).contains(&(0, 1)));
        assert!(co_blocked(&block_by_date(&[day(0), day(3)], 2)).is_empty());
    }

    #[test]
    fn matches_brute_force_date_difference() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let dates: Vec<NaiveDate> = (0..1000).map(|_| day(rng.gen_range(0..30))).collect();
        let blocks = block_by_date(&dates, 2);
        let together = co_blocked(&blocks);
        let mut emitted = Vec::new();
        for b in &blocks {
            emitted.extend(b.pairs().map(|(x, y)| (x.min(y), x.max(y))));
        }
        let emitted_set: HashSet<_> = emitted.iter().copied().collect();
        assert_eq!(emitted.len(), emitted_set.len(), "a pair was emitted twice");
        for i in 0..dates.len() {
            for j in i + 1..dates.len() {
                let close = (dates[i] - dates[j]).num_days().abs() <= 2;
                assert_eq!(together.contains(&(i, j)), close);
                assert_eq!(emitted_set.contains(&(i, j)), close);
            }
        }
    }
}
