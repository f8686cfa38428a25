//! Slow, obviously-correct reference implementations.

use newswire::embed::cosine;

/// Connected components by Floyd-Warshall reachability; each node is
/// labeled with the smallest node it can reach.
pub fn closure_labels(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut reach = vec![vec![false; n]; n];
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in edges {
        reach[a][b] = true;
        reach[b][a] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if reach[i][k] && reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    (0..n).map(|i| (0..n).find(|&j| reach[i][j]).unwrap()).collect()
}

/// Groups of indexes sharing a label, each sorted, ordered by first member.
pub fn groups_from_labels(labels: &[usize]) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = std::collections::HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        let g = *slot.entry(*l).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(i);
    }
    groups
}

/// Outcome of the reference agglomeration; `margin` is the smallest gap seen
/// between the chosen merge distance and any competitor or the threshold.
pub struct HacTrace {
    pub groups: Vec<Vec<usize>>,
    pub margin: f64,
}

/// Average linkage done the long way: every step recomputes every
/// cluster-to-cluster mean from the base distances.
pub fn naive_average_linkage(vectors: &[Vec<f32>], threshold: f64) -> HacTrace {
    let n = vectors.len();
    let base = |i: usize, j: usize| 1.0 - cosine(&vectors[i], &vectors[j]).unwrap() as f64;
    let mut clusters: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    let mut margin = f64::INFINITY;
    loop {
        clusters.sort_by_key(|c| *c.iter().min().unwrap());
        let mut scored: Vec<(f64, usize, usize)> = Vec::new();
        for a in 0..clusters.len() {
            for b in a + 1..clusters.len() {
                let mut sum = 0.0;
                for &i in &clusters[a] {
                    for &j in &clusters[b] {
                        sum += base(i, j);
                    }
                }
                scored.push((sum / (clusters[a].len() * clusters[b].len()) as f64, a, b));
            }
        }
        if scored.is_empty() {
            break;
        }
        let best = scored
            .iter()
            .copied()
            .fold(None::<(f64, usize, usize)>, |acc, s| match acc {
                Some(p) if p.0 <= s.0 => Some(p),
                _ => Some(s),
            })
            .unwrap();
        for s in &scored {
            if (s.1, s.2) != (best.1, best.2) {
                margin = margin.min((s.0 - best.0).abs());
            }
        }
        margin = margin.min((best.0 - threshold).abs());
        if best.0 > threshold {
            break;
        }
        let moved = clusters.remove(best.2);
        clusters[best.1].extend(moved);
    }
    let mut groups: Vec<Vec<usize>> = clusters
        .into_iter()
        .map(|mut c| {
            c.sort_unstable();
            c
        })
        .collect();
    groups.sort_by_key(|g| g[0]);
    HacTrace { groups, margin }
}

/// Pair counts over all unordered pairs: (together in both, pred only,
/// gold only, apart in both).
pub fn pair_table(pred: &[usize], gold: &[usize]) -> (f64, f64, f64, f64) {
    let (mut a, mut b, mut c, mut d) = (0.0, 0.0, 0.0, 0.0);
    for i in 0..pred.len() {
        for j in i + 1..pred.len() {
            match (pred[i] == pred[j], gold[i] == gold[j]) {
                (true, true) => a += 1.0,
                (true, false) => b += 1.0,
                (false, true) => c += 1.0,
                (false, false) => d += 1.0,
            }
        }
    }
    (a, b, c, d)
}

/// Adjusted Rand index in its pair-count form; a zero denominator scores 1.
pub fn ari(pred: &[usize], gold: &[usize]) -> f64 {
    let (a, b, c, d) = pair_table(pred, gold);
    let den = (a + b) * (b + d) + (a + c) * (c + d);
    if den == 0.0 {
        1.0
    } else {
        2.0 * (a * d - b * c) / den
    }
}

/// (precision, recall, f1) over same-group pairs.
pub fn prf(pred: &[usize], gold: &[usize]) -> (f64, f64, f64) {
    let (a, b, c, _) = pair_table(pred, gold);
    let p = if a + b == 0.0 { 1.0 } else { a / (a + b) };
    let r = if a + c == 0.0 { 1.0 } else { a / (a + c) };
    let f = if p + r == 0.0 { 0.0 } else { 2.0 * p * r / (p + r) };
    (p, r, f)
}

/// Full scan: every score, sorted by descending score then id, cut at `k`.
pub fn brute_top_k(rows: &[(String, Vec<f32>)], query: &[f32], k: usize) -> Vec<(String, f32)> {
    let mut all: Vec<(String, f32)> = rows
        .iter()
        .map(|(id, v)| (id.clone(), newswire::embed::dot(v, query)))
        .collect();
    all.sort_by(|x, y| y.1.total_cmp(&x.1).then_with(|| x.0.cmp(&y.0)));
    all.truncate(k);
    all
}

/// Threshold maximizing precision of "similarity >= tau", scanning every
/// observed value; ties keep the smallest tau. Returns (tau, precision, recall).
pub fn exhaustive_nomatch(annotated: &[(f32, bool)]) -> (f32, f64, f64) {
    let positives = annotated.iter().filter(|a| a.1).count() as f64;
    let mut taus: Vec<f32> = annotated.iter().map(|a| a.0).collect();
    taus.sort_by(f32::total_cmp);
    taus.dedup();
    let mut best: Option<(f32, f64, f64)> = None;
    for &tau in &taus {
        let taken: Vec<&(f32, bool)> = annotated.iter().filter(|a| a.0 >= tau).collect();
        let tp = taken.iter().filter(|a| a.1).count() as f64;
        let p = tp / taken.len() as f64;
        if best.is_none_or(|b| p > b.1) {
            best = Some((tau, p, tp / positives));
        }
    }
    best.unwrap()
}
