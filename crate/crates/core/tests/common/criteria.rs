//! Acceptance checks shared by the core test suites and the acceptance
//! target. Each returns `Ok(summary)` or `Err(first failure)`.

use std::collections::{HashMap, HashSet};
use std::path::Path;

use chrono::NaiveDate;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use newswire::corpus::{ArticleRecord, ClusterRecord, Partition};
use newswire::dedup::{cluster_articles, single_linkage, DedupConfig, Method};
use newswire::embed::{normalize, EmbeddingTable};
use newswire::entitylink::{average_linkage, link, prune_kb, tune_nomatch_threshold, FlatIndex, LinkConfig};
use newswire::eval::{adjusted_rand_index, pairwise_prf};
use newswire::georef::{georef_cluster, ApCityTable, DatelineResult, GeorefConfig, GeorefContext, LocationNotePatterns};
use newswire::ingest::{load_gazetteer, load_kb, load_regions, RankTable};
use newswire::wirefilter::{filter_clusters, select_canonical, FilterConfig, FilterInputs, Verdict};

use super::oracles;

pub type Check = Result<String, String>;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn unit(v: Vec<f32>) -> Vec<f32> {
    let mut v = v;
    normalize(&mut v);
    v
}

fn random_unit(r: &mut ChaCha8Rng, dim: usize) -> Vec<f32> {
    unit((0..dim).map(|_| r.gen_range(-1.0f32..1.0)).collect())
}

/// `n` unit vectors scattered around up to four random centers.
pub fn clustered_vectors(r: &mut ChaCha8Rng, n: usize, dim: usize, spread: f32) -> Vec<Vec<f32>> {
    let k = r.gen_range(1..=4usize);
    let centers: Vec<Vec<f32>> = (0..k).map(|_| random_unit(r, dim)).collect();
    (0..n)
        .map(|_| {
            let c = &centers[r.gen_range(0..k)];
            unit(c.iter().map(|x| x + spread * r.gen_range(-1.0f32..1.0)).collect())
        })
        .collect()
}

pub fn article(id: &str, lccn: &str, date: NaiveDate, text: &str) -> ArticleRecord {
    ArticleRecord {
        article_id: id.to_string(),
        newspaper_lccn: lccn.to_string(),
        newspaper: None,
        date,
        text: text.to_string(),
        byline_raw: None,
        ner_words: None,
        ner_labels: None,
        topic: None,
    }
}

fn day0() -> NaiveDate {
    NaiveDate::from_ymd_opt(1900, 3, 1).unwrap()
}

fn named_groups(ids: &[String], groups: &[Vec<usize>]) -> Vec<Vec<String>> {
    Partition::from_groups(groups.iter().map(|g| g.iter().map(|&i| ids[i].clone()).collect()).collect())
        .unwrap()
        .canonical()
}

fn dot64(a: &[f32], b: &[f32]) -> f64 {
    a.iter().zip(b).map(|(x, y)| *x as f64 * *y as f64).sum()
}

/// Single linkage, both through the union-find entry point and through the
/// date-blocked dense dedup path, against transitive closure.
pub fn single_linkage_oracle(instances: usize) -> Check {
    let mut r = rng(0x51);
    for case in 0..instances {
        let n = r.gen_range(1..=12usize);
        let ids: Vec<String> = (0..n).map(|i| format!("a{i:02}")).collect();

        let edges: Vec<(usize, usize)> = (0..r.gen_range(0..=2 * n))
            .map(|_| (r.gen_range(0..n), r.gen_range(0..n)))
            .collect();
        let got = single_linkage(&ids, edges.iter().map(|&(a, b)| (ids[a].as_str(), ids[b].as_str())))
            .map_err(|e| format!("instance {case}: {e}"))?;
        let want = named_groups(&ids, &oracles::groups_from_labels(&oracles::closure_labels(n, &edges)));
        if got.canonical() != want {
            return Err(format!("instance {case}: union-find {:?} != closure {want:?}", got.canonical()));
        }

        let spread = r.gen_range(0.05..0.8);
        let vectors = clustered_vectors(&mut r, n, 6, spread);
        let days: Vec<i64> = (0..n).map(|_| r.gen_range(0..6)).collect();
        let window = r.gen_range(1..=3u32);
        let sims: Vec<f64> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| dot64(&vectors[i], &vectors[j]))
            .collect();
        let threshold = loop {
            let t = r.gen_range(0.3f64..0.98);
            if sims.iter().all(|s| (s - t).abs() > 1e-4) {
                break t;
            }
        };
        let articles: Vec<ArticleRecord> = (0..n)
            .map(|i| article(&ids[i], &format!("sn{i}"), day0() + chrono::Duration::days(days[i]), "text"))
            .collect();
        let mut table = EmbeddingTable::new(6, true);
        for (id, v) in ids.iter().zip(&vectors) {
            table.insert(id.clone(), v).unwrap();
        }
        let config = DedupConfig {
            sim_threshold: threshold as f32,
            block_window_days: window,
            method: Method::All,
            ..Default::default()
        };
        let outcome = cluster_articles(&articles, &config, Some(&table)).map_err(|e| format!("instance {case}: {e}"))?;
        let linked: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| {
                (days[i] - days[j]).abs() <= window as i64 && dot64(&vectors[i], &vectors[j]) >= threshold as f32 as f64
            })
            .collect();
        let labels = oracles::closure_labels(n, &linked);
        let want = named_groups(&ids, &oracles::groups_from_labels(&labels));
        if outcome.partition.canonical() != want {
            return Err(format!(
                "instance {case}: dedup {:?} != closure {want:?} (t={threshold}, w={window})",
                outcome.partition.canonical()
            ));
        }
        let oracle_partition = Partition::from_groups(want).unwrap();
        let a = adjusted_rand_index(&outcome.partition, &oracle_partition).map_err(|e| e.to_string())?;
        if a != 1.0 {
            return Err(format!("instance {case}: ARI {a}"));
        }
    }
    Ok(format!("{instances} instances, partitions identical (ARI 1.0)"))
}

/// Average-linkage clustering against the recompute-everything reference.
pub fn hac_oracle(instances: usize, threshold: f64) -> Check {
    let mut r = rng(0x4ac);
    let mut resampled = 0;
    let mut merges = 0;
    let mut done = 0;
    while done < instances {
        let n = r.gen_range(1..=12usize);
        let spread = r.gen_range(0.05..0.5);
        let vectors = clustered_vectors(&mut r, n, 8, spread);
        let trace = oracles::naive_average_linkage(&vectors, threshold);
        // Near-ties make the merge order depend on rounding, not on the rule.
        if trace.margin < 1e-9 {
            resampled += 1;
            continue;
        }
        let refs: Vec<&[f32]> = vectors.iter().map(Vec::as_slice).collect();
        let got = average_linkage(&refs, threshold).map_err(|e| e.to_string())?;
        if got != trace.groups {
            return Err(format!("instance {done}: got {got:?}, reference {:?}", trace.groups));
        }
        merges += n - got.len();
        done += 1;
    }
    Ok(format!("{instances} instances, {merges} merges, identical partitions ({resampled} near-tie draws redrawn)"))
}

/// ARI, precision, recall and F1 against pair enumeration.
pub fn ari_prf_oracle(pairs: usize, tol: f64) -> Check {
    let mut r = rng(0xa41);
    let mut worst = 0f64;
    for case in 0..pairs {
        let n = r.gen_range(0..=10usize);
        let kp = r.gen_range(1..=n.max(1));
        let kg = r.gen_range(1..=n.max(1));
        let pred: Vec<usize> = (0..n).map(|_| r.gen_range(0..kp)).collect();
        let gold: Vec<usize> = (0..n).map(|_| r.gen_range(0..kg)).collect();
        let ids: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let mut shuffled = ids.clone();
        shuffled.shuffle(&mut r);
        let p = Partition::from_labels(&ids, &pred).unwrap();
        let order: HashMap<&String, usize> = ids.iter().enumerate().map(|(i, id)| (id, i)).collect();
        let g_labels: Vec<usize> = shuffled.iter().map(|id| gold[order[id]]).collect();
        let g = Partition::from_labels(&shuffled, &g_labels).unwrap();

        let got_ari = adjusted_rand_index(&p, &g).map_err(|e| e.to_string())?;
        let got = pairwise_prf(&p, &g).map_err(|e| e.to_string())?;
        let want_ari = oracles::ari(&pred, &gold);
        let (wp, wr, wf) = oracles::prf(&pred, &gold);
        for (what, x, y) in [
            ("ARI", got_ari, want_ari),
            ("precision", got.precision, wp),
            ("recall", got.recall, wr),
            ("F1", got.f1, wf),
        ] {
            let d = (x - y).abs();
            worst = worst.max(d);
            if !(d < tol) {
                return Err(format!("pair {case}: {what} {x} vs oracle {y} (pred {pred:?}, gold {gold:?})"));
            }
        }
    }
    Ok(format!("{pairs} partition pairs, max deviation {worst:.1e}"))
}

/// Flat index top-k against a full sort of every score.
pub fn retrieval_oracle(size: usize, queries: usize, k: usize) -> Check {
    let mut r = rng(0x1d);
    let dim = 64;
    let rows: Vec<(String, Vec<f32>)> = (0..size).map(|i| (format!("Q{i}"), random_unit(&mut r, dim))).collect();
    let mut index = FlatIndex::new(dim);
    for (id, v) in &rows {
        index.add(id.clone(), v).map_err(|e| e.to_string())?;
    }
    for q in 0..queries {
        let query = random_unit(&mut r, dim);
        let got: Vec<(String, f32)> = index
            .search(&query, k)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|n| (n.id, n.similarity))
            .collect();
        let want = oracles::brute_top_k(&rows, &query, k);
        if got != want {
            return Err(format!("query {q}: {got:?} != {want:?}"));
        }
    }
    Ok(format!("{size} vectors x {queries} queries, top-{k} identical"))
}

/// Band membership, winner choice and no-match monotonicity of `link`, then
/// `tune_nomatch_threshold` against an exhaustive scan.
pub fn link_properties(sets: usize) -> Check {
    let mut r = rng(0x11e);
    let dim = 8;
    let mut linked_cases = 0;
    let mut wide_bands = 0;
    for case in 0..sets {
        let m = r.gen_range(0..=30usize);
        let center = random_unit(&mut r, dim);
        let spread = r.gen_range(0.01f32..0.3);
        let rows: Vec<(String, Vec<f32>)> = (0..m)
            .map(|i| {
                let v = unit(center.iter().map(|x| x + spread * r.gen_range(-1.0f32..1.0)).collect());
                (format!("Q{:03}", r.gen_range(0..1000) * 100 + i), v)
            })
            .collect();
        let mut index = FlatIndex::new(dim);
        for (id, v) in &rows {
            index.add(id.clone(), v).unwrap();
        }
        let mut ranked = Vec::new();
        for (id, _) in &rows {
            if r.gen_bool(0.7) {
                ranked.push((id.clone(), r.gen_range(0..4) as f64));
            }
        }
        let ranks = RankTable::from_pairs(ranked);
        let query = unit(center.iter().map(|x| x + spread * r.gen_range(-1.0f32..1.0)).collect());
        let config = LinkConfig {
            nomatch_threshold: r.gen_range(0.5f32..1.0),
            top_k: r.gen_range(1..=10),
            ..Default::default()
        };
        let bw = config.band_width as f64;
        let res = link("c", &query, &index, &ranks, &config).map_err(|e| e.to_string())?;

        let top = oracles::brute_top_k(&rows, &query, config.top_k);
        let Some((_, best)) = top.first().cloned() else {
            if res.candidate.is_some() || res.qid.is_some() {
                return Err(format!("set {case}: empty index produced a candidate"));
            }
            continue;
        };
        let dist = |s: f32| 1.0 - s as f64;
        let band: Vec<&(String, f32)> = top.iter().filter(|(_, s)| dist(*s) - dist(best) <= bw + 1e-9).collect();
        let winner = band
            .iter()
            .max_by(|a, b| {
                ranks
                    .score(&a.0)
                    .total_cmp(&ranks.score(&b.0))
                    .then_with(|| a.1.total_cmp(&b.1))
                    .then_with(|| b.0.cmp(&a.0))
            })
            .unwrap();
        let got_band: Vec<&str> = res.band.iter().map(|b| b.qid.as_str()).collect();
        let want_band: Vec<&str> = band.iter().map(|b| b.0.as_str()).collect();
        if got_band != want_band {
            return Err(format!("set {case}: band {got_band:?} != {want_band:?}"));
        }
        if res.candidate.as_deref() != Some(winner.0.as_str()) {
            return Err(format!("set {case}: winner {:?} != {}", res.candidate, winner.0));
        }
        if dist(winner.1) - dist(best) > 0.01 + 1e-9 {
            return Err(format!("set {case}: winner {} beyond 0.01 of nearest", winner.0));
        }
        if res.best_similarity != Some(best) {
            return Err(format!("set {case}: nearest similarity {:?} != {best}", res.best_similarity));
        }
        wide_bands += (band.len() > 1) as usize;
        linked_cases += res.qid.is_some() as usize;

        let mut taus: Vec<f32> = (0..8).map(|_| r.gen_range(-1.0f32..1.0)).collect();
        taus.extend([best, f32::from_bits(best.to_bits() + 1), -1.0, 1.0]);
        taus.sort_by(f32::total_cmp);
        let mut was_linked = true;
        for tau in taus {
            let cfg = LinkConfig { nomatch_threshold: tau, ..config };
            let l = link("c", &query, &index, &ranks, &cfg).map_err(|e| e.to_string())?;
            if l.qid.is_some() && !was_linked {
                return Err(format!("set {case}: linked again at tau {tau} after a no-match"));
            }
            if l.qid.is_some() && l.qid != res.candidate {
                return Err(format!("set {case}: tau {tau} changed the winner"));
            }
            if l.qid.is_some() != (best >= tau) {
                return Err(format!("set {case}: tau {tau}, best {best}, linked {}", l.qid.is_some()));
            }
            was_linked = l.qid.is_some();
        }
    }

    for case in 0..sets {
        let n = r.gen_range(2..=60usize);
        let p_true = r.gen_range(0.1..0.9);
        let mut annotated: Vec<(f32, bool)> = (0..n)
            .map(|_| ((r.gen_range(0..=100) as f32) / 100.0, r.gen_bool(p_true)))
            .collect();
        annotated[0].1 = true;
        annotated[1].1 = false;
        annotated.shuffle(&mut r);
        let fit = tune_nomatch_threshold(&annotated).map_err(|e| format!("annotated set {case}: {e}"))?;
        let (tau, p, rec) = oracles::exhaustive_nomatch(&annotated);
        if fit.threshold.to_bits() != tau.to_bits() || fit.precision != p || fit.recall != rec {
            return Err(format!(
                "annotated set {case}: fit ({}, {}, {}) != scan ({tau}, {p}, {rec})",
                fit.threshold, fit.precision, fit.recall
            ));
        }
    }
    Ok(format!(
        "{sets} link cases ({wide_bands} with multi-entry bands, {linked_cases} linked), {sets} tuning sets match the scan"
    ))
}

#[derive(Deserialize)]
struct CanonicalFixture {
    dictionary: Vec<String>,
    cases: Vec<CanonicalCase>,
}

#[derive(Deserialize)]
struct CanonicalCase {
    name: String,
    members: Vec<(String, String)>,
    expected: String,
}

/// Permutation invariance on a six-member cluster, then the crafted clusters.
pub fn canonical_selection(fixtures: &Path, shuffles: usize) -> Check {
    let raw = std::fs::read_to_string(fixtures.join("canonical/crafted.json")).map_err(|e| e.to_string())?;
    let fixture: CanonicalFixture = serde_json::from_str(&raw).map_err(|e| e.to_string())?;
    let dictionary: HashSet<String> = fixture.dictionary.into_iter().collect();

    let six: Vec<(&str, &str)> = vec![
        ("k1", "the storm\nhit zz"),
        ("k2", "the storm hit"),
        ("k3", "the storm\nhit city"),
        ("k4", "rain fell\nwind rose"),
        ("k5", "the\nstorm\nhit"),
        ("k6", "xx yy\nthe storm"),
    ];
    let mut r = rng(0xca7);
    let mut members = six.clone();
    for s in 0..shuffles {
        members.shuffle(&mut r);
        let got = select_canonical(&members, &dictionary);
        if got != Some("k3") {
            return Err(format!("shuffle {s}: picked {got:?}, expected k3"));
        }
    }
    for case in &fixture.cases {
        let members: Vec<(&str, &str)> = case.members.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let got = select_canonical(&members, &dictionary);
        if got != Some(case.expected.as_str()) {
            return Err(format!("{}: picked {got:?}, expected {}", case.name, case.expected));
        }
    }
    Ok(format!("{shuffles} shuffles stable, {} crafted clusters match", fixture.cases.len()))
}

/// Pruning of the crafted KB against its hand-derived survivor list.
pub fn kb_pruning(fixtures: &Path) -> Check {
    let loaded = load_kb(&fixtures.join("kb/people.jsonl")).map_err(|e| e.to_string())?;
    if !loaded.rejections.is_empty() || loaded.items.len() != 20 {
        return Err(format!("fixture loaded {} records, {} rejections", loaded.items.len(), loaded.rejections.len()));
    }
    let want: Vec<String> = std::fs::read_to_string(fixtures.join("kb/survivors.txt"))
        .map_err(|e| e.to_string())?
        .lines()
        .map(str::to_string)
        .collect();
    let got: Vec<String> = prune_kb(loaded.items).into_iter().map(|r| r.qid).collect();
    if got != want {
        return Err(format!("survivors {got:?} != {want:?}"));
    }
    Ok(format!("20 records, {} survivors as derived", got.len()))
}

/// Planted clusters through the full filter: small, same-paper and
/// long-running clusters go, wire clusters stay.
pub fn filter_rules() -> Check {
    let mut articles: Vec<ArticleRecord> = Vec::new();
    let mut clusters: Vec<ClusterRecord> = Vec::new();
    let mut plant = |name: &str, lccns: &[&str], offsets: &[i64]| {
        let start = articles.len();
        for (k, (l, d)) in lccns.iter().zip(offsets).enumerate() {
            articles.push(article(
                &format!("{name}-{k}"),
                l,
                day0() + chrono::Duration::days(*d),
                "the storm hit the city",
            ));
        }
        let members: Vec<&ArticleRecord> = articles[start..].iter().collect();
        clusters.push(ClusterRecord::from_members(name, &members));
    };
    let distinct = |n: usize| -> Vec<String> { (0..n).map(|i| format!("sn{:04}", 100 + i)).collect() };

    for size in 1..=3 {
        let l = distinct(size);
        plant(&format!("small{size}"), &refs(&l), &vec![0; size]);
    }
    plant("dup-lccn", &["sn0100", "sn0101", "sn0102", " SN0100", "sn0104"], &[0, 0, 1, 1, 2]);
    let l = distinct(5);
    plant("span-wide", &refs(&l), &[0, 1, 2, 3, 4]);
    let l = distinct(4);
    plant("wire-span-edge", &refs(&l), &[0, 3, 1, 2]);
    let mut planted_wire = vec!["wire-span-edge".to_string()];
    for size in 4..=10 {
        let l = distinct(size);
        let offsets: Vec<i64> = (0..size as i64).map(|i| i % 3).collect();
        plant(&format!("wire{size}"), &refs(&l), &offsets);
        planted_wire.push(format!("wire{size}"));
    }

    let by_id: HashMap<&str, &ArticleRecord> = articles.iter().map(|a| (a.article_id.as_str(), a)).collect();
    let dictionary: HashSet<String> = ["the", "storm", "hit", "city"].iter().map(|s| s.to_string()).collect();
    let inputs = FilterInputs { articles: &by_id, weather: None, nonwire: None, dictionary: &dictionary };
    let (decisions, counts) = filter_clusters(&clusters, &inputs, &FilterConfig::default()).map_err(|e| e.to_string())?;
    let verdicts: HashMap<&str, (&Verdict, &Vec<String>)> =
        decisions.iter().map(|d| (d.cluster_id.as_str(), (&d.verdict, &d.reasons))).collect();

    for size in 1..=3 {
        if verdicts.contains_key(format!("small{size}").as_str()) {
            return Err(format!("cluster of size {size} survived the size floor"));
        }
    }
    if counts.too_small != 3 {
        return Err(format!("too_small = {}", counts.too_small));
    }
    match verdicts.get("dup-lccn") {
        Some((Verdict::Template, reasons)) if reasons.iter().any(|r| r == "same-paper") => {}
        other => return Err(format!("duplicate-lccn cluster kept: {other:?}")),
    }
    match verdicts.get("span-wide") {
        Some((Verdict::Template, reasons)) if reasons.iter().any(|r| r == "date-diversity") => {}
        other => return Err(format!("4-day cluster kept: {other:?}")),
    }
    for w in &planted_wire {
        match verdicts.get(w.as_str()) {
            Some((Verdict::Wire, _)) => {}
            other => return Err(format!("planted wire cluster {w} lost: {other:?}")),
        }
    }
    Ok(format!(
        "3 undersized dropped, same-paper and 4-day span dropped, {}/{} planted wire kept",
        planted_wire.len(),
        planted_wire.len()
    ))
}

fn refs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

#[derive(Deserialize)]
struct DeskArticle {
    #[serde(default)]
    text: Option<String>,
    #[serde(default)]
    byline: Option<String>,
    #[serde(default)]
    detected: Option<String>,
    #[serde(default = "one")]
    repeat: usize,
}

fn one() -> usize {
    1
}

#[derive(Deserialize)]
struct DeskCase {
    name: String,
    articles: Vec<DeskArticle>,
    expected: DatelineResult,
}

/// The constructed dateline cases; returns the number of exact matches in
/// the summary and fails on the first mismatch.
pub fn georef_desk(fixtures: &Path) -> Check {
    let g = fixtures.join("georef");
    let data = fixtures.join("../../data");
    let regions = load_regions(&g.join("countries.tsv"), &g.join("states.tsv")).map_err(|e| e.to_string())?;
    let gazetteer = load_gazetteer(&g.join("gazetteer.tsv"), &regions).map_err(|e| e.to_string())?;
    let ap = ApCityTable::load(&data.join("ap_cities.tsv")).map_err(|e| e.to_string())?;
    let notes = LocationNotePatterns::load(&data.join("location_notes.tsv")).map_err(|e| e.to_string())?;
    let raw = std::fs::read_to_string(g.join("desk_cases.json")).map_err(|e| e.to_string())?;
    let cases: Vec<DeskCase> = serde_json::from_str(&raw).map_err(|e| e.to_string())?;

    let mut failures = Vec::new();
    let mut washington = None;
    for (c, case) in cases.iter().enumerate() {
        let mut articles = Vec::new();
        let mut bylines = HashMap::new();
        for spec in &case.articles {
            for _ in 0..spec.repeat {
                let id = format!("c{c:02}-a{:03}", articles.len());
                let mut a = article(&id, &format!("sn{}", articles.len()), day0(), spec.text.as_deref().unwrap_or("Body text."));
                a.byline_raw = spec.byline.clone();
                if let Some(d) = &spec.detected {
                    bylines.insert(id.clone(), d.clone());
                }
                articles.push(a);
            }
        }
        let by_id: HashMap<&str, &ArticleRecord> = articles.iter().map(|a| (a.article_id.as_str(), a)).collect();
        let members: Vec<&ArticleRecord> = articles.iter().collect();
        let cluster = ClusterRecord::from_members(case.name.clone(), &members);
        let ctx = GeorefContext {
            gazetteer: &gazetteer,
            ap_table: &ap,
            notes: &notes,
            bylines: &bylines,
            config: GeorefConfig::default(),
        };
        let got = georef_cluster(&cluster, &by_id, &ctx).map_err(|e| format!("{}: {e}", case.name))?;
        if case.name == "washington_example_record" {
            washington = got.coordinates;
        }
        if got != case.expected {
            failures.push(format!("{}: got {got:?}, expected {:?}", case.name, case.expected));
        }
    }
    if washington != Some((38.89511, -77.03637)) {
        failures.push(format!("Washington example resolved to {washington:?}"));
    }
    if failures.is_empty() {
        Ok(format!("{}/{} exact, Washington -> (38.89511, -77.03637)", cases.len(), cases.len()))
    } else {
        Err(format!("{}/{} exact; {}", cases.len() - failures.len(), cases.len(), failures.join("; ")))
    }
}
