//! Deterministic synthetic corpus with known duplicate, dateline and entity
//! structure, plus every side file the pipeline reads.
//!
//! Wire sources are reproduced by 1 to `max_copies` papers within two days
//! of the source date. Each copy keeps a random leading share of the
//! paragraphs (at least `1 - max_abridgement`) and gets independent
//! character noise. Planted non-wire groups cover the filter rules: weather
//! and non-wire sources flagged in the score files, a paper repeating its own
//! notice, and an advertisement recurring across papers for weeks.

mod places;
mod text;

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::Path;

use chrono::{Datelike, Duration, NaiveDate};
use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::{ArticleRecord, BioLabel, EntityType, NewspaperMeta, Partition};
use crate::entitylink::{decode_bio, keep_kb_record};
use crate::error::{Error, Result};
use crate::ingest::{write_articles, KbRecord};
use text::{capitalize, corrupt, entity, plain, pseudo_word, Token, Vocabulary};

pub const AP_CITIES_TSV: &str = include_str!("../../data/ap_cities.tsv");
pub const LOCATION_NOTES_TSV: &str = include_str!("../../data/location_notes.tsv");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthConfig {
    pub seed: u64,
    /// Wire sources, including the weather and non-wire ones.
    pub sources: usize,
    pub max_copies: usize,
    /// Per-character corruption probability.
    pub char_noise: f64,
    /// Largest share of trailing paragraphs a copy may drop.
    pub max_abridgement: f64,
    pub weather_sources: usize,
    pub nonwire_sources: usize,
    /// Unreproduced local articles.
    pub local_articles: usize,
    pub same_paper_templates: usize,
    pub recurring_ads: usize,
    pub newspapers: usize,
    pub kb_people: usize,
    pub vocabulary: usize,
    pub start_year: i32,
    pub span_days: i64,
    pub labeled_pairs: usize,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            seed: 1880,
            sources: 500,
            max_copies: 10,
            char_noise: 0.05,
            max_abridgement: 0.5,
            weather_sources: 12,
            nonwire_sources: 12,
            local_articles: 1000,
            same_paper_templates: 8,
            recurring_ads: 8,
            newspapers: 120,
            kb_people: 200,
            vocabulary: 4000,
            start_year: 1880,
            span_days: 730,
            labeled_pairs: 2000,
        }
    }
}

impl SynthConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(format!("synth: {m}")));
        if self.max_copies == 0 || self.newspapers < self.max_copies.max(10) {
            return bad("need max_copies >= 1 and at least max(max_copies, 10) newspapers");
        }
        if !(0.0..0.5).contains(&self.char_noise) {
            return bad("char_noise must lie in [0, 0.5)");
        }
        if !(0.0..1.0).contains(&self.max_abridgement) {
            return bad("max_abridgement must lie in [0, 1)");
        }
        if self.weather_sources + self.nonwire_sources > self.sources {
            return bad("weather + non-wire sources exceed sources");
        }
        if self.span_days < 30 || self.vocabulary < 100 || self.kb_people < 10 {
            return bad("span_days >= 30, vocabulary >= 100 and kb_people >= 10 required");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GoldKind {
    Wire,
    Weather,
    Nonwire,
    SamePaper,
    RecurringAd,
    Local,
}

/// What a correct georeference of the group's dateline returns; empty
/// strings for absent fields.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedDateline {
    pub city: String,
    pub state: String,
    pub country: String,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GoldGroup {
    pub group_id: String,
    pub kind: GoldKind,
    pub members: Vec<String>,
    pub dateline: ExpectedDateline,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledPairRow {
    pub a: String,
    pub b: String,
    pub same_source: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GoldLinkRow {
    pub mention_id: String,
    /// Empty when the person is not in the pruned KB.
    pub qid: String,
}

#[derive(Debug, Clone)]
pub struct SynthCorpus {
    pub articles: Vec<ArticleRecord>,
    pub groups: Vec<GoldGroup>,
    pub kb: Vec<KbRecord>,
    pub qrank: Vec<(String, f64)>,
    pub dictionary: Vec<(String, u64)>,
    pub weather_scores: Vec<(String, f64)>,
    pub nonwire_scores: Vec<(String, f64)>,
    pub labeled_pairs: Vec<LabeledPairRow>,
    pub gold_links: Vec<GoldLinkRow>,
}

/// File names written by [`SynthCorpus::write`].
pub mod files {
    pub const ARTICLES: &str = "articles.jsonl";
    pub const GOLD_GROUPS: &str = "gold_groups.jsonl";
    pub const GAZETTEER: &str = "gazetteer.tsv";
    pub const COUNTRIES: &str = "countries.tsv";
    pub const STATES: &str = "states.tsv";
    pub const AP_CITIES: &str = "ap_cities.tsv";
    pub const LOCATION_NOTES: &str = "location_notes.tsv";
    pub const KB: &str = "kb.jsonl";
    pub const QRANK: &str = "qrank.csv";
    pub const DICTIONARY: &str = "dictionary.txt";
    pub const WEATHER_SCORES: &str = "weather_scores.csv";
    pub const NONWIRE_SCORES: &str = "nonwire_scores.csv";
    pub const LABELED_PAIRS: &str = "labeled_pairs.csv";
    pub const GOLD_LINKS: &str = "gold_links.csv";
}

struct Person {
    first: String,
    last: String,
    qid: String,
    kept: bool,
}

struct Draft {
    date: NaiveDate,
    paragraphs: Vec<Vec<Token>>,
    topic: String,
    /// Paragraph and ground-truth KB id of each person mention, in text order.
    people: Vec<(usize, Option<String>)>,
}

const TOPICS: [&str; 7] = ["politics", "crime", "foreign affairs", "business", "sports", "science", "society"];
const OCCUPATIONS: [&str; 10] = [
    "politician", "lawyer", "journalist", "military officer", "banker", "diplomat", "engineer", "physician",
    "clergyman", "writer",
];

struct Generator {
    cfg: SynthConfig,
    rng: ChaCha8Rng,
    vocab: Vocabulary,
    papers: Vec<NewspaperMeta>,
    people: Vec<Person>,
    start: NaiveDate,
}

impl Generator {
    fn date(&mut self) -> NaiveDate {
        self.start + Duration::days(self.rng.gen_range(0..self.cfg.span_days))
    }

    fn words(&mut self, n: usize) -> Vec<String> {
        (0..n).map(|_| self.vocab.word(&mut self.rng).to_string()).collect()
    }

    fn paragraph(&mut self, len: usize) -> Vec<Token> {
        let mut toks: Vec<Token> = self.words(len).into_iter().map(plain).collect();
        toks[0].text = capitalize(&toks[0].text);
        let mut k = self.rng.gen_range(8..16);
        while k < toks.len() {
            toks[k - 1].text.push('.');
            toks[k].text = capitalize(&toks[k].text);
            k += self.rng.gen_range(8..16);
        }
        toks.last_mut().expect("non-empty").text.push('.');
        toks
    }

    fn person_mention(&mut self) -> (Vec<Token>, Option<String>) {
        if self.rng.gen_bool(0.8) {
            let p = &self.people[self.rng.gen_range(0..self.people.len())];
            let words = if self.rng.gen_bool(0.5) {
                vec![p.first.clone(), p.last.clone()]
            } else {
                vec![p.last.clone()]
            };
            let gold = p.kept.then(|| p.qid.clone());
            (entity(&words, "PER"), gold)
        } else {
            let words = vec![capitalize(&pseudo_word(&mut self.rng, 2)), capitalize(&pseudo_word(&mut self.rng, 2))];
            (entity(&words, "PER"), None)
        }
    }

    /// Source text: paragraphs with person and organization runs inserted
    /// after the first token of a paragraph.
    fn body(&mut self, paragraphs: usize, min_len: usize, max_len: usize) -> (Vec<Vec<Token>>, Vec<(usize, Option<String>)>) {
        let mut paras: Vec<Vec<Token>> = (0..paragraphs)
            .map(|_| {
                let len = self.rng.gen_range(min_len..=max_len);
                self.paragraph(len)
            })
            .collect();
        let mut inserts: Vec<(usize, usize, Vec<Token>, Option<Option<String>>)> = Vec::new();
        for _ in 0..self.rng.gen_range(0..=3) {
            let (toks, gold) = self.person_mention();
            let p = self.rng.gen_range(0..paras.len());
            let at = self.rng.gen_range(1..paras[p].len());
            inserts.push((p, at, toks, Some(gold)));
        }
        for _ in 0..self.rng.gen_range(0..=2) {
            let words: Vec<String> = self.words(2).iter().map(|w| capitalize(w)).collect();
            let p = self.rng.gen_range(0..paras.len());
            let at = self.rng.gen_range(1..paras[p].len());
            inserts.push((p, at, entity(&words, "ORG"), None));
        }
        // Insert back to front so positions stay valid; record people in text order.
        inserts.sort_by(|a, b| (b.0, b.1).cmp(&(a.0, a.1)));
        let mut people_rev = Vec::new();
        for (p, at, toks, gold) in inserts {
            paras[p].splice(at..at, toks);
            if let Some(g) = gold {
                people_rev.push((p, g));
            }
        }
        people_rev.reverse();
        (paras, people_rev)
    }

    fn dateline(&mut self, date: NaiveDate) -> (&'static places::DatelineSpec, Vec<Token>) {
        let weights = WeightedIndex::new(places::DATELINES.iter().map(|d| d.weight)).expect("weights");
        let spec = &places::DATELINES[weights.sample(&mut self.rng)];
        if spec.printed.is_empty() {
            return (spec, Vec::new());
        }
        let mut toks: Vec<Token> = Vec::new();
        let city_words: Vec<String> = spec
            .printed
            .split(", ")
            .next()
            .expect("city part")
            .split_whitespace()
            .map(String::from)
            .collect();
        if spec.note.is_empty() {
            toks.extend(entity(&city_words, "LOC"));
        } else {
            toks.extend(city_words.into_iter().map(plain));
        }
        if let Some(state) = spec.printed.split(", ").nth(1) {
            toks.push(plain(state));
        }
        toks.last_mut().expect("non-empty").text.push(',');
        toks.push(plain(places::MONTHS[date.month0() as usize]));
        toks.push(plain(format!("{}.--", date.day())));
        (spec, toks)
    }

    /// Renders one copy: keeps `keep` paragraphs, corrupts every token.
    fn render(&mut self, draft: &Draft, keep: usize, id: &str, date: NaiveDate, lccn: &str) -> ArticleRecord {
        let noise = self.cfg.char_noise;
        let mut words = Vec::new();
        let mut labels = Vec::new();
        let mut lines = Vec::new();
        for para in draft.paragraphs.iter().take(keep) {
            let mut line: Vec<String> = Vec::with_capacity(para.len());
            for t in para {
                let w = corrupt(&t.text, noise, &mut self.rng);
                line.push(w.clone());
                words.push(w);
                labels.push(t.label.parse::<BioLabel>().expect("valid label"));
            }
            lines.push(line.join(" "));
        }
        let paper = self.papers.iter().find(|p| p.lccn == lccn).cloned();
        ArticleRecord {
            article_id: id.to_string(),
            newspaper_lccn: lccn.to_string(),
            newspaper: paper,
            date,
            text: lines.join("\n"),
            byline_raw: None,
            ner_words: Some(words),
            ner_labels: Some(labels),
            topic: Some(draft.topic.clone()),
        }
    }
}

/// Joins the dateline's trailing `D.--` with the first body word, as printed.
fn attach_dateline(dateline: Vec<Token>, paras: &mut [Vec<Token>]) {
    if dateline.is_empty() {
        return;
    }
    let first = &mut paras[0];
    let body_first = first.remove(0);
    let mut dl = dateline;
    let last = dl.last_mut().expect("non-empty");
    last.text.push_str(&body_first.text);
    first.splice(0..0, dl);
}

fn build_people(rng: &mut ChaCha8Rng, n: usize) -> (Vec<Person>, Vec<KbRecord>, Vec<(String, f64)>) {
    let mut people: Vec<Person> = Vec::new();
    let mut kb = Vec::new();
    let mut qrank = Vec::new();
    let mut names = HashSet::new();
    while people.len() < n {
        let first = capitalize(&pseudo_word(rng, 2));
        let last = if !people.is_empty() && rng.gen_bool(0.15) {
            people[rng.gen_range(0..people.len())].last.clone()
        } else {
            {
            let syllables = rng.gen_range(2..=3);
            capitalize(&pseudo_word(rng, syllables))
        }
        };
        if !names.insert(format!("{first} {last}")) {
            continue;
        }
        let qid = format!("Q{}", 100_000 + people.len() * 7);
        let label = format!("{first} {last}");
        let roll: f64 = rng.gen();
        let (birth_year, death_year) = if roll < 0.08 {
            (Some(rng.gen_range(1970..1990)), None)
        } else if roll < 0.15 {
            (None, None)
        } else if roll < 0.25 {
            (None, Some(rng.gen_range(1880..1950)))
        } else {
            let b = rng.gen_range(1800..1900);
            (Some(b), rng.gen_bool(0.7).then(|| b + rng.gen_range(40..90)))
        };
        let wikipedia_title = match rng.gen_range(0..20) {
            0 => format!("{} {}", capitalize(&pseudo_word(rng, 3)), capitalize(&pseudo_word(rng, 3))),
            1 => format!("{first} {}. {last}", capitalize(&pseudo_word(rng, 1)).chars().next().unwrap_or('A')),
            _ => label.clone(),
        };
        let n_occ = rng.gen_range(1..=3);
        let occupations: Vec<String> = OCCUPATIONS
            .choose_multiple(rng, n_occ)
            .map(|s| s.to_string())
            .collect();
        let first_paragraph = format!(
            "{label} was an American {} who served in public life for many years.",
            occupations[0]
        );
        let mut rec = KbRecord {
            qid: qid.clone(),
            label: label.clone(),
            aliases: vec![last.clone(), format!("{}. {last}", first.chars().next().expect("non-empty"))],
            occupations,
            birth_year,
            death_year,
            wikipedia_title,
            first_paragraph,
            gender: Some(if rng.gen_bool(0.8) { "male" } else { "female" }.to_string()),
            template: String::new(),
        };
        rec.template = rec.build_template();
        let kept = keep_kb_record(&rec);
        qrank.push((qid.clone(), (10f64.powf(rng.gen_range(0.0..5.0))).round()));
        people.push(Person { first, last, qid, kept });
        kb.push(rec);
    }
    (people, kb, qrank)
}

pub fn generate(cfg: &SynthConfig) -> Result<SynthCorpus> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let vocab = Vocabulary::new(&mut rng, cfg.vocabulary);
    let papers: Vec<NewspaperMeta> = (0..cfg.newspapers)
        .map(|i| {
            let town = capitalize(&pseudo_word(&mut rng, 2));
            let kind = ["Gazette", "Herald", "Evening Star", "Daily Journal", "Tribune"][i % 5];
            let state = places::STATES[i % 16].2;
            NewspaperMeta::new(&format!("sn8{:07}", 4_000_000 + i * 13), &format!("The {town} {kind}"), &town, state)
        })
        .collect::<Result<_>>()?;
    let (people, kb, qrank) = build_people(&mut rng, cfg.kb_people);
    let start = NaiveDate::from_ymd_opt(cfg.start_year, 1, 1).ok_or_else(|| Error::Config("synth: bad start_year".into()))?;
    let mut g = Generator { cfg: cfg.clone(), rng, vocab, papers, people, start };

    // Copies are rendered with placeholder ids and renamed after a shuffle so
    // ids carry no group information.
    let mut articles: Vec<ArticleRecord> = Vec::new();
    let mut group_of: Vec<usize> = Vec::new();
    let mut groups: Vec<(GoldKind, ExpectedDateline)> = Vec::new();
    let mut mention_gold: Vec<Vec<Option<String>>> = Vec::new();

    let mut push = |g: &mut Generator, draft: &Draft, keep: usize, date: NaiveDate, lccn: &str, group: usize| {
        let id = format!("tmp{}", articles.len());
        articles.push(g.render(draft, keep, &id, date, lccn));
        group_of.push(group);
        mention_gold.push(draft.people.iter().filter(|(p, _)| *p < keep).map(|(_, q)| q.clone()).collect());
    };

    for s in 0..cfg.sources {
        let kind = if s < cfg.weather_sources {
            GoldKind::Weather
        } else if s < cfg.weather_sources + cfg.nonwire_sources {
            GoldKind::Nonwire
        } else {
            GoldKind::Wire
        };
        let date = g.date();
        let n_paras = g.rng.gen_range(3..=8);
        let (mut paras, people_gold) = g.body(n_paras, 25, 60);
        let (spec, dl) = g.dateline(date);
        attach_dateline(dl, &mut paras);
        let topic = match kind {
            GoldKind::Weather => "weather".to_string(),
            _ => TOPICS.choose(&mut g.rng).expect("non-empty").to_string(),
        };
        let draft = Draft { date, paragraphs: paras, topic, people: people_gold };
        let expected = ExpectedDateline {
            city: spec.city.into(),
            state: spec.state.into(),
            country: spec.country.into(),
            note: spec.note.into(),
        };
        let gid = groups.len();
        groups.push((kind, expected));
        let copies = g.rng.gen_range(1..=cfg.max_copies);
        let lccns: Vec<String> = g.papers.choose_multiple(&mut g.rng, copies).map(|p| p.lccn.clone()).collect();
        for lccn in lccns {
            let cut = g.rng.gen_range(0.0..=cfg.max_abridgement);
            let keep = ((n_paras as f64) * (1.0 - cut)).ceil().max(1.0) as usize;
            let d = draft.date + Duration::days(g.rng.gen_range(0..=2));
            push(&mut g, &draft, keep, d, &lccn, gid);
        }
    }

    for _ in 0..cfg.same_paper_templates {
        let lccn = g.papers.choose(&mut g.rng).expect("papers").lccn.clone();
        let date = g.date();
        let paras = vec![g.paragraph(30)];
        let draft = Draft { date, paragraphs: paras, topic: "society".into(), people: Vec::new() };
        let gid = groups.len();
        groups.push((GoldKind::SamePaper, ExpectedDateline::default()));
        for _ in 0..g.rng.gen_range(4..=6) {
            let d = date + Duration::days(g.rng.gen_range(0..=2));
            push(&mut g, &draft, 1, d, &lccn, gid);
        }
    }

    for _ in 0..cfg.recurring_ads {
        let date = g.date();
        let paras = vec![g.paragraph(30)];
        let draft = Draft { date, paragraphs: paras, topic: "business".into(), people: Vec::new() };
        let gid = groups.len();
        groups.push((GoldKind::RecurringAd, ExpectedDateline::default()));
        let n = g.rng.gen_range(5..=8);
        let lccns: Vec<String> = g.papers.choose_multiple(&mut g.rng, n).map(|p| p.lccn.clone()).collect();
        for (k, lccn) in lccns.iter().enumerate() {
            push(&mut g, &draft, 1, date + Duration::days(2 * k as i64), lccn, gid);
        }
    }

    for _ in 0..cfg.local_articles {
        let date = g.date();
        let n_paras = g.rng.gen_range(2..=6);
        let (paras, people_gold) = g.body(n_paras, 20, 50);
        let lccn = g.papers.choose(&mut g.rng).expect("papers").lccn.clone();
        let topic = TOPICS.choose(&mut g.rng).expect("non-empty").to_string();
        let draft = Draft { date, paragraphs: paras, topic, people: people_gold };
        let gid = groups.len();
        groups.push((GoldKind::Local, ExpectedDateline::default()));
        push(&mut g, &draft, n_paras, date, &lccn, gid);
    }

    // Rename in shuffled order.
    let mut order: Vec<usize> = (0..articles.len()).collect();
    order.shuffle(&mut g.rng);
    let mut new_id = vec![String::new(); articles.len()];
    for (rank, &i) in order.iter().enumerate() {
        new_id[i] = format!("art{rank:06}");
    }
    for (a, id) in articles.iter_mut().zip(&new_id) {
        a.article_id = id.clone();
    }

    let mut members: Vec<Vec<String>> = vec![Vec::new(); groups.len()];
    for (i, &gid) in group_of.iter().enumerate() {
        members[gid].push(new_id[i].clone());
    }
    let gold_groups: Vec<GoldGroup> = groups
        .into_iter()
        .zip(members)
        .enumerate()
        .map(|(k, ((kind, dateline), mut members))| {
            members.sort();
            GoldGroup { group_id: format!("g{k:05}"), kind, members, dateline }
        })
        .collect();

    let mut gold_links = Vec::new();
    for (a, gold) in articles.iter().zip(&mention_gold) {
        let spans = decode_bio(a.ner_labels.as_deref().unwrap_or(&[]));
        let per: Vec<_> = spans.iter().filter(|s| s.entity == EntityType::Person).collect();
        debug_assert_eq!(per.len(), gold.len());
        for (k, q) in gold.iter().enumerate().take(per.len()) {
            gold_links.push(GoldLinkRow {
                mention_id: format!("{}#m{k}", a.article_id),
                qid: q.clone().unwrap_or_default(),
            });
        }
    }
    gold_links.sort_by(|a, b| a.mention_id.cmp(&b.mention_id));

    let kind_of: HashMap<&str, GoldKind> = gold_groups
        .iter()
        .flat_map(|grp| grp.members.iter().map(move |m| (m.as_str(), grp.kind)))
        .collect();
    let mut weather_scores = Vec::new();
    let mut nonwire_scores = Vec::new();
    for a in &articles {
        let kind = kind_of[a.article_id.as_str()];
        let low = |rng: &mut ChaCha8Rng| (rng.gen_range(0.0..0.3f64) * 1000.0).round() / 1000.0;
        let high = |rng: &mut ChaCha8Rng| (rng.gen_range(0.75..1.0f64) * 1000.0).round() / 1000.0;
        let w = if kind == GoldKind::Weather { high(&mut g.rng) } else { low(&mut g.rng) };
        let n = if kind == GoldKind::Nonwire { high(&mut g.rng) } else { low(&mut g.rng) };
        weather_scores.push((a.article_id.clone(), w));
        nonwire_scores.push((a.article_id.clone(), n));
    }

    let labeled_pairs = sample_pairs(&mut g.rng, &articles, &new_id, &group_of, cfg.labeled_pairs);

    let mut dictionary: Vec<(String, u64)> = g
        .vocab
        .words
        .iter()
        .enumerate()
        .map(|(r, w)| (w.clone(), g.vocab.frequency(r)))
        .collect();
    for m in places::MONTHS {
        dictionary.push((m.trim_end_matches('.').to_lowercase(), 1000));
    }

    articles.sort_by(|a, b| a.article_id.cmp(&b.article_id));
    weather_scores.sort_by(|a, b| a.0.cmp(&b.0));
    nonwire_scores.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(SynthCorpus {
        articles,
        groups: gold_groups,
        kb,
        qrank,
        dictionary,
        weather_scores,
        nonwire_scores,
        labeled_pairs,
        gold_links,
    })
}

/// Same-source pairs and near-date different-source pairs, half each.
fn sample_pairs(
    rng: &mut ChaCha8Rng,
    articles: &[ArticleRecord],
    ids: &[String],
    group_of: &[usize],
    n: usize,
) -> Vec<LabeledPairRow> {
    let mut by_group: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, &g) in group_of.iter().enumerate() {
        by_group.entry(g).or_default().push(i);
    }
    let mut multi: Vec<&Vec<usize>> = by_group.values().filter(|v| v.len() > 1).collect();
    multi.sort();
    let mut by_date: Vec<usize> = (0..articles.len()).collect();
    by_date.sort_by_key(|&i| (articles[i].date, i));

    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < n / 2 && !multi.is_empty() && attempts < n * 20 {
        attempts += 1;
        let grp = multi[rng.gen_range(0..multi.len())];
        let pick: Vec<&usize> = grp.choose_multiple(rng, 2).collect();
        let (a, b) = (*pick[0].min(pick[1]), *pick[0].max(pick[1]));
        if seen.insert((a, b)) {
            out.push(LabeledPairRow { a: ids[a].clone(), b: ids[b].clone(), same_source: 1 });
        }
    }
    attempts = 0;
    while out.len() < n && attempts < n * 20 {
        attempts += 1;
        let p = rng.gen_range(0..by_date.len());
        let q = (p + rng.gen_range(1..40)).min(by_date.len() - 1);
        let (i, j) = (by_date[p], by_date[q]);
        let close = (articles[j].date - articles[i].date).num_days().abs() <= 2;
        if i == j || group_of[i] == group_of[j] || !close {
            continue;
        }
        let (a, b) = (i.min(j), i.max(j));
        if seen.insert((a, b)) {
            out.push(LabeledPairRow { a: ids[a].clone(), b: ids[b].clone(), same_source: 0 });
        }
    }
    out.sort_by(|x, y| (&x.a, &x.b).cmp(&(&y.a, &y.b)));
    out
}

fn write_text(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

fn write_rows<T: Serialize>(path: &Path, rows: impl IntoIterator<Item = T>) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| Error::csv(path, e))?;
    for r in rows {
        w.serialize(r).map_err(|e| Error::csv(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

fn write_jsonl<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut s = String::new();
    for r in rows {
        s.push_str(&serde_json::to_string(r)?);
        s.push('\n');
    }
    write_text(path, &s)
}

#[derive(Serialize)]
struct ScoreRow<'a> {
    id: &'a str,
    score: f64,
}

#[derive(Serialize)]
struct RankRow<'a> {
    qid: &'a str,
    score: f64,
}

impl SynthCorpus {
    /// The planted duplicate structure over all article ids.
    pub fn gold_partition(&self) -> Result<Partition> {
        Partition::from_groups(self.groups.iter().map(|g| g.members.clone()).collect())
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        write_articles(&dir.join(files::ARTICLES), &self.articles)?;
        write_jsonl(&dir.join(files::GOLD_GROUPS), &self.groups)?;
        write_text(&dir.join(files::GAZETTEER), &places::gazetteer_tsv())?;
        write_text(&dir.join(files::COUNTRIES), &places::countries_tsv())?;
        write_text(&dir.join(files::STATES), &places::states_tsv())?;
        write_text(&dir.join(files::AP_CITIES), AP_CITIES_TSV)?;
        write_text(&dir.join(files::LOCATION_NOTES), LOCATION_NOTES_TSV)?;
        write_jsonl(&dir.join(files::KB), &self.kb)?;
        write_rows(&dir.join(files::QRANK), self.qrank.iter().map(|(q, s)| RankRow { qid: q, score: *s }))?;
        let dict: String = self.dictionary.iter().map(|(w, f)| format!("{w} {f}\n")).collect();
        write_text(&dir.join(files::DICTIONARY), &dict)?;
        write_rows(&dir.join(files::WEATHER_SCORES), self.weather_scores.iter().map(|(id, s)| ScoreRow { id, score: *s }))?;
        write_rows(&dir.join(files::NONWIRE_SCORES), self.nonwire_scores.iter().map(|(id, s)| ScoreRow { id, score: *s }))?;
        write_rows(&dir.join(files::LABELED_PAIRS), &self.labeled_pairs)?;
        write_rows(&dir.join(files::GOLD_LINKS), &self.gold_links)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SynthConfig {
        SynthConfig {
            sources: 40,
            local_articles: 30,
            weather_sources: 3,
            nonwire_sources: 3,
            same_paper_templates: 2,
            recurring_ads: 2,
            kb_people: 30,
            vocabulary: 500,
            labeled_pairs: 100,
            ..Default::default()
        }
    }

    #[test]
    fn deterministic_and_consistent() {
        let a = generate(&small()).unwrap();
        let b = generate(&small()).unwrap();
        assert_eq!(a.articles, b.articles);
        assert_eq!(a.groups, b.groups);
        let gold = a.gold_partition().unwrap();
        let ids: Vec<String> = a.articles.iter().map(|x| x.article_id.clone()).collect();
        gold.validate(&ids).unwrap();
        for art in &a.articles {
            art.validate().unwrap();
            assert_eq!(art.ner_words.as_ref().unwrap().len(), art.text.split_whitespace().count());
        }
    }

    #[test]
    fn copies_stay_within_window_and_papers_differ() {
        let c = generate(&small()).unwrap();
        let by_id: HashMap<&str, &ArticleRecord> = c.articles.iter().map(|a| (a.article_id.as_str(), a)).collect();
        for g in c.groups.iter().filter(|g| g.kind == GoldKind::Wire) {
            let dates: Vec<NaiveDate> = g.members.iter().map(|m| by_id[m.as_str()].date).collect();
            let span = (*dates.iter().max().unwrap() - *dates.iter().min().unwrap()).num_days();
            assert!(span <= 2);
            let lccns: HashSet<&str> = g.members.iter().map(|m| by_id[m.as_str()].newspaper_lccn.as_str()).collect();
            assert_eq!(lccns.len(), g.members.len());
        }
    }

    #[test]
    fn ap_table_ships_56_cities() {
        let rows = AP_CITIES_TSV.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()).count();
        assert_eq!(rows, crate::georef::AP_CITY_COUNT);
    }
}
